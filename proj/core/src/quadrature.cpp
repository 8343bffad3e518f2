#include "khinchin/quadrature.hpp"

#include <cmath>

namespace khinchin {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, tol * 0.5, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, tol * 0.5, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_depth) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson(a, fa, b, fb, fm);
  return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double integrate_tail_log(const std::function<double(double)>& g, double a,
                          double rel_tol) {
  // integral_a^inf g(x) dx = integral_0^inf g(a e^s) a e^s ds
  auto h = [&](double s) {
    double x = a * std::exp(s);
    return g(x) * x;
  };
  double total = 0.0;
  double s0 = 0.0;
  const double span = 2.0;
  for (int block = 0; block < 200; ++block) {
    double piece = integrate(h, s0, s0 + span, rel_tol * std::abs(total) / 64.0 + 1e-300);
    total += piece;
    s0 += span;
    if (block >= 2 && std::abs(piece) <= rel_tol * std::abs(total)) break;
  }
  return total;
}

}  // namespace khinchin
