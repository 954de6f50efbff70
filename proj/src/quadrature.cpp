#include "wgspec/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

double simpson_samples(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  std::size_t last = n - 1;
  double extra = 0.0;
  if (last % 2 != 0) {
    // odd interval count: trapezoid on the final interval
    extra = 0.5 * h * (values[last - 1] + values[last]);
    --last;
  }
  double s = values[0] + values[last];
  for (std::size_t i = 1; i < last; i += 2) s += 4.0 * values[i];
  for (std::size_t i = 2; i < last; i += 2) s += 2.0 * values[i];
  return s * h / 3.0 + extra;
}

namespace {

struct AdaptState {
  const std::function<double(double)>* f;
  double rel_tol;
  double abs_floor;
  long evals = 0;
  double err = 0.0;

  double call(double x) {
    ++evals;
    return (*f)(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, int depth, double scale) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = call(lm), frm = call(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const double tol = std::max(abs_floor, rel_tol * scale) * (h);
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
      err += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, depth - 1, scale) +
           recurse(m, b, fm, frm, fb, right, depth - 1, scale);
  }
};

}  // namespace

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double rel_tol, double abs_floor,
                            int max_depth) {
  if (a == b) return {0.0, 0.0, 0};
  AdaptState st{&f, rel_tol, abs_floor};
  const double m = 0.5 * (a + b);
  const double fa = st.call(a), fm = st.call(m), fb = st.call(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // scale for the relative tolerance: a rough magnitude of the integrand
  double scale =
      (std::abs(fa) + std::abs(fm) + std::abs(fb)) / 3.0 + std::abs(whole) / std::abs(b - a);
  if (scale == 0.0) scale = 1.0;
  QuadResult res;
  res.value = st.recurse(a, b, fa, fm, fb, whole, max_depth, scale);
  res.error_estimate = st.err;
  res.evaluations = st.evals;
  return res;
}

Minimum sampled_minimum(const std::function<double(double)>& f, double a,
                        double b, int samples, double xtol) {
  if (samples < 3) samples = 3;
  const double h = (b - a) / (samples - 1);
  int best = 0;
  double fbest = f(a);
  for (int i = 1; i < samples; ++i) {
    double v = f(a + i * h);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  double lo = a + std::max(0, best - 1) * h;
  double hi = a + std::min(samples - 1, best + 1) * h;
  // golden-section on the bracket
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > xtol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  double xm = 0.5 * (lo + hi);
  double fmid = f(xm);
  if (fbest < fmid) return {a + best * h, fbest};
  return {xm, fmid};
}

Gauss2 gauss2(double x0, double x1) {
  const double m = 0.5 * (x0 + x1);
  const double r = 0.5 * (x1 - x0) / std::sqrt(3.0);
  return {{m - r, m + r}, 0.5 * (x1 - x0)};
}

}  // namespace wg
