#pragma once

#include <functional>
#include <span>

namespace wg {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated local Richardson estimates
  long evaluations = 0;
};

// Composite Simpson on a uniform grid of sampled values (n odd number of
// points); a trapezoid patch absorbs a trailing interval when n is even.
double simpson_samples(std::span<const double> values, double h);

// Adaptive Simpson with local Richardson control; rel_tol is relative to the
// accumulated integral (plus an absolute floor).
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a,
                            double b, double rel_tol = 1e-10,
                            double abs_floor = 1e-14, int max_depth = 48);

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

// Dense sampling followed by golden-section refinement of the best bracket.
Minimum sampled_minimum(const std::function<double(double)>& f, double a,
                        double b, int samples = 2001, double xtol = 1e-10);

// Nodes/weights of the 2-point Gauss rule on [x0, x1].
struct Gauss2 {
  double node[2];
  double weight;  // both weights equal (x1-x0)/2
};
Gauss2 gauss2(double x0, double x1);

}  // namespace wg
