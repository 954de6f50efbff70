#pragma once

#include <string>

#include "wgspec/expr.hpp"

namespace wg {

// Longitudinal data of the waveguide: the user supplies f'(x), g'(x) as
// expressions plus the declared tail slopes beta1, beta2; f'' and g'' are
// derived symbolically. Slopes are never inferred from the expressions --
// they are a modelling hypothesis and validate() checks them.
struct Profile {
  std::string fprime_src;
  std::string gprime_src;
  Expr fprime, gprime;
  Expr fsecond, gsecond;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double tail_X = 8.0;
  double tail_tol = 1e-6;

  static Profile parse(const std::string& fprime_src,
                       const std::string& gprime_src, double beta1,
                       double beta2, double tail_X = 8.0,
                       double tail_tol = 1e-6);

  // Throws HypothesisError naming the failed check.
  void validate() const;

  bool gprime_is_zero() const;
  std::string content_hash() const;  // fingerprint of both expressions
};

}  // namespace wg
