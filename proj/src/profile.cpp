#include "wgspec/profile.hpp"

#include <cmath>

#include "wgspec/common.hpp"

namespace wg {

Profile Profile::parse(const std::string& fprime_src,
                       const std::string& gprime_src, double beta1,
                       double beta2, double tail_X, double tail_tol) {
  Profile p;
  p.fprime_src = fprime_src;
  p.gprime_src = gprime_src;
  p.fprime = parse_expr(fprime_src);
  p.gprime = parse_expr(gprime_src);
  p.fsecond = differentiate(p.fprime);
  p.gsecond = differentiate(p.gprime);
  p.beta1 = beta1;
  p.beta2 = beta2;
  p.tail_X = tail_X;
  p.tail_tol = tail_tol;
  return p;
}

void Profile::validate() const {
  auto rep_f = tail_limit_check(fprime, beta1, tail_X, tail_tol);
  if (!rep_f.passed)
    throw HypothesisError("tail limit check failed for fprime: " + rep_f.message);
  auto rep_g = tail_limit_check(gprime, beta2, tail_X, tail_tol);
  if (!rep_g.passed)
    throw HypothesisError("tail limit check failed for gprime: " + rep_g.message);
}

bool Profile::gprime_is_zero() const {
  if (gprime.root().kind == Expr::Kind::number && gprime.root().value == 0.0)
    return true;
  // sampled fallback for expressions like "0*x"
  for (double x : {-7.3, -2.1, -0.4, 0.0, 0.6, 1.9, 5.5}) {
    if (std::abs(eval(gprime, x)) > 0.0) return false;
  }
  return true;
}

std::string Profile::content_hash() const {
  return hash_hex(fprime_src + "|" + gprime_src);
}

}  // namespace wg
