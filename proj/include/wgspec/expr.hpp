#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wgspec/common.hpp"

// Smooth scalar expressions in one variable x: literals, + - * /, integer
// powers, unary minus and the functions sin cos tan exp ln tanh sech sqrt
// atan. The grammar (EBNF in docs/expression-grammar.md) deliberately has no
// non-smooth primitives so the symbolic derivative always exists. Expr values
// are immutable and cheap to copy; all operations are pure.

namespace wg {

class Expr {
 public:
  enum class Kind { number, var, add, sub, mul, div, pow, neg, call };
  enum class Fn { sin, cos, tan, exp, ln, tanh, sech, sqrt, atan };

  struct Node {
    Kind kind;
    double value = 0.0;   // number
    long exponent = 0;    // pow
    Fn fn = Fn::sin;      // call
    std::shared_ptr<const Node> a, b;
  };

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  bool valid() const { return root_ != nullptr; }
  const Node& root() const { return *root_; }
  std::shared_ptr<const Node> root_ptr() const { return root_; }

  // smart constructors (fold constants, drop trivial identities)
  static Expr number(double v);
  static Expr var();
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, long exponent);
  static Expr neg(Expr a);
  static Expr call(Fn fn, Expr a);

 private:
  std::shared_ptr<const Node> root_;
};

Expr parse_expr(std::string_view src);
double eval(const Expr& e, double x);
Expr differentiate(const Expr& e);
std::string to_string(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

struct TailCheckReport {
  bool passed = false;
  // sample points X, 2X, 4X mirrored to the negative side
  std::array<double, 6> points{};
  std::array<double, 6> deviations{};
  std::string message;
};

// Samples e at +-X, +-2X, +-4X and passes iff every |e - beta| <= tol and the
// deviations do not grow with |x| on either side.
TailCheckReport tail_limit_check(const Expr& e, double beta, double X,
                                 double tol);

}  // namespace wg
