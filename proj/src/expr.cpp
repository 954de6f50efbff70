#include "wgspec/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace wg {

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Kind;
using Fn = Expr::Fn;

NodePtr make_node(Expr::Node n) {
  return std::make_shared<const Expr::Node>(std::move(n));
}

bool is_number(const Expr& e, double v) {
  return e.valid() && e.root().kind == Kind::number && e.root().value == v;
}

}  // namespace

Expr Expr::number(double v) {
  Node n;
  n.kind = Kind::number;
  n.value = v;
  return Expr(make_node(std::move(n)));
}

Expr Expr::var() {
  Node n;
  n.kind = Kind::var;
  return Expr(make_node(std::move(n)));
}

Expr Expr::add(Expr a, Expr b) {
  if (a.root().kind == Kind::number && b.root().kind == Kind::number)
    return number(a.root().value + b.root().value);
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  Node n;
  n.kind = Kind::add;
  n.a = a.root_ptr();
  n.b = b.root_ptr();
  return Expr(make_node(std::move(n)));
}

Expr Expr::sub(Expr a, Expr b) {
  if (a.root().kind == Kind::number && b.root().kind == Kind::number)
    return number(a.root().value - b.root().value);
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return neg(b);
  Node n;
  n.kind = Kind::sub;
  n.a = a.root_ptr();
  n.b = b.root_ptr();
  return Expr(make_node(std::move(n)));
}

Expr Expr::mul(Expr a, Expr b) {
  if (a.root().kind == Kind::number && b.root().kind == Kind::number)
    return number(a.root().value * b.root().value);
  if (is_number(a, 0.0) || is_number(b, 0.0)) return number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  Node n;
  n.kind = Kind::mul;
  n.a = a.root_ptr();
  n.b = b.root_ptr();
  return Expr(make_node(std::move(n)));
}

Expr Expr::div(Expr a, Expr b) {
  if (is_number(b, 1.0)) return a;
  if (is_number(a, 0.0) && !is_number(b, 0.0)) return number(0.0);
  Node n;
  n.kind = Kind::div;
  n.a = a.root_ptr();
  n.b = b.root_ptr();
  return Expr(make_node(std::move(n)));
}

Expr Expr::pow(Expr base, long exponent) {
  if (exponent == 0) return number(1.0);
  if (exponent == 1) return base;
  if (base.root().kind == Kind::number)
    return number(std::pow(base.root().value, static_cast<double>(exponent)));
  Node n;
  n.kind = Kind::pow;
  n.exponent = exponent;
  n.a = base.root_ptr();
  return Expr(make_node(std::move(n)));
}

Expr Expr::neg(Expr a) {
  if (a.root().kind == Kind::number) return number(-a.root().value);
  Node n;
  n.kind = Kind::neg;
  n.a = a.root_ptr();
  return Expr(make_node(std::move(n)));
}

Expr Expr::call(Fn fn, Expr a) {
  Node n;
  n.kind = Kind::call;
  n.fn = fn;
  n.a = a.root_ptr();
  return Expr(make_node(std::move(n)));
}

// ---------------------------------------------------------------------------
// parser: precedence-climbing recursive descent

namespace {

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    std::ostringstream os;
    os << "syntax error at position " << pos << ": " << what;
    throw ParseError(os.str(), pos);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  Expr parse() {
    Expr e = expression();
    skip_ws();
    if (pos != src.size()) fail("unexpected trailing input");
    return e;
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = Expr::add(lhs, term());
      else if (eat('-'))
        lhs = Expr::sub(lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = Expr::mul(lhs, unary());
      else if (eat('/'))
        lhs = Expr::div(lhs, unary());
      else
        return lhs;
    }
  }

  Expr unary() {
    if (eat('-')) return Expr::neg(unary());
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (eat('^')) return Expr::pow(base, integer_exponent());
    return base;
  }

  long integer_exponent() {
    skip_ws();
    bool negative = false;
    if (eat('-')) negative = true;
    else if (eat('+')) {}
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
      ++pos;
    if (pos == start) fail("expected integer exponent after '^'");
    if (pos < src.size() && (src[pos] == '.' || src[pos] == 'e' || src[pos] == 'E'))
      fail("exponent must be an integer");
    long v = 0;
    auto r = std::from_chars(src.data() + start, src.data() + pos, v);
    if (r.ec != std::errc{}) fail("bad integer exponent");
    return negative ? -v : v;
  }

  Expr atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      Expr e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
      ++pos;
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      std::size_t mark = pos++;
      if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
      if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        while (pos < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[pos])))
          ++pos;
      } else {
        pos = mark;  // 'e' was not an exponent
      }
    }
    double v = 0.0;
    // from_chars does not accept a leading '.', normalize through strtod
    std::string tok(src.substr(start, pos - start));
    char* end = nullptr;
    v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      pos = start;
      fail("malformed number '" + tok + "'");
    }
    return Expr::number(v);
  }

  Expr identifier() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    std::string name(src.substr(start, pos - start));
    if (name == "x") return Expr::var();
    static const std::pair<const char*, Fn> fns[] = {
        {"sin", Fn::sin},   {"cos", Fn::cos},   {"tan", Fn::tan},
        {"exp", Fn::exp},   {"ln", Fn::ln},     {"log", Fn::ln},
        {"tanh", Fn::tanh}, {"sech", Fn::sech}, {"sqrt", Fn::sqrt},
        {"atan", Fn::atan}};
    for (auto& [fname, fn] : fns) {
      if (name == fname) {
        if (!eat('(')) fail("expected '(' after function name '" + name + "'");
        Expr arg = expression();
        if (!eat(')')) fail("expected ')' closing call to '" + name + "'");
        return Expr::call(fn, arg);
      }
    }
    pos = start;
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

Expr parse_expr(std::string_view src) {
  Parser p{src};
  return p.parse();
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

double eval_node(const Expr::Node& n, double x) {
  switch (n.kind) {
    case Kind::number:
      return n.value;
    case Kind::var:
      return x;
    case Kind::add:
      return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Kind::sub:
      return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Kind::mul:
      return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Kind::div: {
      double denom = eval_node(*n.b, x);
      if (denom == 0.0) throw EvalError("division by zero");
      return eval_node(*n.a, x) / denom;
    }
    case Kind::pow: {
      double base = eval_node(*n.a, x);
      if (base == 0.0 && n.exponent < 0)
        throw EvalError("zero raised to a negative power");
      return std::pow(base, static_cast<double>(n.exponent));
    }
    case Kind::neg:
      return -eval_node(*n.a, x);
    case Kind::call: {
      double u = eval_node(*n.a, x);
      switch (n.fn) {
        case Fn::sin:
          return std::sin(u);
        case Fn::cos:
          return std::cos(u);
        case Fn::tan:
          return std::tan(u);
        case Fn::exp:
          return std::exp(u);
        case Fn::ln:
          if (u <= 0.0) throw EvalError("ln of a non-positive value");
          return std::log(u);
        case Fn::tanh:
          return std::tanh(u);
        case Fn::sech:
          return 1.0 / std::cosh(u);
        case Fn::sqrt:
          if (u < 0.0) throw EvalError("sqrt of a negative value");
          return std::sqrt(u);
        case Fn::atan:
          return std::atan(u);
      }
      throw EvalError("unreachable function kind");
    }
  }
  throw EvalError("unreachable node kind");
}

}  // namespace

double eval(const Expr& e, double x) {
  if (!e.valid()) throw EvalError("empty expression");
  double v = eval_node(e.root(), x);
  if (!std::isfinite(v)) throw EvalError("evaluation overflowed to non-finite");
  return v;
}

// ---------------------------------------------------------------------------
// symbolic differentiation

namespace {

Expr diff_node(const Expr::Node& n);

Expr as_expr(const NodePtr& p) { return Expr(p); }

Expr diff_node(const Expr::Node& n) {
  switch (n.kind) {
    case Kind::number:
      return Expr::number(0.0);
    case Kind::var:
      return Expr::number(1.0);
    case Kind::add:
      return Expr::add(diff_node(*n.a), diff_node(*n.b));
    case Kind::sub:
      return Expr::sub(diff_node(*n.a), diff_node(*n.b));
    case Kind::mul:
      return Expr::add(Expr::mul(diff_node(*n.a), as_expr(n.b)),
                       Expr::mul(as_expr(n.a), diff_node(*n.b)));
    case Kind::div:
      // (u/v)' = u'/v - u v'/v^2
      return Expr::sub(
          Expr::div(diff_node(*n.a), as_expr(n.b)),
          Expr::div(Expr::mul(as_expr(n.a), diff_node(*n.b)),
                    Expr::pow(as_expr(n.b), 2)));
    case Kind::pow:
      return Expr::mul(
          Expr::mul(Expr::number(static_cast<double>(n.exponent)),
                    Expr::pow(as_expr(n.a), n.exponent - 1)),
          diff_node(*n.a));
    case Kind::neg:
      return Expr::neg(diff_node(*n.a));
    case Kind::call: {
      Expr u = as_expr(n.a);
      Expr du = diff_node(*n.a);
      switch (n.fn) {
        case Fn::sin:
          return Expr::mul(Expr::call(Fn::cos, u), du);
        case Fn::cos:
          return Expr::neg(Expr::mul(Expr::call(Fn::sin, u), du));
        case Fn::tan:
          return Expr::mul(
              Expr::add(Expr::number(1.0), Expr::pow(Expr::call(Fn::tan, u), 2)),
              du);
        case Fn::exp:
          return Expr::mul(Expr::call(Fn::exp, u), du);
        case Fn::ln:
          return Expr::div(du, u);
        case Fn::tanh:
          return Expr::mul(Expr::pow(Expr::call(Fn::sech, u), 2), du);
        case Fn::sech:
          return Expr::neg(Expr::mul(
              Expr::mul(Expr::call(Fn::sech, u), Expr::call(Fn::tanh, u)), du));
        case Fn::sqrt:
          return Expr::div(du, Expr::mul(Expr::number(2.0),
                                         Expr::call(Fn::sqrt, u)));
        case Fn::atan:
          return Expr::div(du, Expr::add(Expr::number(1.0), Expr::pow(u, 2)));
      }
      throw EvalError("unreachable function kind");
    }
  }
  throw EvalError("unreachable node kind");
}

}  // namespace

Expr differentiate(const Expr& e) {
  if (!e.valid()) throw EvalError("empty expression");
  return diff_node(e.root());
}

// ---------------------------------------------------------------------------
// printing (minimal parentheses; print-then-parse reproduces the AST)

namespace {

const char* fn_name(Fn fn) {
  switch (fn) {
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::tan: return "tan";
    case Fn::exp: return "exp";
    case Fn::ln: return "ln";
    case Fn::tanh: return "tanh";
    case Fn::sech: return "sech";
    case Fn::sqrt: return "sqrt";
    case Fn::atan: return "atan";
  }
  return "?";
}

int precedence(Kind k) {
  switch (k) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::neg: return 3;
    case Kind::pow: return 4;
    default: return 5;
  }
}

void print_node(const Expr::Node& n, std::ostream& os, int parent_prec,
                bool rhs_of_nonassoc) {
  int prec = precedence(n.kind);
  bool need_parens = prec < parent_prec || (prec == parent_prec && rhs_of_nonassoc);
  // negative literals need protection in e.g. "a * -2"
  if (n.kind == Kind::number && n.value < 0 && parent_prec > 1) need_parens = true;
  if (need_parens) os << '(';
  switch (n.kind) {
    case Kind::number:
      os << format_double(n.value);
      break;
    case Kind::var:
      os << 'x';
      break;
    case Kind::add:
      print_node(*n.a, os, prec, false);
      os << " + ";
      print_node(*n.b, os, prec + 1, false);
      break;
    case Kind::sub:
      print_node(*n.a, os, prec, false);
      os << " - ";
      print_node(*n.b, os, prec + 1, false);
      break;
    case Kind::mul:
      print_node(*n.a, os, prec, false);
      os << "*";
      print_node(*n.b, os, prec + 1, false);
      break;
    case Kind::div:
      print_node(*n.a, os, prec, false);
      os << "/";
      print_node(*n.b, os, prec + 1, false);
      break;
    case Kind::neg:
      os << '-';
      print_node(*n.a, os, prec + 1, false);
      break;
    case Kind::pow:
      print_node(*n.a, os, prec + 1, false);
      os << '^' << n.exponent;
      break;
    case Kind::call:
      os << fn_name(n.fn) << '(';
      print_node(*n.a, os, 0, false);
      os << ')';
      break;
  }
  if (need_parens) os << ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  if (!e.valid()) return "";
  std::ostringstream os;
  print_node(e.root(), os, 0, false);
  return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  struct Cmp {
    static bool eq(const Expr::Node& x, const Expr::Node& y) {
      if (x.kind != y.kind) return false;
      switch (x.kind) {
        case Kind::number: return x.value == y.value;
        case Kind::var: return true;
        case Kind::pow: return x.exponent == y.exponent && eq(*x.a, *y.a);
        case Kind::neg: return eq(*x.a, *y.a);
        case Kind::call: return x.fn == y.fn && eq(*x.a, *y.a);
        default: return eq(*x.a, *y.a) && eq(*x.b, *y.b);
      }
    }
  };
  return Cmp::eq(a.root(), b.root());
}

TailCheckReport tail_limit_check(const Expr& e, double beta, double X,
                                 double tol) {
  if (!(X > 0.0)) throw std::invalid_argument("tail_limit_check: X must be > 0");
  if (!(tol > 0.0))
    throw std::invalid_argument("tail_limit_check: tol must be > 0");
  TailCheckReport rep;
  rep.points = {-4 * X, -2 * X, -X, X, 2 * X, 4 * X};
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    rep.deviations[i] = std::abs(eval(e, rep.points[i]) - beta);
  const double slack = 1e-15 * (1.0 + std::abs(beta));
  bool within = true;
  for (double d : rep.deviations) within = within && d <= tol;
  // indices 3,4,5 walk outward on the right, 2,1,0 on the left
  bool monotone = rep.deviations[4] <= rep.deviations[3] + slack &&
                  rep.deviations[5] <= rep.deviations[4] + slack &&
                  rep.deviations[1] <= rep.deviations[2] + slack &&
                  rep.deviations[0] <= rep.deviations[1] + slack;
  rep.passed = within && monotone;
  if (!within)
    rep.message = "samples deviate from the declared limit by more than tol";
  else if (!monotone)
    rep.message = "deviations grow with |x|";
  else
    rep.message = "ok";
  return rep;
}

}  // namespace wg
