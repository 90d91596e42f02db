#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "diracpolar/errors.hpp"
#include "diracpolar/linalg.hpp"

namespace diracpolar {

/// Evaluation environment: four named coordinates plus optional parameters.
struct Env {
  const std::array<std::string, 4>* coords = nullptr;
  RVec4 x{};
  const std::map<std::string, double>* params = nullptr;

  double get(const std::string& name) const {
    if (coords)
      for (int i = 0; i < 4; ++i)
        if ((*coords)[i] == name) return x[i];
    if (params) {
      auto it = params->find(name);
      if (it != params->end()) return it->second;
    }
    if (name == "pi") return M_PI;
    throw Error("unbound symbol '" + name + "' in field expression");
  }
};

namespace exprdet {

enum class Kind { num, sym, add, sub, mul, div, pow, neg, call1, call2 };
enum class Fn1 { exp, log, sin, cos, sinh, cosh, tanh, cot, sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  double value = 0;     // num
  std::string name;     // sym
  Fn1 fn = Fn1::exp;    // call1
  NodePtr l, r;         // children (call2 = atan2(l, r))
};

inline bool is_const(const NodePtr& n, double v) { return n->kind == Kind::num && n->value == v; }
inline bool is_num(const NodePtr& n) { return n->kind == Kind::num; }

inline NodePtr num(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::num;
  n->value = v;
  return n;
}

inline NodePtr sym(std::string s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::sym;
  n->name = std::move(s);
  return n;
}

inline NodePtr mk(Kind k, NodePtr l, NodePtr r) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->l = std::move(l);
  n->r = std::move(r);
  return n;
}

NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr divn(NodePtr a, NodePtr b);
NodePtr pown(NodePtr a, NodePtr b);
NodePtr neg(NodePtr a);
NodePtr call1(Fn1 f, NodePtr a);
NodePtr call2(NodePtr y, NodePtr x);

inline double eval1(Fn1 f, double v) {
  switch (f) {
    case Fn1::exp: return std::exp(v);
    case Fn1::log: return std::log(v);
    case Fn1::sin: return std::sin(v);
    case Fn1::cos: return std::cos(v);
    case Fn1::sinh: return std::sinh(v);
    case Fn1::cosh: return std::cosh(v);
    case Fn1::tanh: return std::tanh(v);
    case Fn1::cot: return std::cos(v) / std::sin(v);
    case Fn1::sqrt: return std::sqrt(v);
  }
  return 0;
}

inline NodePtr add(NodePtr a, NodePtr b) {
  if (is_num(a) && is_num(b)) return num(a->value + b->value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return mk(Kind::add, std::move(a), std::move(b));
}

inline NodePtr sub(NodePtr a, NodePtr b) {
  if (is_num(a) && is_num(b)) return num(a->value - b->value);
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return neg(std::move(b));
  return mk(Kind::sub, std::move(a), std::move(b));
}

inline NodePtr mul(NodePtr a, NodePtr b) {
  if (is_num(a) && is_num(b)) return num(a->value * b->value);
  if (is_const(a, 0) || is_const(b, 0)) return num(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  return mk(Kind::mul, std::move(a), std::move(b));
}

inline NodePtr divn(NodePtr a, NodePtr b) {
  if (is_num(a) && is_num(b) && b->value != 0) return num(a->value / b->value);
  if (is_const(a, 0)) return num(0);
  if (is_const(b, 1)) return a;
  return mk(Kind::div, std::move(a), std::move(b));
}

inline NodePtr pown(NodePtr a, NodePtr b) {
  if (is_num(a) && is_num(b)) return num(std::pow(a->value, b->value));
  if (is_const(b, 0)) return num(1);
  if (is_const(b, 1)) return a;
  if (is_const(a, 1)) return num(1);
  return mk(Kind::pow, std::move(a), std::move(b));
}

inline NodePtr neg(NodePtr a) {
  if (is_num(a)) return num(-a->value);
  if (a->kind == Kind::neg) return a->l;
  return mk(Kind::neg, std::move(a), nullptr);
}

inline NodePtr call1(Fn1 f, NodePtr a) {
  if (is_num(a)) return num(eval1(f, a->value));
  auto n = mk(Kind::call1, std::move(a), nullptr);
  const_cast<Node*>(n.get())->fn = f;
  return n;
}

inline NodePtr call2(NodePtr y, NodePtr x) {
  if (is_num(y) && is_num(x)) return num(std::atan2(y->value, x->value));
  return mk(Kind::call2, std::move(y), std::move(x));
}

}  // namespace exprdet

/// Immutable symbolic expression over coordinate/parameter symbols, closed
/// under exact partial differentiation.
class FieldExpr {
 public:
  FieldExpr() : n_(exprdet::num(0)) {}
  /* implicit */ FieldExpr(double v) : n_(exprdet::num(v)) {}
  explicit FieldExpr(exprdet::NodePtr n) : n_(std::move(n)) {}

  static FieldExpr constant(double v) { return FieldExpr(exprdet::num(v)); }
  static FieldExpr symbol(const std::string& s) { return FieldExpr(exprdet::sym(s)); }

  bool is_constant(double* out = nullptr) const {
    if (n_->kind != exprdet::Kind::num) return false;
    if (out) *out = n_->value;
    return true;
  }

  double eval(const Env& env) const { return eval(n_, env); }

  FieldExpr diff(const std::string& var) const { return FieldExpr(diff(n_, var)); }

  std::string str() const { return str(n_, 0); }

  friend FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(exprdet::add(a.n_, b.n_));
  }
  friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(exprdet::sub(a.n_, b.n_));
  }
  friend FieldExpr operator*(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(exprdet::mul(a.n_, b.n_));
  }
  friend FieldExpr operator/(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(exprdet::divn(a.n_, b.n_));
  }
  friend FieldExpr operator-(const FieldExpr& a) { return FieldExpr(exprdet::neg(a.n_)); }

  friend FieldExpr pow(const FieldExpr& a, const FieldExpr& b) {
    return FieldExpr(exprdet::pown(a.n_, b.n_));
  }
  friend FieldExpr exp(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::exp, a.n_));
  }
  friend FieldExpr log(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::log, a.n_));
  }
  friend FieldExpr sin(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::sin, a.n_));
  }
  friend FieldExpr cos(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::cos, a.n_));
  }
  friend FieldExpr sinh(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::sinh, a.n_));
  }
  friend FieldExpr cosh(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::cosh, a.n_));
  }
  friend FieldExpr tanh(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::tanh, a.n_));
  }
  friend FieldExpr cot(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::cot, a.n_));
  }
  friend FieldExpr sqrt(const FieldExpr& a) {
    return FieldExpr(exprdet::call1(exprdet::Fn1::sqrt, a.n_));
  }
  friend FieldExpr atan2(const FieldExpr& y, const FieldExpr& x) {
    return FieldExpr(exprdet::call2(y.n_, x.n_));
  }

 private:
  static double eval(const exprdet::NodePtr& n, const Env& env) {
    using exprdet::Kind;
    switch (n->kind) {
      case Kind::num: return n->value;
      case Kind::sym: return env.get(n->name);
      case Kind::add: return eval(n->l, env) + eval(n->r, env);
      case Kind::sub: return eval(n->l, env) - eval(n->r, env);
      case Kind::mul: return eval(n->l, env) * eval(n->r, env);
      case Kind::div: return eval(n->l, env) / eval(n->r, env);
      case Kind::pow: return std::pow(eval(n->l, env), eval(n->r, env));
      case Kind::neg: return -eval(n->l, env);
      case Kind::call1: return exprdet::eval1(n->fn, eval(n->l, env));
      case Kind::call2: return std::atan2(eval(n->l, env), eval(n->r, env));
    }
    return 0;
  }

  static exprdet::NodePtr diff(const exprdet::NodePtr& n, const std::string& var) {
    using namespace exprdet;
    switch (n->kind) {
      case Kind::num: return num(0);
      case Kind::sym: return num(n->name == var ? 1 : 0);
      case Kind::add: return add(diff(n->l, var), diff(n->r, var));
      case Kind::sub: return sub(diff(n->l, var), diff(n->r, var));
      case Kind::mul: return add(mul(diff(n->l, var), n->r), mul(n->l, diff(n->r, var)));
      case Kind::div:
        return divn(sub(mul(diff(n->l, var), n->r), mul(n->l, diff(n->r, var))),
                    mul(n->r, n->r));
      case Kind::pow: {
        if (is_num(n->r)) {
          const double c = n->r->value;
          return mul(mul(num(c), pown(n->l, num(c - 1))), diff(n->l, var));
        }
        // f^g = exp(g log f)
        NodePtr t = add(mul(diff(n->r, var), call1(Fn1::log, n->l)),
                        divn(mul(n->r, diff(n->l, var)), n->l));
        return mul(pown(n->l, n->r), t);
      }
      case Kind::neg: return neg(diff(n->l, var));
      case Kind::call1: {
        NodePtr dl = diff(n->l, var);
        switch (n->fn) {
          case Fn1::exp: return mul(call1(Fn1::exp, n->l), dl);
          case Fn1::log: return divn(dl, n->l);
          case Fn1::sin: return mul(call1(Fn1::cos, n->l), dl);
          case Fn1::cos: return neg(mul(call1(Fn1::sin, n->l), dl));
          case Fn1::sinh: return mul(call1(Fn1::cosh, n->l), dl);
          case Fn1::cosh: return mul(call1(Fn1::sinh, n->l), dl);
          case Fn1::tanh: {
            NodePtr t = call1(Fn1::tanh, n->l);
            return mul(sub(num(1), mul(t, t)), dl);
          }
          case Fn1::cot: {
            NodePtr t = call1(Fn1::cot, n->l);
            return neg(mul(add(num(1), mul(t, t)), dl));
          }
          case Fn1::sqrt: return divn(dl, mul(num(2), call1(Fn1::sqrt, n->l)));
        }
        return num(0);
      }
      case Kind::call2: {
        // atan2(y, x)' = (y' x - x' y) / (x^2 + y^2)
        NodePtr dy = diff(n->l, var);
        NodePtr dx = diff(n->r, var);
        return divn(sub(mul(dy, n->r), mul(dx, n->l)),
                    add(mul(n->r, n->r), mul(n->l, n->l)));
      }
    }
    return exprdet::num(0);
  }

  static std::string str(const exprdet::NodePtr& n, int parent_prec) {
    using exprdet::Kind;
    auto wrap = [&](int prec, std::string s) {
      return prec < parent_prec ? "(" + std::move(s) + ")" : std::move(s);
    };
    switch (n->kind) {
      case Kind::num: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", n->value);
        return n->value < 0 ? wrap(2, buf) : std::string(buf);
      }
      case Kind::sym: return n->name;
      case Kind::add: return wrap(1, str(n->l, 1) + " + " + str(n->r, 1));
      case Kind::sub: return wrap(1, str(n->l, 1) + " - " + str(n->r, 2));
      case Kind::mul: return wrap(2, str(n->l, 2) + "*" + str(n->r, 2));
      case Kind::div: return wrap(2, str(n->l, 2) + "/" + str(n->r, 3));
      case Kind::pow: return wrap(3, str(n->l, 4) + "^" + str(n->r, 3));
      case Kind::neg: return wrap(2, "-" + str(n->l, 3));
      case Kind::call1: {
        static const char* names[] = {"exp", "log", "sin", "cos", "sinh",
                                      "cosh", "tanh", "cot", "sqrt"};
        return std::string(names[static_cast<int>(n->fn)]) + "(" + str(n->l, 0) + ")";
      }
      case Kind::call2: return "atan2(" + str(n->l, 0) + ", " + str(n->r, 0) + ")";
    }
    return {};
  }

  exprdet::NodePtr n_;
};

// ---- parser --------------------------------------------------------------
//
// Grammar (whitespace-insensitive):
//   expr    := term  (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?           right-associative
//   primary := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: exp log sin cos sinh cosh tanh cot sqrt atan2; 'pi' is a
// built-in constant.

namespace exprdet {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  FieldExpr parse() {
    FieldExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail({"operator", "end of input"});
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "parse error at offset " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i)
      msg += (i ? " or " : "") + expected[i];
    throw ParseError(pos_, std::move(expected), msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldExpr expr() {
    FieldExpr e = term();
    for (;;) {
      if (eat('+'))
        e = e + term();
      else if (eat('-'))
        e = e - term();
      else
        return e;
    }
  }

  FieldExpr term() {
    FieldExpr e = unary();
    for (;;) {
      if (eat('*'))
        e = e * unary();
      else if (eat('/'))
        e = e / unary();
      else
        return e;
    }
  }

  // Unary minus binds looser than '^': -x^2 is -(x^2).
  FieldExpr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  FieldExpr power() {
    FieldExpr base = primary();
    if (eat('^')) return pow(base, unary());  // right-associative
    return base;
  }

  FieldExpr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail({"number", "identifier", "'('"});
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (c == '(') {
      ++pos_;
      FieldExpr e = expr();
      if (!eat(')')) fail({"')'"});
      return e;
    }
    fail({"number", "identifier", "'('"});
  }

  FieldExpr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string tok(s_.substr(start, pos_ - start));
    try {
      return FieldExpr::constant(std::stod(tok));
    } catch (const std::exception&) {
      pos_ = start;
      fail({"number"});
    }
  }

  FieldExpr ident() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_'))
      ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      std::vector<FieldExpr> args;
      args.push_back(expr());
      while (eat(',')) args.push_back(expr());
      if (!eat(')')) fail({"')'", "','"});
      if (name == "atan2") {
        if (args.size() != 2) {
          pos_ = start;
          fail({"atan2 with two arguments"});
        }
        return atan2(args[0], args[1]);
      }
      if (args.size() != 1) {
        pos_ = start;
        fail({"single-argument function"});
      }
      using Fn = FieldExpr (*)(const FieldExpr&);
      static const std::map<std::string, Fn> fns = {
          {"exp", [](const FieldExpr& e) { return exp(e); }},
          {"log", [](const FieldExpr& e) { return log(e); }},
          {"sin", [](const FieldExpr& e) { return sin(e); }},
          {"cos", [](const FieldExpr& e) { return cos(e); }},
          {"sinh", [](const FieldExpr& e) { return sinh(e); }},
          {"cosh", [](const FieldExpr& e) { return cosh(e); }},
          {"tanh", [](const FieldExpr& e) { return tanh(e); }},
          {"cot", [](const FieldExpr& e) { return cot(e); }},
          {"sqrt", [](const FieldExpr& e) { return sqrt(e); }}};
      auto it = fns.find(name);
      if (it == fns.end()) {
        pos_ = start;
        fail({"known function name"});
      }
      return it->second(args[0]);
    }
    if (name == "pi") return FieldExpr::constant(M_PI);
    return FieldExpr::symbol(name);
  }
};

}  // namespace exprdet

/// Parses an expression per the grammar documented above.
/// Throws ParseError carrying the byte offset and the expected-token set.
inline FieldExpr parse_field_expr(std::string_view text) {
  return exprdet::Parser(text).parse();
}

}  // namespace diracpolar
