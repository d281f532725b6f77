#include "symcartan/ring/expr_tree.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "symcartan/errors.hpp"

namespace symcartan {

struct NumExpr::Node {
  Op op = Op::Const;
  double value = 0;
  int var = -1;
  std::shared_ptr<const Node> a, b;
};

using NodePtr = std::shared_ptr<const NumExpr::Node>;

class NumParser {
 public:
  NumParser(const ChartPtr& chart, const std::string& s) : chart_(chart), s_(s) {}

  NodePtr run() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return n;
  }

 private:
  static NodePtr make(NumExpr::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<NumExpr::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr acc = term();
    for (;;) {
      if (accept('+'))
        acc = make(NumExpr::Op::Add, acc, term());
      else if (accept('-'))
        acc = make(NumExpr::Op::Sub, acc, term());
      else
        return acc;
    }
  }

  NodePtr term() {
    NodePtr acc = factor();
    for (;;) {
      if (accept('*'))
        acc = make(NumExpr::Op::Mul, acc, factor());
      else if (accept('/'))
        acc = make(NumExpr::Op::Div, acc, factor());
      else
        return acc;
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    if (accept('^')) return make(NumExpr::Op::Pow, b, factor());
    return b;
  }

  NodePtr base() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return n;
    }
    if (c == '-') {
      ++pos_;
      return make(NumExpr::Op::Neg, factor());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
          (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-' || s_[pos_ + 1] == '+')) {
        pos_ += 2;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      auto n = std::make_shared<NumExpr::Node>();
      n->op = NumExpr::Op::Const;
      n->value = std::stod(s_.substr(start, pos_ - start));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(at, pos_ - at);
      static const std::pair<const char*, NumExpr::Op> funcs[] = {
          {"sin", NumExpr::Op::Sin}, {"cos", NumExpr::Op::Cos}, {"exp", NumExpr::Op::Exp},
          {"log", NumExpr::Op::Log}, {"sqrt", NumExpr::Op::Sqrt}};
      for (auto [fname, op] : funcs) {
        if (name == fname) {
          if (!accept('(')) throw ParseError("expected '(' after " + name, pos_);
          NodePtr arg = expr();
          if (!accept(')')) throw ParseError("expected ')'", pos_);
          return make(op, arg);
        }
      }
      if (name == "pi") {
        auto n = std::make_shared<NumExpr::Node>();
        n->value = std::numbers::pi;
        return n;
      }
      int i = chart_->index_of(name);
      if (i < 0) throw ParseError("unknown identifier '" + name + "'", at);
      auto n = std::make_shared<NumExpr::Node>();
      n->op = NumExpr::Op::Var;
      n->var = i;
      return n;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  ChartPtr chart_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

NumExpr NumExpr::parse(const ChartPtr& chart, const std::string& text) {
  NumExpr e;
  e.root_ = NumParser(chart, text).run();
  e.text_ = text;
  return e;
}

NumExpr NumExpr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->value = c;
  NumExpr e;
  e.root_ = n;
  e.text_ = std::to_string(c);
  return e;
}

namespace {

Dual chain(const Dual& x, double value, double deriv) {
  Dual r;
  r.v = value;
  for (int i = 0; i < kMaxVars; ++i) r.d[i] = deriv * x.d[i];
  return r;
}

Dual eval_node(const NumExpr::Node& n, const std::vector<double>& x) {
  using Op = NumExpr::Op;
  Dual r;
  switch (n.op) {
    case Op::Const:
      r.v = n.value;
      return r;
    case Op::Var:
      r.v = x.at(n.var);
      r.d[n.var] = 1;
      return r;
    case Op::Neg: {
      Dual a = eval_node(*n.a, x);
      return chain(a, -a.v, -1);
    }
    case Op::Sin: {
      Dual a = eval_node(*n.a, x);
      return chain(a, std::sin(a.v), std::cos(a.v));
    }
    case Op::Cos: {
      Dual a = eval_node(*n.a, x);
      return chain(a, std::cos(a.v), -std::sin(a.v));
    }
    case Op::Exp: {
      Dual a = eval_node(*n.a, x);
      double e = std::exp(a.v);
      return chain(a, e, e);
    }
    case Op::Log: {
      Dual a = eval_node(*n.a, x);
      if (a.v <= 0) throw PoleError("log of a nonpositive value");
      return chain(a, std::log(a.v), 1 / a.v);
    }
    case Op::Sqrt: {
      Dual a = eval_node(*n.a, x);
      if (a.v <= 0) throw PoleError("sqrt at a nonpositive value");
      double s = std::sqrt(a.v);
      return chain(a, s, 0.5 / s);
    }
    default:
      break;
  }
  Dual a = eval_node(*n.a, x), b = eval_node(*n.b, x);
  switch (n.op) {
    case Op::Add:
      r.v = a.v + b.v;
      for (int i = 0; i < kMaxVars; ++i) r.d[i] = a.d[i] + b.d[i];
      return r;
    case Op::Sub:
      r.v = a.v - b.v;
      for (int i = 0; i < kMaxVars; ++i) r.d[i] = a.d[i] - b.d[i];
      return r;
    case Op::Mul:
      r.v = a.v * b.v;
      for (int i = 0; i < kMaxVars; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
      return r;
    case Op::Div:
      if (std::abs(b.v) < 1e-12) throw PoleError("division by zero in closed-form expression");
      r.v = a.v / b.v;
      for (int i = 0; i < kMaxVars; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) / (b.v * b.v);
      return r;
    case Op::Pow: {
      bool const_exp = true;
      for (double g : b.d) const_exp = const_exp && g == 0;
      double ib = std::round(b.v);
      if (const_exp && ib == b.v) {
        r.v = std::pow(a.v, b.v);
        double dv = b.v == 0 ? 0 : b.v * std::pow(a.v, b.v - 1);
        if (!std::isfinite(r.v) || !std::isfinite(dv)) throw PoleError("power at a pole");
        return chain(a, r.v, dv);
      }
      if (a.v <= 0) throw PoleError("real power of a nonpositive base");
      r.v = std::pow(a.v, b.v);
      for (int i = 0; i < kMaxVars; ++i) r.d[i] = r.v * (b.d[i] * std::log(a.v) + b.v * a.d[i] / a.v);
      return r;
    }
    default:
      throw ComputationError("malformed expression tree");
  }
}

}  // namespace

Dual NumExpr::eval_dual(const std::vector<double>& coords) const { return eval_node(*root_, coords); }

double NumExpr::eval(const std::vector<double>& coords) const { return eval_node(*root_, coords).v; }

}  // namespace symcartan
