#include "symcartan/ring/parser.hpp"

#include <cctype>

#include "symcartan/errors.hpp"

namespace symcartan {

namespace {

class ExactParser {
 public:
  ExactParser(const ChartPtr& chart, const std::string& text) : chart_(chart), s_(text) {}

  ScalarField run() {
    ScalarField f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

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

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ScalarField expr() {
    ScalarField acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  ScalarField term() {
    ScalarField acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        ScalarField d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  ScalarField factor() {
    ScalarField b = base();
    if (accept('^')) {
      skip();
      bool neg = accept('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int e = std::stoi(s_.substr(start, pos_ - start));
      if (neg && b.is_zero()) throw ParseError("division by zero", start);
      b = b.pow(neg ? -e : e);
    }
    return b;
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  ScalarField base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarField f = expr();
      expect(')');
      return f;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string name = ident();
      if (name == "sin" || name == "cos") {
        expect('(');
        std::size_t arg_at = pos_;
        std::string arg = ident();
        int i = chart_->index_of(arg);
        if (i < 0) throw ParseError("unknown identifier '" + arg + "'", arg_at);
        if (!chart_->is_angle(i))
          throw ParseError(name + " applied to affine coordinate '" + arg + "'", arg_at);
        expect(')');
        return name == "sin" ? ScalarField::sin_of(chart_, i) : ScalarField::cos_of(chart_, i);
      }
      int i = chart_->index_of(name);
      if (i < 0) throw ParseError("unknown identifier '" + name + "'", at);
      if (chart_->is_angle(i))
        throw ParseError("angle coordinate '" + name + "' may only appear inside sin/cos", at);
      return ScalarField::coordinate(chart_, i);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  ScalarField number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits = s_.substr(start, pos_ - start);
    Rational q(digits, 10);
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string frac = s_.substr(fs, pos_ - fs);
      if (!frac.empty()) {
        mpz_class scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        Rational f(mpz_class(frac, 10), scale);
        f.canonicalize();
        q += f;
      }
    }
    return ScalarField(chart_, q);
  }

  ChartPtr chart_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarField parse_expr(const ChartPtr& chart, const std::string& text) {
  if (!chart) throw SchemaError("no chart for expression");
  return ExactParser(chart, text).run();
}

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw SchemaError("empty rational literal");
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  bool slash = false;
  if (i == t.size()) throw SchemaError("invalid rational literal '" + text + "'");
  for (std::size_t k = i; k < t.size(); ++k) {
    if (t[k] == '/' && !slash && k > i && k + 1 < t.size()) {
      slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(t[k]))) throw SchemaError("invalid rational literal '" + text + "'");
  }
  if (t[0] == '+') t = t.substr(1);
  Rational q;
  q.set_str(t, 10);
  if (q.get_den() == 0) throw SchemaError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace symcartan
