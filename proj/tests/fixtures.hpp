#pragma once

#include <string>

#include "symcartan/connection/connection.hpp"
#include "symcartan/ring/parser.hpp"

namespace fixtures {

using namespace symcartan;

inline ChartPtr plane() { return affine_chart({"x", "y"}); }

// Torsion-free connection on the plane from the six functions f1..f6:
// nabla_x d_x = f1 d_x + f2 d_y, nabla_x d_y = (f3 d_x + f4 d_y)/2, nabla_y d_y = f5 d_x + f6 d_y.
inline Connection plane_connection(const ChartPtr& c, const std::string& f1, const std::string& f2,
                                   const std::string& f3, const std::string& f4, const std::string& f5,
                                   const std::string& f6) {
  Tensor3 g(c);
  Rational half(1, 2);
  g(0, 0, 0) = parse_expr(c, f1);
  g(1, 0, 0) = parse_expr(c, f2);
  g(0, 0, 1) = g(0, 1, 0) = parse_expr(c, f3).scaled(half);
  g(1, 0, 1) = g(1, 1, 0) = parse_expr(c, f4).scaled(half);
  g(0, 1, 1) = parse_expr(c, f5);
  g(1, 1, 1) = parse_expr(c, f6);
  return Connection(std::move(g));
}

inline Connection trivial_example(const ChartPtr& c) { return plane_connection(c, "0", "0", "x*y", "y", "0", "0"); }

inline Connection constant_example(const ChartPtr& c, const std::string& l1, const std::string& l2) {
  return plane_connection(c, "0", "0", l1, l2, "0", "0");
}

inline Connection rational_example(const ChartPtr& c) {
  return plane_connection(c, "0", "0", "-2*y*(1 + 2/(1+2*y^2))", "-2*x*(1 + 2/(1+2*x^2))", "0", "0");
}

inline VecSymField vf(const ChartPtr& c, std::initializer_list<const char*> comps) {
  std::vector<ScalarField> f;
  for (auto s : comps) f.push_back(parse_expr(c, s));
  return VecSymField::vector_field(c, f);
}

inline SymField one_form(const ChartPtr& c, std::initializer_list<const char*> comps) {
  SymField out(c, 1);
  int i = 0;
  for (auto s : comps) out += SymField::dx(c, i++).scaled(parse_expr(c, s));
  return out;
}

}  // namespace fixtures
