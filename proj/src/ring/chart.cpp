#include "symcartan/ring/chart.hpp"

#include <cctype>
#include <set>

#include "symcartan/errors.hpp"
#include "symcartan/ring/monomial.hpp"

namespace symcartan {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return s != "sin" && s != "cos" && s != "exp" && s != "log" && s != "sqrt" && s != "pi";
}

}  // namespace

Chart::Chart(std::vector<Coordinate> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw SchemaError("chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (!valid_identifier(c.name)) throw SchemaError("invalid coordinate name '" + c.name + "'");
    if (!seen.insert(c.name).second) throw SchemaError("duplicate coordinate name '" + c.name + "'");
    first_gen_.push_back(num_gens_);
    if (c.kind == CoordKind::Angle) {
      angle_pairs_.emplace_back(num_gens_, num_gens_ + 1);
      num_gens_ += 2;
    } else {
      num_gens_ += 1;
    }
  }
  if (num_gens_ > kMaxVars) throw SchemaError("chart has too many generators");
}

int Chart::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (coords_[i].name == name) return i;
  return -1;
}

ChartPtr make_chart(std::vector<Coordinate> coords) {
  return std::make_shared<const Chart>(std::move(coords));
}

ChartPtr affine_chart(const std::vector<std::string>& names) {
  std::vector<Coordinate> coords;
  for (const auto& n : names) coords.push_back({n, CoordKind::Affine});
  return make_chart(std::move(coords));
}

ChartPtr product_chart(const Chart& a, const Chart& b) {
  std::vector<Coordinate> coords = a.coords();
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  return make_chart(std::move(coords));
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!same_chart(a, b)) throw ChartMismatch();
}

}  // namespace symcartan
