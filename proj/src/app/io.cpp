#include "symcartan/app/io.hpp"

#include <fstream>
#include <sstream>

#include "symcartan/errors.hpp"
#include "symcartan/ring/parser.hpp"

namespace symcartan {

std::string comma_key(const std::vector<int>& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i]);
  return out;
}

std::string index_key(const std::vector<int>& idx) {
  std::string out;
  for (int i : idx) out += std::to_string(i);
  return out;
}

std::vector<int> parse_comma_key(const std::string& key, int arity, int dim) {
  std::vector<int> out;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw SchemaError("bad index key '" + key + "'");
    int v = std::stoi(part);
    if (v >= dim) throw SchemaError("index out of range in key '" + key + "'");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != arity) throw SchemaError("key '" + key + "' needs " + std::to_string(arity) + " indices");
  return out;
}

std::vector<int> parse_index_key(const std::string& key, int dim) {
  std::vector<int> out;
  for (char ch : key) {
    if (ch < '0' || ch > '9' || ch - '0' >= dim) throw SchemaError("bad component key '" + key + "'");
    out.push_back(ch - '0');
  }
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string require_string(const Json& j) {
  if (!j.is_string()) throw SchemaError("expected an expression string, got " + j.dump());
  return j.get<std::string>();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw SchemaError("expected an integer or a rational string, got " + j.dump());
}

}  // namespace

ChartPtr chart_from_json(const Json& manifold) {
  const Json& coords = require(manifold, "coords");
  if (!coords.is_array() || coords.empty()) throw SchemaError("coords must be a nonempty array");
  std::vector<Coordinate> cs;
  for (const auto& c : coords) {
    Coordinate co;
    co.name = require_string(require(c, "name"));
    std::string kind = c.value("kind", std::string("affine"));
    if (kind == "affine") co.kind = CoordKind::Affine;
    else if (kind == "angle") co.kind = CoordKind::Angle;
    else throw SchemaError("unknown coordinate kind '" + kind + "'");
    cs.push_back(std::move(co));
  }
  if (manifold.contains("dim") && manifold.at("dim") != static_cast<int>(cs.size()))
    throw SchemaError("dim does not match the number of coordinates");
  if (static_cast<int>(cs.size()) > kMaxVars) throw SchemaError("too many coordinates");
  try {
    return make_chart(std::move(cs));
  } catch (const ComputationError& e) {
    throw SchemaError(e.what());
  }
}

Json chart_to_json(const Chart& chart) {
  Json coords = Json::array();
  for (const auto& c : chart.coords())
    coords.push_back({{"name", c.name}, {"kind", c.kind == CoordKind::Angle ? "angle" : "affine"}});
  return {{"dim", chart.dim()}, {"coords", coords}};
}

Connection connection_from_json(const ChartPtr& chart, const Json& connection) {
  Tensor3 g(chart);
  if (connection.contains("gamma")) {
    const Json& gamma = connection.at("gamma");
    if (!gamma.is_object()) throw SchemaError("gamma must be an object");
    for (const auto& [key, val] : gamma.items()) {
      auto idx = parse_comma_key(key, 3, chart->dim());
      g(idx[0], idx[1], idx[2]) = parse_expr(chart, require_string(val));
    }
  }
  return Connection(std::move(g));
}

Json connection_to_json(const Connection& nabla) {
  Json gamma = Json::object();
  int n = nabla.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!nabla.gamma(k, i, j).is_zero()) gamma[comma_key({k, i, j})] = nabla.gamma(k, i, j).to_string();
  return {{"gamma", gamma}};
}

SymField sym_field_from_json(const ChartPtr& chart, int degree, const Json& components) {
  if (!components.is_object()) throw SchemaError("components must be an object");
  std::map<std::vector<int>, ScalarField> comps;
  for (const auto& [key, val] : components.items()) {
    auto idx = parse_index_key(key, chart->dim());
    if (static_cast<int>(idx.size()) != degree) throw SchemaError("component key '" + key + "' has the wrong degree");
    std::sort(idx.begin(), idx.end());
    if (comps.count(idx)) throw SchemaError("duplicate component '" + key + "'");
    comps.emplace(idx, parse_expr(chart, require_string(val)));
  }
  return SymField::from_components(chart, degree, comps);
}

Json sym_field_to_json(const SymField& phi) {
  Json comps = Json::object();
  for (const auto& [idx, c] : phi.components()) comps[index_key(idx)] = c.to_string();
  return {{"degree", phi.degree()}, {"components", comps}};
}

VecSymField vector_field_from_json(const ChartPtr& chart, const Json& comps) {
  if (!comps.is_array() || static_cast<int>(comps.size()) != chart->dim())
    throw SchemaError("vector field needs one expression per coordinate");
  std::vector<ScalarField> fs;
  for (const auto& c : comps) fs.push_back(parse_expr(chart, require_string(c)));
  return VecSymField::vector_field(chart, fs);
}

Json vector_field_to_json(const VecSymField& x) {
  Json out = Json::array();
  for (const auto& s : x.scalars()) out.push_back(s.to_string());
  return out;
}

ClosedFormTensor closed_form_from_json(const ChartPtr& chart, const Json& tensor) {
  ClosedFormTensor k;
  k.degree = tensor.value("degree", 1);
  if (k.degree < 0 || k.degree > 4) throw SchemaError("closed-form degree out of range");
  for (const auto& [key, val] : require(tensor, "components").items()) {
    auto idx = parse_index_key(key, chart->dim());
    if (static_cast<int>(idx.size()) != k.degree) throw SchemaError("component key '" + key + "' has the wrong degree");
    std::sort(idx.begin(), idx.end());
    k.components.emplace(idx, NumExpr::parse(chart, require_string(val)));
  }
  return k;
}

StructureConstants constants_from_json(const Json& algebra) {
  const Json& dim = require(algebra, "dim");
  if (!dim.is_number_integer() || dim.get<int>() < 1 || dim.get<int>() > kMaxVars)
    throw SchemaError("algebra dim must be an integer between 1 and 8");
  int n = dim.get<int>();
  StructureConstants c(n);
  const Json& product = algebra.contains("product") ? algebra.at("product") : Json::object();
  if (!product.is_object()) throw SchemaError("product must be an object");
  for (const auto& [key, val] : product.items()) {
    auto idx = parse_comma_key(key, 2, n);
    if (!val.is_array() || static_cast<int>(val.size()) != n) throw SchemaError("product entry needs dim coefficients");
    for (int k = 0; k < n; ++k) c(k, idx[0], idx[1]) = rational_from_json(val[k]);
  }
  return c;
}

std::vector<std::vector<Rational>> rational_matrix_from_json(const Json& m, int n) {
  if (!m.is_array() || static_cast<int>(m.size()) != n) throw SchemaError("matrix must have dim rows");
  std::vector<std::vector<Rational>> out;
  for (const auto& row : m) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw SchemaError("matrix row must have dim entries");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

AnsatzSpec ansatz_from_json(const Json& task, int degree, int default_coef_degree) {
  AnsatzSpec s;
  s.degree = degree;
  s.coef_degree = task.value("coef_degree", default_coef_degree);
  if (s.coef_degree < 0 || s.coef_degree > 12) throw SchemaError("coef_degree out of range");
  s.denominator = task.value("denominator", std::string());
  if (task.contains("per_coord")) s.per_coord = task.at("per_coord").get<std::vector<int>>();
  return s;
}

Problem parse_problem(const Json& j) {
  if (!j.is_object()) throw SchemaError("problem must be a JSON object");
  Problem p;
  try {
    p.name = j.value("name", std::string());
    p.module = j.value("module", std::string());
    if (j.contains("manifold")) p.chart = chart_from_json(j.at("manifold"));
    if (j.contains("connection")) {
      if (!p.chart) throw SchemaError("connection without manifold");
      p.connection = connection_from_json(p.chart, j.at("connection"));
    }
    if (j.contains("metric")) {
      if (!p.chart) throw SchemaError("metric without manifold");
      p.metric = sym_field_from_json(p.chart, 2, require(j.at("metric"), "components"));
    }
    if (j.contains("tasks")) {
      if (!j.at("tasks").is_array()) throw SchemaError("tasks must be an array");
      p.tasks = j.at("tasks");
      for (const auto& t : p.tasks)
        if (!t.is_object() || !t.contains("type") || !t.at("type").is_string())
          throw SchemaError("every task needs a string 'type'");
    }
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("schema violation: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const ComputationError& e) {
    // Division by zero and similar while reading expressions.
    throw SchemaError(e.what());
  }
  return p;
}

Problem load_problem(const std::filesystem::path& path) {
  Problem p = parse_problem(read_json_file(path));
  if (p.name.empty()) p.name = path.stem().string();
  return p;
}

const Json* find_task(const Problem& p, const std::string& type) {
  for (const auto& t : p.tasks)
    if (t.at("type") == type) return &t;
  return nullptr;
}

}  // namespace symcartan
