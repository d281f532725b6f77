#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "symcartan/connection/connection.hpp"
#include "symcartan/killing/killing.hpp"
#include "symcartan/liealg/liealg.hpp"

namespace symcartan {

using Json = nlohmann::ordered_json;

// "0,1,1" style keys for symbols, "011" style keys for symmetric components.
std::string comma_key(const std::vector<int>& idx);
std::string index_key(const std::vector<int>& idx);
std::vector<int> parse_comma_key(const std::string& key, int arity, int dim);
std::vector<int> parse_index_key(const std::string& key, int dim);

// All readers throw SchemaError on malformed input.
Json read_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text);

ChartPtr chart_from_json(const Json& manifold);
Json chart_to_json(const Chart& chart);

Connection connection_from_json(const ChartPtr& chart, const Json& connection);
Json connection_to_json(const Connection& nabla);

// Components on sorted tuples, in the tensor convention.
SymField sym_field_from_json(const ChartPtr& chart, int degree, const Json& components);
Json sym_field_to_json(const SymField& phi);
VecSymField vector_field_from_json(const ChartPtr& chart, const Json& comps);
Json vector_field_to_json(const VecSymField& x);
ClosedFormTensor closed_form_from_json(const ChartPtr& chart, const Json& tensor);

// {"dim": n, "product": {"i,j": [c^0_ij, ..., c^{n-1}_ij]}}
StructureConstants constants_from_json(const Json& algebra);
std::vector<std::vector<Rational>> rational_matrix_from_json(const Json& m, int n);

AnsatzSpec ansatz_from_json(const Json& task, int degree, int default_coef_degree);

/// A parsed problem file.  Manifold and connection are optional so that
/// algebra-only files validate.
struct Problem {
  std::string name;
  std::string module;
  ChartPtr chart;
  std::optional<Connection> connection;
  std::optional<SymField> metric;
  Json tasks = Json::array();
};

Problem parse_problem(const Json& j);
Problem load_problem(const std::filesystem::path& path);

// The first task of a given type, or null.
const Json* find_task(const Problem& p, const std::string& type);

}  // namespace symcartan
