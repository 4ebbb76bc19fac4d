#include "monogamy/io.hpp"

#include <fstream>
#include <sstream>

#include "monogamy/error.hpp"

namespace monogamy::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_of(const json& j) {
  if (!j.is_number_unsigned()) fail(ErrorCode::ParseError, "expected a non-negative integer, got " + j.dump());
  return j.get<std::size_t>();
}

Scope scope_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "scope must be an array");
  Scope scope;
  for (const auto& o : j) scope.push_back({field(o, "id").get<std::string>(), count_of(field(o, "k"))});
  return scope;
}

json scope_to_json(const Scope& scope) {
  json out = json::array();
  for (const auto& o : scope) out.push_back({{"id", o.id}, {"k", o.k}});
  return out;
}

}  // namespace

json to_json(const DistTable& table) {
  return {{"scope", scope_to_json(table.scope())},
          {"values", std::vector<double>(table.values().begin(), table.values().end())}};
}

DistTable table_from_json(const json& j) {
  return guarded("table", [&] {
    return DistTable(scope_from_json(field(j, "scope")), field(j, "values").get<std::vector<double>>());
  });
}

json to_json(const MarginalScenario& scenario) {
  json edges = json::array();
  for (const auto& e : scenario.edges()) {
    edges.push_back({{"i", scenario.observables()[e.i].id}, {"j", scenario.observables()[e.j].id}, {"table", to_json(e.table)}});
  }
  return {{"observables", scope_to_json(scenario.observables())}, {"edges", edges}};
}

MarginalScenario scenario_from_json(const json& j) {
  auto [observables, edges] = guarded("scenario", [&] {
    Scope obs = scope_from_json(field(j, "observables"));
    const json& list = field(j, "edges");
    if (!list.is_array()) fail(ErrorCode::ParseError, "edges must be an array");
    std::vector<EdgeSpec> specs;
    for (const auto& e : list) {
      specs.push_back({field(e, "i").get<std::string>(), field(e, "j").get<std::string>(), table_from_json(field(e, "table"))});
    }
    return std::make_pair(std::move(obs), std::move(specs));
  });
  return MarginalScenario(std::move(observables), std::move(edges));
}

json to_json(const JointWitness& result, const MarginalScenario& scenario) {
  if (const auto* joint = std::get_if<FeasibleJoint>(&result)) return {{"feasible", true}, {"joint", to_json(joint->joint)}};
  const auto& w = std::get<BellWitness>(result);
  json terms = json::array();
  for (const auto& t : w.terms) {
    const auto& e = scenario.edges()[t.edge];
    terms.push_back({{"edge", t.edge},
                     {"i", scenario.observables()[e.i].id},
                     {"j", scenario.observables()[e.j].id},
                     {"coefficients", t.coefficients}});
  }
  return {{"feasible", false}, {"witness", {{"terms", terms}, {"bound", w.bound}, {"value", w.value}}}};
}

json to_json(const quantum::DensityOp& rho) {
  std::vector<double> entries;
  const auto& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back(m(r, c).real());
      entries.push_back(m(r, c).imag());
    }
  }
  return {{"dims", rho.dims()}, {"entries", entries}};
}

quantum::DensityOp density_from_json(const json& j) {
  auto [dims, entries] = guarded("density operator", [&] {
    std::vector<std::size_t> d;
    for (const auto& x : field(j, "dims")) d.push_back(count_of(x));
    return std::make_pair(std::move(d), field(j, "entries").get<std::vector<double>>());
  });
  std::size_t d = 1;
  for (std::size_t x : dims) {
    if (x == 0 || d > quantum::kMaxDimension) fail(ErrorCode::ParseError, "bad local dimension");
    d *= x;
  }
  if (d > quantum::kMaxDimension) fail(ErrorCode::CapExceeded, "Hilbert-space dimension exceeds 2^14");
  if (entries.size() != 2 * d * d) fail(ErrorCode::ParseError, "entries must hold 2*d*d numbers");
  quantum::CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t k = 2 * (r * d + c);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {entries[k], entries[k + 1]};
    }
  }
  return quantum::DensityOp(std::move(dims), std::move(m));
}

json to_json(const graphs::Graph& g) {
  json edges = json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return {{"n", g.n()},
          {"edges", edges},
          {"tag", g.tag()},
          {"edge_transitive", g.edge_transitive()},
          {"vertex_transitive", g.vertex_transitive()}};
}

graphs::Graph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    std::vector<graphs::Edge> edges;
    for (const auto& e : field(j, "edges")) {
      if (!e.is_array() || e.size() != 2) fail(ErrorCode::ParseError, "edge must be a pair");
      edges.emplace_back(count_of(e[0]), count_of(e[1]));
    }
    return graphs::Graph(count_of(field(j, "n")), std::move(edges), j.value("tag", std::string("custom")),
                         j.value("edge_transitive", false), j.value("vertex_transitive", false));
  });
}

json parse(const std::string& text) {
  return guarded("json", [&] { return json::parse(text); });
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace monogamy::io
