#include "monogamy/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "monogamy/error.hpp"

namespace monogamy {

namespace {

void validate_observables(const std::vector<ObservableDecl>& observables) {
  std::unordered_set<std::string> seen;
  for (const auto& o : observables) {
    if (o.k == 0) fail(ErrorCode::InvalidArgument, "observable '" + o.id + "' has an empty alphabet");
    if (!seen.insert(o.id).second) fail(ErrorCode::DuplicateObservable, "duplicate observable id '" + o.id + "'");
  }
}

/// Walks all outcomes of `scope` in row-major order while tracking the flat
/// index of each attached table (tables may cover any sub-scope).
class MultiIndexWalker {
 public:
  MultiIndexWalker(const Scope& scope, const std::vector<const Scope*>& table_scopes)
      : scope_(scope), digits_(scope.size(), 0), index_(table_scopes.size(), 0) {
    strides_.resize(table_scopes.size());
    for (std::size_t t = 0; t < table_scopes.size(); ++t) {
      const Scope& ts = *table_scopes[t];
      strides_[t].assign(scope.size(), 0);
      std::size_t s = 1;
      for (std::size_t a = ts.size(); a-- > 0;) {
        const auto it = std::find_if(scope.begin(), scope.end(), [&](const ObservableDecl& o) { return o.id == ts[a].id; });
        strides_[t][static_cast<std::size_t>(it - scope.begin())] = s;
        s *= ts[a].k;
      }
    }
  }

  std::size_t table_index(std::size_t t) const { return index_[t]; }
  std::size_t digit(std::size_t axis) const { return digits_[axis]; }

  void advance() {
    for (std::size_t a = scope_.size(); a-- > 0;) {
      if (++digits_[a] < scope_[a].k) {
        for (std::size_t t = 0; t < index_.size(); ++t) index_[t] += strides_[t][a];
        return;
      }
      digits_[a] = 0;
      for (std::size_t t = 0; t < index_.size(); ++t) index_[t] -= strides_[t][a] * (scope_[a].k - 1);
    }
  }

 private:
  const Scope& scope_;
  std::vector<std::size_t> digits_;
  std::vector<std::size_t> index_;
  std::vector<std::vector<std::size_t>> strides_;
};

DistTable normalized(Scope scope, std::vector<double> values) {
  double total = 0.0;
  for (double& v : values) {
    v = std::max(0.0, v);
    total += v;
  }
  if (!(total > 0.0)) fail(ErrorCode::NumericalFailure, "constructed table has no mass");
  for (double& v : values) v /= total;
  return DistTable(std::move(scope), std::move(values));
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

/// One LP row per edge-table entry plus a leading normalization row; one
/// column per deterministic assignment of all observables.
class AssignmentColumns final : public lp::ColumnSource {
 public:
  explicit AssignmentColumns(const MarginalScenario& scenario)
      : observables_(scenario.observables()), count_(scenario.assignment_count()) {
    std::size_t offset = 1;
    for (const auto& e : scenario.edges()) {
      edges_.push_back({e.i, e.j, observables_[e.j].k, offset});
      offset += observables_[e.i].k * observables_[e.j].k;
    }
    rows_ = offset;
    digits_.resize(observables_.size());
  }

  std::size_t rows() const override { return rows_; }
  std::size_t columns() const override { return count_; }

  void column(std::size_t j, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    decode_outcome(j, observables_, digits_);
    out[0] = 1.0;
    for (const auto& e : edges_) out[e.offset + digits_[e.i] * e.kj + digits_[e.j]] = 1.0;
  }

  double dot(std::size_t j, std::span<const double> y) const override {
    decode_outcome(j, observables_, digits_);
    double s = y[0];
    for (const auto& e : edges_) s += y[e.offset + digits_[e.i] * e.kj + digits_[e.j]];
    return s;
  }

  std::size_t offset(std::size_t edge) const { return edges_[edge].offset; }

 private:
  struct EdgeRows {
    std::size_t i, j, kj, offset;
  };
  const std::vector<ObservableDecl>& observables_;
  std::size_t count_;
  std::size_t rows_ = 0;
  std::vector<EdgeRows> edges_;
  mutable std::vector<std::size_t> digits_;
};

/// Calls f(W(a)) for every deterministic assignment a.
template <class F>
void for_each_assignment_value(const BellWitness& witness, const MarginalScenario& scenario, F&& f) {
  const auto& obs = scenario.observables();
  const auto& edges = scenario.edges();
  const std::size_t n = scenario.assignment_count();
  std::vector<std::size_t> digits(obs.size(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    double w = 0.0;
    for (const auto& term : witness.terms) {
      const auto& e = edges.at(term.edge);
      w += term.coefficients[digits[e.i] * obs[e.j].k + digits[e.j]];
    }
    f(w);
    for (std::size_t ax = obs.size(); ax-- > 0;) {
      if (++digits[ax] < obs[ax].k) break;
      digits[ax] = 0;
    }
  }
}

}  // namespace

MarginalScenario::MarginalScenario(std::vector<ObservableDecl> observables, std::vector<EdgeSpec> edges)
    : observables_(std::move(observables)) {
  validate_observables(observables_);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& spec : edges) {
    const std::size_t i = index_of(spec.i);
    const std::size_t j = index_of(spec.j);
    if (i == j) fail(ErrorCode::InvalidArgument, "self-loop on observable '" + spec.i + "'");
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
      fail(ErrorCode::InvalidArgument, "duplicate edge " + spec.i + "-" + spec.j);
    }
    const auto& ts = spec.table.scope();
    if (ts.size() != 2 || !spec.table.contains(spec.i) || !spec.table.contains(spec.j)) {
      fail(ErrorCode::InvalidArgument, "edge " + spec.i + "-" + spec.j + " table scope does not match its endpoints");
    }
    const std::vector<std::string> order{spec.i, spec.j};
    DistTable table = project(spec.table, order);
    if (table.scope()[0] != observables_[i] || table.scope()[1] != observables_[j]) {
      fail(ErrorCode::DimensionMismatch, "edge " + spec.i + "-" + spec.j + " alphabet sizes disagree with declarations");
    }
    edges_.push_back({i, j, std::move(table)});
  }

  // Every pair of edges meeting at a vertex must agree on its marginal.
  std::vector<const ScenarioEdge*> first(observables_.size(), nullptr);
  for (const auto& e : edges_) {
    for (std::size_t v : {e.i, e.j}) {
      if (first[v] == nullptr) {
        first[v] = &e;
        continue;
      }
      if (!compatible(first[v]->table, e.table, kIngestTolerance)) {
        fail(ErrorCode::Incompatible, "pair distributions disagree on the marginal of '" + observables_[v].id + "'");
      }
    }
  }
}

std::size_t MarginalScenario::index_of(const std::string& id) const {
  for (std::size_t v = 0; v < observables_.size(); ++v) {
    if (observables_[v].id == id) return v;
  }
  fail(ErrorCode::UnknownObservable, "unknown observable '" + id + "'");
}

std::vector<std::size_t> MarginalScenario::degrees() const {
  std::vector<std::size_t> deg(observables_.size(), 0);
  for (const auto& e : edges_) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

DistTable MarginalScenario::vertex_marginal(std::size_t v) const {
  const auto& obs = observables_.at(v);
  for (const auto& e : edges_) {
    if (e.i == v || e.j == v) {
      const std::vector<std::string> keep{obs.id};
      return marginalize(e.table, keep);
    }
  }
  return DistTable::uniform({obs});
}

std::size_t MarginalScenario::assignment_count() const { return scope_volume(observables_); }

MarginalScenario scenario_from_joint(const DistTable& joint,
                                     std::span<const std::pair<std::string, std::string>> pairs) {
  std::vector<EdgeSpec> edges;
  for (const auto& [a, b] : pairs) {
    const std::vector<std::string> ids{a, b};
    edges.push_back({a, b, project(joint, ids)});
  }
  return MarginalScenario(joint.scope(), std::move(edges));
}

DistTable tree_extend(const MarginalScenario& scenario) {
  const auto& obs = scenario.observables();
  const auto& edges = scenario.edges();

  std::vector<std::size_t> parent(obs.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& e : edges) {
    const std::size_t ri = find_root(parent, e.i);
    const std::size_t rj = find_root(parent, e.j);
    if (ri == rj) {
      fail(ErrorCode::CycleDetected,
           "edge " + obs[e.i].id + "-" + obs[e.j].id + " closes a loop; the closed-form extension needs a forest");
    }
    parent[ri] = rj;
  }

  const std::size_t volume = scope_volume(obs);
  const auto degree = scenario.degrees();

  // Vertex factors P_j^(1 - e_j), zeroed on null outcomes.
  std::vector<std::vector<double>> vertex_factor(obs.size());
  std::vector<Scope> vertex_scopes(obs.size());
  for (std::size_t v = 0; v < obs.size(); ++v) {
    const DistTable m = scenario.vertex_marginal(v);
    vertex_scopes[v] = m.scope();
    const double exponent = 1.0 - static_cast<double>(degree[v]);
    for (double p : m.values()) vertex_factor[v].push_back(p > 0.0 ? std::pow(p, exponent) : 0.0);
  }

  std::vector<const Scope*> table_scopes;
  for (const auto& e : edges) table_scopes.push_back(&e.table.scope());
  for (const auto& s : vertex_scopes) table_scopes.push_back(&s);
  MultiIndexWalker walker(obs, table_scopes);

  std::vector<double> values(volume, 0.0);
  for (std::size_t flat = 0; flat < volume; ++flat, walker.advance()) {
    double p = 1.0;
    for (std::size_t e = 0; e < edges.size() && p != 0.0; ++e) p *= edges[e].table.values()[walker.table_index(e)];
    for (std::size_t v = 0; v < obs.size() && p != 0.0; ++v) p *= vertex_factor[v][walker.table_index(edges.size() + v)];
    values[flat] = p;
  }
  return normalized(obs, std::move(values));
}

DistTable extend_over_shared(std::span<const DistTable> tables) {
  if (tables.empty()) fail(ErrorCode::InvalidArgument, "extend_over_shared needs at least one table");
  if (tables.size() == 1) return tables.front();

  std::vector<std::string> shared;
  for (const auto& o : tables.front().scope()) {
    if (std::all_of(tables.begin(), tables.end(), [&](const DistTable& t) { return t.contains(o.id); })) {
      shared.push_back(o.id);
    }
  }

  Scope scope = tables.front().scope();
  for (std::size_t t = 1; t < tables.size(); ++t) {
    for (const auto& o : tables[t].scope()) {
      if (std::find(shared.begin(), shared.end(), o.id) != shared.end()) continue;
      if (std::any_of(scope.begin(), scope.end(), [&](const ObservableDecl& s) { return s.id == o.id; })) {
        fail(ErrorCode::InvalidArgument, "observable '" + o.id + "' is shared by some but not all tables");
      }
      scope.push_back(o);
    }
  }
  const std::size_t volume = scope_volume(scope);

  std::vector<const Scope*> table_scopes;
  for (const auto& t : tables) table_scopes.push_back(&t.scope());
  std::optional<DistTable> hub;
  std::vector<double> hub_factor{1.0};
  if (!shared.empty()) {
    hub = project(tables.front(), shared);
    for (std::size_t t = 1; t < tables.size(); ++t) {
      if (max_abs_difference(*hub, project(tables[t], shared)) > kIngestTolerance) {
        fail(ErrorCode::Incompatible, "tables disagree on their shared marginal");
      }
    }
    hub_factor.clear();
    const double exponent = 1.0 - static_cast<double>(tables.size());
    for (double p : hub->values()) hub_factor.push_back(p > 0.0 ? std::pow(p, exponent) : 0.0);
    table_scopes.push_back(&hub->scope());
  }
  MultiIndexWalker walker(scope, table_scopes);

  std::vector<double> values(volume, 0.0);
  for (std::size_t flat = 0; flat < volume; ++flat, walker.advance()) {
    double p = 1.0;
    for (std::size_t t = 0; t < tables.size() && p != 0.0; ++t) p *= tables[t].values()[walker.table_index(t)];
    if (hub) p *= hub_factor[walker.table_index(tables.size())];
    values[flat] = p;
  }
  return normalized(std::move(scope), std::move(values));
}

JointWitness joint_feasible(const MarginalScenario& scenario, const lp::Options& options) {
  const std::size_t count = scenario.assignment_count();
  if (count > kMaxAssignments) fail(ErrorCode::CapExceeded, "scenario has too many deterministic assignments");

  const AssignmentColumns columns(scenario);
  std::vector<double> rhs(columns.rows(), 0.0);
  rhs[0] = 1.0;
  for (std::size_t e = 0; e < scenario.edges().size(); ++e) {
    const auto values = scenario.edges()[e].table.values();
    std::copy(values.begin(), values.end(), rhs.begin() + static_cast<std::ptrdiff_t>(columns.offset(e)));
  }

  const lp::PhaseOneResult result = lp::phase_one(columns, rhs, options);
  if (result.feasible) {
    std::vector<double> values(count, 0.0);
    for (const auto& [column, weight] : result.support) values[column] = weight;
    return FeasibleJoint{normalized(scenario.observables(), std::move(values))};
  }

  BellWitness witness;
  for (std::size_t e = 0; e < scenario.edges().size(); ++e) {
    const auto& edge = scenario.edges()[e];
    const std::size_t size = edge.table.size();
    const auto first = result.dual.begin() + static_cast<std::ptrdiff_t>(columns.offset(e));
    witness.terms.push_back({e, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(size))});
  }

  // Shift edge 0 so the deterministic minimum is 0, then scale so the
  // deterministic maximum (the bound) is 1. Every assignment picks exactly
  // one entry of each edge, so the shift moves W uniformly.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for_each_assignment_value(witness, scenario, [&](double w) {
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  });
  if (!witness.terms.empty()) {
    const double span = hi - lo;
    const double scale = span > 0.0 ? 1.0 / span : 1.0;
    for (auto& c : witness.terms.front().coefficients) c -= lo;
    for (auto& term : witness.terms) {
      for (auto& c : term.coefficients) c *= scale;
    }
  }
  witness.bound = deterministic_maximum(witness, scenario);
  witness.value = evaluate_witness(witness, scenario);
  return witness;
}

double evaluate_witness(const BellWitness& witness, const MarginalScenario& scenario) {
  double value = 0.0;
  for (const auto& term : witness.terms) {
    const auto table = scenario.edges().at(term.edge).table.values();
    if (table.size() != term.coefficients.size()) fail(ErrorCode::DimensionMismatch, "witness term size mismatch");
    for (std::size_t x = 0; x < table.size(); ++x) value += term.coefficients[x] * table[x];
  }
  return value;
}

double deterministic_maximum(const BellWitness& witness, const MarginalScenario& scenario) {
  for (const auto& term : witness.terms) {
    if (scenario.edges().at(term.edge).table.size() != term.coefficients.size()) {
      fail(ErrorCode::DimensionMismatch, "witness term size mismatch");
    }
  }
  double hi = -std::numeric_limits<double>::infinity();
  for_each_assignment_value(witness, scenario, [&](double w) { hi = std::max(hi, w); });
  return hi;
}

LhvModel::LhvModel(std::vector<HiddenState> states) : states_(std::move(states)) {
  if (states_.empty()) fail(ErrorCode::InvalidArgument, "LHV model needs at least one hidden state");
  double total = 0.0;
  for (auto& s : states_) {
    if (s.weight < -kIdentityTolerance || !std::isfinite(s.weight)) fail(ErrorCode::InvalidArgument, "negative hidden-state weight");
    s.weight = std::max(0.0, s.weight);
    total += s.weight;
    for (auto& [id, row] : s.responses) {
      if (row.empty()) fail(ErrorCode::InvalidArgument, "empty response row for '" + id + "'");
      double mass = 0.0;
      for (double& r : row) {
        if (r < -kIdentityTolerance || !std::isfinite(r)) fail(ErrorCode::InvalidArgument, "negative response for '" + id + "'");
        r = std::max(0.0, r);
        mass += r;
      }
      if (std::abs(mass - 1.0) > kIngestTolerance) fail(ErrorCode::NotNormalized, "response row for '" + id + "' does not sum to 1");
    }
  }
  if (std::abs(total - 1.0) > kIngestTolerance) fail(ErrorCode::NotNormalized, "hidden-state weights do not sum to 1");
}

LhvModel lhv_from_joint(const DistTable& joint, const Partition& partition) {
  std::unordered_set<std::string> covered;
  for (const auto* part : {&partition.left, &partition.right}) {
    for (const auto& id : *part) {
      joint.position(id);
      if (!covered.insert(id).second) fail(ErrorCode::InvalidArgument, "partition parts overlap on '" + id + "'");
    }
  }
  if (covered.size() != joint.rank()) fail(ErrorCode::InvalidArgument, "partition does not cover the joint's scope");

  const auto& scope = joint.scope();
  std::vector<std::size_t> outcome(scope.size());
  std::vector<HiddenState> states;
  for (std::size_t flat = 0; flat < joint.size(); ++flat) {
    const double p = joint.values()[flat];
    if (p <= 0.0) continue;
    decode_outcome(flat, scope, outcome);
    HiddenState s;
    s.weight = p;
    for (std::size_t a = 0; a < scope.size(); ++a) {
      std::vector<double> row(scope[a].k, 0.0);
      row[outcome[a]] = 1.0;
      s.responses.emplace(scope[a].id, std::move(row));
    }
    states.push_back(std::move(s));
  }
  return LhvModel(std::move(states));
}

DistTable joint_from_lhv(const LhvModel& model, std::span<const std::string> scope_ids) {
  Scope scope;
  for (const auto& id : scope_ids) {
    const auto& first = model.states().front().responses;
    const auto it = first.find(id);
    if (it == first.end()) fail(ErrorCode::MissingResponse, "no response row for '" + id + "'");
    scope.push_back({id, it->second.size()});
  }
  const std::size_t volume = scope_volume(scope);

  std::vector<double> joint(volume, 0.0);
  std::vector<double> term;
  for (const auto& s : model.states()) {
    term.assign(1, s.weight);
    for (const auto& obs : scope) {
      const auto it = s.responses.find(obs.id);
      if (it == s.responses.end()) fail(ErrorCode::MissingResponse, "no response row for '" + obs.id + "'");
      if (it->second.size() != obs.k) fail(ErrorCode::DimensionMismatch, "response rows for '" + obs.id + "' differ in length");
      std::vector<double> next;
      next.reserve(term.size() * obs.k);
      for (double prefix : term) {
        for (double r : it->second) next.push_back(prefix * r);
      }
      term = std::move(next);
    }
    for (std::size_t x = 0; x < volume; ++x) joint[x] += term[x];
  }
  return DistTable(std::move(scope), std::move(joint));
}

}  // namespace monogamy
