#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "monogamy/probability.hpp"
#include "monogamy/simplex.hpp"

namespace monogamy {

/// Pair distribution attached to the edge (i, j) of a scenario; `table`'s
/// scope is always {observables[i], observables[j]} in that order.
struct ScenarioEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  DistTable table;
};

/// Edge as supplied by a caller, keyed by observable id.
struct EdgeSpec {
  std::string i;
  std::string j;
  DistTable table;
};

/// Graph of observables with fixed pair distributions on its edges.
///
/// Construction enforces a simple undirected graph, matching edge scopes and
/// pairwise compatibility (within 1e-9) of every overlapping single marginal.
class MarginalScenario {
 public:
  MarginalScenario(std::vector<ObservableDecl> observables, std::vector<EdgeSpec> edges);

  const std::vector<ObservableDecl>& observables() const noexcept { return observables_; }
  const std::vector<ScenarioEdge>& edges() const noexcept { return edges_; }
  std::size_t index_of(const std::string& id) const;
  std::vector<std::size_t> degrees() const;
  /// Single marginal of vertex v, taken from its first incident edge;
  /// uniform for isolated vertices.
  DistTable vertex_marginal(std::size_t v) const;
  /// Number of deterministic global assignments.
  std::size_t assignment_count() const;

 private:
  std::vector<ObservableDecl> observables_;
  std::vector<ScenarioEdge> edges_;
};

/// A scenario over `scope` built from an LHV model or joint: every pair of
/// observables listed in `pairs` becomes an edge with the joint's marginal.
MarginalScenario scenario_from_joint(const DistTable& joint,
                                     std::span<const std::pair<std::string, std::string>> pairs);

/// Closed-form extension over an acyclic scenario (a forest):
///   P = prod_edges P_kl * prod_vertices P_j^(1 - e_j),
/// with every term touching a null vertex outcome set to zero.
/// Throws CycleDetected on loops.
DistTable tree_extend(const MarginalScenario& scenario);

/// Glue tables that share one common sub-scope and are otherwise disjoint:
///   P = prod_i P_i / P_shared^(n-1).
/// This is the tree construction with the shared sub-scope acting as the hub
/// vertex of a star. Throws Incompatible when the shared marginals disagree.
DistTable extend_over_shared(std::span<const DistTable> tables);

/// Coefficients of one edge in a Bell-type functional; row-major over
/// (outcome of observables[i], outcome of observables[j]).
struct WitnessTerm {
  std::size_t edge = 0;
  std::vector<double> coefficients;
};

struct FeasibleJoint {
  DistTable joint;
};

/// Linear functional W(P) = sum_edges sum_outcomes c_e(x) P_e(x) separating
/// the edge data from the local polytope. Normalized so that over
/// deterministic assignments W ranges over [0, bound] with bound = 1, while
/// `value` (W on the scenario) exceeds `bound`.
struct BellWitness {
  std::vector<WitnessTerm> terms;
  double bound = 1.0;
  double value = 0.0;
};

using JointWitness = std::variant<FeasibleJoint, BellWitness>;

inline bool is_feasible(const JointWitness& w) { return std::holds_alternative<FeasibleJoint>(w); }

/// Largest number of deterministic assignments joint_feasible accepts.
inline constexpr std::size_t kMaxAssignments = kMaxTableEntries;

/// Decide whether a joint distribution reproduces all edge tables by solving
/// the phase-one LP over mixtures of deterministic assignments.
JointWitness joint_feasible(const MarginalScenario& scenario, const lp::Options& options = {});

/// W evaluated on the scenario's edge tables.
double evaluate_witness(const BellWitness& witness, const MarginalScenario& scenario);
/// Maximum of W over all deterministic assignments, by exhaustive enumeration.
double deterministic_maximum(const BellWitness& witness, const MarginalScenario& scenario);

/// One hidden state: its weight and a response row per observable.
struct HiddenState {
  double weight = 0.0;
  std::map<std::string, std::vector<double>> responses;
};

/// Finite local-hidden-variable model. Weights and every response row are
/// validated as probability vectors (within 1e-9).
class LhvModel {
 public:
  explicit LhvModel(std::vector<HiddenState> states);
  const std::vector<HiddenState>& states() const noexcept { return states_; }
  std::size_t size() const noexcept { return states_.size(); }

 private:
  std::vector<HiddenState> states_;
};

struct Partition {
  std::vector<std::string> left;
  std::vector<std::string> right;
};

/// Deterministic LHV model with one hidden state per support point of
/// `joint`. The partition must cover joint's scope with disjoint parts.
LhvModel lhv_from_joint(const DistTable& joint, const Partition& partition);

/// P(a) = sum_lambda w(lambda) prod_i chi_i(a_i | lambda) over `scope`.
DistTable joint_from_lhv(const LhvModel& model, std::span<const std::string> scope);

}  // namespace monogamy
