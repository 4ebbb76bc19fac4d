#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monogamy/graphs.hpp"
#include "monogamy/quantum.hpp"

namespace monogamy::spin {

using quantum::CMatrix;
using quantum::CVector;

/// Qubit count cap for ground states (sector-resolved diagonalization).
inline constexpr std::size_t kMaxQubits = 14;
/// Cap for the full dense matrix (assembled() and non-conserving couplings).
inline constexpr std::size_t kMaxDenseQubits = 12;
/// Default seed for randomized routines.
inline constexpr std::uint64_t kDefaultSeed = 20030415;

/// 1/4 [1 - sx sx - sy sy - sz sz], the projector onto (|01> - |10>)/sqrt(2).
CMatrix singlet_projector();

/// H = sum over edges (i, j) of `two_site` acting on qubits i (first) and j.
/// Qubit 0 is the most significant bit of the basis index.
class SpinHamiltonian {
 public:
  SpinHamiltonian(graphs::Graph graph, CMatrix two_site);

  const graphs::Graph& graph() const noexcept { return graph_; }
  const CMatrix& two_site() const noexcept { return two_site_; }
  std::size_t qubits() const noexcept { return graph_.n(); }
  /// two_site commutes with total S_z, so H is block diagonal by magnetization.
  bool conserves_magnetization() const noexcept { return conserving_; }
  /// Dense 2^n matrix; capped at kMaxDenseQubits.
  CMatrix assembled() const;

 private:
  graphs::Graph graph_;
  CMatrix two_site_;
  bool conserving_;
};

struct GroundState {
  double energy = 0.0;
  CVector state;
};

GroundState ground_energy(const SpinHamiltonian& h);

/// -e0/|E| for H = -sum_edges P_singlet; requires an edge-transitive graph.
double max_singlet_fraction(const graphs::Graph& g);

double concurrence_wootters(const quantum::DensityOp& rho);

struct VariationalResult {
  double concurrence = 0.0;  // max{0, -best}
  double best = 0.0;         // smallest Re tr[rho (X (x) X^dagger) F] found
  bool converged = false;    // at least one restart met the stopping rule
};

/// Minimizes Re tr[rho (X (x) X^dagger) F] over det X = 1, X = exp(M) with M
/// traceless (6 real parameters); F swaps the two qubits.
VariationalResult concurrence_variational(const quantum::DensityOp& rho, std::size_t restarts = 32,
                                          std::uint64_t seed = kDefaultSeed);

/// Binary entropy h((1 + sqrt(1 - c^2)) / 2) in ebits.
double eof_from_concurrence(double c);

struct ClusterRow {
  std::size_t n = 0;
  double concurrence = 0.0;
  double eof = 0.0;
};

/// Rows N = 2..n_max with c = 2/N.
std::vector<ClusterRow> qubit_cluster_curve(std::size_t n_max);

/// Largest pair concurrence found over permutation-symmetric N-qubit states:
/// pure superpositions of Dicke states and Dicke-diagonal mixtures.
double symmetric_max_concurrence(std::size_t n, std::uint64_t seed = kDefaultSeed, std::size_t restarts = 16);

struct InverseSquareFit {
  double f_inf = 0.0;
  double a = 0.0;
};

/// Least-squares fit of f(N) = f_inf + a / N^2.
InverseSquareFit fit_inverse_square(const std::vector<std::pair<std::size_t, double>>& points);

}  // namespace monogamy::spin
