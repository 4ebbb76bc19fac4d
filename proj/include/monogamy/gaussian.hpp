#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monogamy/graphs.hpp"

namespace monogamy::gaussian {

/// Eigenvalues at or below kKernelEpsilon * max(1, spectral scale) count as
/// exact zeros.
inline constexpr double kKernelEpsilon = 1e-10;
/// Largest test-vector overlap with a kernel direction still treated as zero.
inline constexpr double kOverlapTolerance = 1e-9;
/// Largest mode count handled by dense eigendecomposition.
inline constexpr std::size_t kMaxDenseModes = 4096;

/// H = 1/2 (Q^T h_q Q + P^T h_p P) for sum_edges (Q_k + Q_l)^2 + (P_k - P_l)^2.
struct HamiltonianPair {
  Eigen::MatrixXd h_q;  // D + A
  Eigen::MatrixXd h_p;  // D - A
};

HamiltonianPair hamiltonian_pair(const graphs::Graph& g);

/// Trace norm of sqrt(h_q h_p), as sum of sqrt(mu) over the spectrum of
/// sqrt(h_q) h_p sqrt(h_q).
double ground_energy(const HamiltonianPair& pair);
/// Independent route: sum of the singular values of sqrt(h_p) sqrt(h_q), i.e.
/// the symplectic eigenvalues of h_q (+) h_p.
double symplectic_energy(const HamiltonianPair& pair);

/// Ground-state covariance blocks (vacuum = identity). Directions in
/// kernel_p = ker(h_p) are infinitely squeezed in Q and divergent in P;
/// kernel_q = ker(h_q) is the mirror case. gamma_q and gamma_p hold the
/// finite parts and vanish on their divergent kernels.
struct GroundStateCm {
  Eigen::MatrixXd gamma_q;
  Eigen::MatrixXd gamma_p;
  Eigen::MatrixXd kernel_p;  // orthonormal columns
  Eigen::MatrixXd kernel_q;
};

/// Uses the shared eigenbasis when h_q and h_p commute (regular graphs);
/// otherwise the matrix geometric mean through whichever block is positive
/// definite. Throws NoGroundState when both blocks are singular.
GroundStateCm ground_cm(const HamiltonianPair& pair);

enum class EprStatus {
  Finite,
  Divergent,  // delta = 0: infinitely entangled
  Null,       // delta = inf: no squeezing along either sign choice
};

/// Variances V(Q_a + s Q_b), V(P_a - s P_b) with V(v.R) = 1/2 v^T Gamma v,
/// s = +-1 chosen to minimize their product; delta = sqrt(vq vp).
struct EprPair {
  double vq = 0.0;
  double vp = 0.0;
  double delta = 0.0;
  int sign = 1;
  EprStatus status = EprStatus::Finite;
};

struct EprOptions {
  std::size_t edge = 0;           // index into g.edges()
  bool allow_asymmetric = false;  // accept graphs not flagged symmetric
  bool closed_forms = true;       // analytic paths for rings and complete graphs
};

EprPair epr_variances(const graphs::Graph& g, const EprOptions& options = {});

/// Entanglement of formation (ebits) of a symmetric two-mode Gaussian state
/// with EPR parameter delta; 0 for delta >= 1, +inf at delta = 0 is not
/// accepted (delta must be positive).
double eof_symmetric(double delta);

/// eof_symmetric(delta) with the Divergent/Null conventions applied.
double eof_of(const EprPair& pair);

double max_nn_eof(const graphs::Graph& g, const EprOptions& options = {});

struct RingLimit {
  double delta;
  double eof;
};
RingLimit ring_limit();

/// Circulant closed forms for ring(n), valid for any n >= 3.
double ring_delta(std::size_t n);
double ring_energy(std::size_t n);

struct ScanRow {
  std::size_t n = 0;  // mode count
  std::string tag;
  EprPair epr;
  double eof = 0.0;
  double e0_per_mode = 0.0;
};

enum class Family { Ring, Cluster, Hex, Tri, Platonic };

Family parse_family(const std::string& name);

/// Rows ordered by size. Ring and cluster ranges are mode counts; hex and tri
/// ranges are the torus side L (an L x L torus); platonic ignores the range.
std::vector<ScanRow> scan(Family family, std::size_t n_min, std::size_t n_max);

}  // namespace monogamy::gaussian
