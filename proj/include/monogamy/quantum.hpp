#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "monogamy/probability.hpp"

namespace monogamy::quantum {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Largest total Hilbert-space dimension handled densely.
inline constexpr std::size_t kMaxDimension = std::size_t{1} << 14;
/// Tolerance for Hermiticity, trace and positivity checks on states and POVMs.
inline constexpr double kStateTolerance = 1e-10;
/// Tolerance for symmetry assumptions (equal reductions, permutation invariance).
inline constexpr double kSymmetryTolerance = 1e-8;
/// Cap on the order of a permutation group enumerated by twirl.
inline constexpr std::size_t kMaxGroupOrder = 1'000'000;

/// Density operator on a tensor product of factors with the given local
/// dimensions. The first factor is the most significant index.
class DensityOp {
 public:
  DensityOp(std::vector<std::size_t> dims, CMatrix matrix);

  static DensityOp pure(std::vector<std::size_t> dims, const CVector& psi);
  static DensityOp maximally_mixed(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t factors() const noexcept { return dims_.size(); }

 private:
  std::vector<std::size_t> dims_;
  CMatrix matrix_;
};

/// Measurement with PSD effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<CMatrix> effects, std::vector<std::string> labels = {});

  /// Two-outcome projective qubit measurement along the Bloch direction
  /// (sin t cos p, sin t sin p, cos t); outcome 0 is the +1 eigenspace.
  static Povm qubit_axis(double theta, double phi = 0.0);

  const std::vector<CMatrix>& effects() const noexcept { return effects_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t outcomes() const noexcept { return effects_.size(); }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(effects_.front().rows()); }

 private:
  std::vector<CMatrix> effects_;
  std::vector<std::string> labels_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
DensityOp tensor(const DensityOp& a, const DensityOp& b);

/// Reduced state on the factors in `keep`, in the order given.
DensityOp partial_trace(const DensityOp& rho, std::span<const std::size_t> keep);

/// Born-rule table tr[rho (E_1 (x) ... (x) E_n)] with one POVM per factor;
/// `ids` names the observables (one per factor).
DistTable born_table(const DensityOp& rho, std::span<const Povm> povms, std::span<const std::string> ids);

/// Pair tables tr[rho_AB F_i(a) (x) G_j(b)] for all (i, j), ordered i-major.
/// Observables are named A1.., B1...
std::vector<DistTable> born_pairs(const DensityOp& rho_ab, std::span<const Povm> a_povms,
                                  std::span<const Povm> b_povms);

/// Factor permutation: input factor i moves to position perm[i].
using FactorPermutation = std::vector<std::size_t>;

/// Closure of the generators under composition (breadth-first), capped at
/// kMaxGroupOrder elements.
std::vector<FactorPermutation> generate_group(std::span<const FactorPermutation> generators, std::size_t factors);

/// U_perm M U_perm^dagger for a permutation of tensor factors.
CMatrix permute_factors(const CMatrix& m, std::span<const std::size_t> dims, std::span<const std::size_t> perm);

/// Group average (1/|G|) sum_g U_g rho U_g^dagger over the generated group.
DensityOp twirl(const DensityOp& rho, std::span<const FactorPermutation> generators);

/// max_g ||U_g rho U_g^dagger - rho||_max over the given permutations.
double symmetry_residual(const DensityOp& rho, std::span<const FactorPermutation> perms);

/// Joint tables over {A_i, B_1..B_m}, one per A-observable, for a state on
/// A (x) B^(x)m whose A-B_j reductions coincide (checked within 1e-8).
/// g_povms[j] acts on B_j.
std::vector<DistTable> star_extension_joint(const DensityOp& rho, std::span<const Povm> f_povms,
                                            std::span<const Povm> g_povms);

/// Joint table over m observables on each of (n-1) layers plus one on the
/// single last site. Factor order: layer 0 copies 0..m-1, layer 1, ...,
/// then the single site. layer_povms[i][k] is measured on copy k of layer i.
/// Observables are named L<i>.<k> (1-based) and S.
DistTable layered_extension_joint(const DensityOp& rho, std::size_t layers, std::size_t copies,
                                  const std::vector<std::vector<Povm>>& layer_povms, const Povm& single_povm);

/// Generators of the within-layer symmetric groups for the layered layout.
std::vector<FactorPermutation> layer_generators(std::size_t layers, std::size_t copies);

/// Two-qubit singlet (|01> - |10>)/sqrt(2).
CVector singlet_vector();

}  // namespace monogamy::quantum
