#include "monogamy/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "monogamy/error.hpp"

namespace monogamy::quantum {

namespace {

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t product_of(std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "zero local dimension");
    if (total > kMaxDimension / d) fail(ErrorCode::CapExceeded, "Hilbert-space dimension exceeds 2^14");
    total *= d;
  }
  return total;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double min_eigenvalue(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// tr_0[(E (x) 1) M] for M on (d0, rest).
CMatrix contract_first(const CMatrix& m, const CMatrix& effect) {
  const Eigen::Index d0 = effect.rows();
  const Eigen::Index rest = m.rows() / d0;
  CMatrix out = CMatrix::Zero(rest, rest);
  for (Eigen::Index i = 0; i < d0; ++i) {
    for (Eigen::Index j = 0; j < d0; ++j) {
      const std::complex<double> e = effect(j, i);
      if (e == 0.0) continue;
      out.noalias() += e * m.block(i * rest, j * rest, rest, rest);
    }
  }
  return out;
}

void born_recurse(const CMatrix& m, std::span<const Povm> povms, std::vector<double>& out) {
  if (povms.empty()) {
    out.push_back(m(0, 0).real());
    return;
  }
  for (const auto& effect : povms.front().effects()) born_recurse(contract_first(m, effect), povms.subspan(1), out);
}

std::vector<std::size_t> basis_permutation(std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> out_dims(n);
  for (std::size_t f = 0; f < n; ++f) out_dims[perm[f]] = dims[f];
  std::vector<std::size_t> out_stride(n, 1);
  for (std::size_t f = n; f-- > 1;) out_stride[f - 1] = out_stride[f] * out_dims[f];

  const std::size_t total = product_of(dims);
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t a = 0; a < total; ++a) {
    std::size_t target = 0;
    for (std::size_t f = 0; f < n; ++f) target += digits[f] * out_stride[perm[f]];
    map[a] = target;
    for (std::size_t f = n; f-- > 0;) {
      if (++digits[f] < dims[f]) break;
      digits[f] = 0;
    }
  }
  return map;
}

void check_permutation(std::span<const std::size_t> perm, std::size_t factors) {
  if (perm.size() != factors) fail(ErrorCode::DimensionMismatch, "permutation length differs from the factor count");
  std::vector<bool> hit(factors, false);
  for (std::size_t p : perm) {
    if (p >= factors || hit[p]) fail(ErrorCode::InvalidArgument, "not a permutation of the tensor factors");
    hit[p] = true;
  }
}

}  // namespace

DensityOp::DensityOp(std::vector<std::size_t> dims, CMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (dims_.empty()) fail(ErrorCode::InvalidArgument, "density operator needs at least one factor");
  const std::size_t total = product_of(dims_);
  if (static_cast<std::size_t>(matrix_.rows()) != total || static_cast<std::size_t>(matrix_.cols()) != total) {
    fail(ErrorCode::DimensionMismatch, "matrix side differs from the product of local dimensions");
  }
  if (max_abs(matrix_ - matrix_.adjoint()) > kStateTolerance) fail(ErrorCode::InvalidState, "density operator is not Hermitian");
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  if (std::abs(matrix_.trace() - std::complex<double>(1.0)) > kStateTolerance) {
    fail(ErrorCode::InvalidState, "density operator trace differs from 1");
  }
  if (min_eigenvalue(matrix_) < -kStateTolerance) fail(ErrorCode::InvalidState, "density operator is not positive semidefinite");
}

DensityOp DensityOp::pure(std::vector<std::size_t> dims, const CVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) fail(ErrorCode::InvalidState, "zero state vector");
  const CVector unit = psi / norm;
  return DensityOp(std::move(dims), unit * unit.adjoint());
}

DensityOp DensityOp::maximally_mixed(std::vector<std::size_t> dims) {
  const std::size_t total = product_of(dims);
  return DensityOp(std::move(dims), CMatrix::Identity(ix(total), ix(total)) / static_cast<double>(total));
}

Povm::Povm(std::vector<CMatrix> effects, std::vector<std::string> labels)
    : effects_(std::move(effects)), labels_(std::move(labels)) {
  if (effects_.empty()) fail(ErrorCode::InvalidArgument, "POVM needs at least one effect");
  const Eigen::Index d = effects_.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (auto& e : effects_) {
    if (e.rows() != d || e.cols() != d) fail(ErrorCode::DimensionMismatch, "POVM effects differ in size");
    if (max_abs(e - e.adjoint()) > kStateTolerance) fail(ErrorCode::InvalidState, "POVM effect is not Hermitian");
    e = (0.5 * (e + e.adjoint())).eval();
    if (min_eigenvalue(e) < -kStateTolerance) fail(ErrorCode::InvalidState, "POVM effect is not positive semidefinite");
    sum += e;
  }
  if (max_abs(sum - CMatrix::Identity(d, d)) > kStateTolerance) fail(ErrorCode::InvalidState, "POVM effects do not sum to the identity");
  if (labels_.empty()) {
    for (std::size_t i = 0; i < effects_.size(); ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != effects_.size()) fail(ErrorCode::DimensionMismatch, "POVM label count differs from effect count");
}

Povm Povm::qubit_axis(double theta, double phi) {
  using C = std::complex<double>;
  CMatrix n(2, 2);
  n << C(std::cos(theta)), std::sin(theta) * std::polar(1.0, -phi), std::sin(theta) * std::polar(1.0, phi), C(-std::cos(theta));
  const CMatrix id = CMatrix::Identity(2, 2);
  return Povm({0.5 * (id + n), 0.5 * (id - n)}, {"+1", "-1"});
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

DensityOp tensor(const DensityOp& a, const DensityOp& b) {
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOp(std::move(dims), kron(a.matrix(), b.matrix()));
}

DensityOp partial_trace(const DensityOp& rho, std::span<const std::size_t> keep) {
  const auto& dims = rho.dims();
  const std::size_t n = dims.size();
  if (keep.empty()) fail(ErrorCode::InvalidArgument, "partial trace must keep at least one factor");
  std::vector<bool> kept(n, false);
  for (std::size_t f : keep) {
    if (f >= n) fail(ErrorCode::InvalidArgument, "factor index " + std::to_string(f) + " out of range");
    if (kept[f]) fail(ErrorCode::InvalidArgument, "factor index repeated in keep list");
    kept[f] = true;
  }
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t f = n; f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  // Input offsets contributed by kept (in keep order) and traced factors.
  auto offsets = [&](const std::vector<std::size_t>& factors) {
    std::vector<std::size_t> out{0};
    for (std::size_t f : factors) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * dims[f]);
      for (std::size_t base : out) {
        for (std::size_t d = 0; d < dims[f]; ++d) next.push_back(base + d * stride[f]);
      }
      out = std::move(next);
    }
    return out;
  };
  std::vector<std::size_t> keep_list(keep.begin(), keep.end());
  std::vector<std::size_t> trace_list;
  for (std::size_t f = 0; f < n; ++f) {
    if (!kept[f]) trace_list.push_back(f);
  }
  const auto keep_off = offsets(keep_list);
  const auto trace_off = offsets(trace_list);

  const CMatrix& m = rho.matrix();
  CMatrix out = CMatrix::Zero(ix(keep_off.size()), ix(keep_off.size()));
  for (std::size_t r = 0; r < keep_off.size(); ++r) {
    for (std::size_t c = 0; c < keep_off.size(); ++c) {
      std::complex<double> s = 0.0;
      for (std::size_t t : trace_off) s += m(ix(keep_off[r] + t), ix(keep_off[c] + t));
      out(ix(r), ix(c)) = s;
    }
  }
  std::vector<std::size_t> out_dims;
  for (std::size_t f : keep_list) out_dims.push_back(dims[f]);
  return DensityOp(std::move(out_dims), std::move(out));
}

DistTable born_table(const DensityOp& rho, std::span<const Povm> povms, std::span<const std::string> ids) {
  if (povms.size() != rho.factors() || ids.size() != rho.factors()) {
    fail(ErrorCode::DimensionMismatch, "need exactly one POVM and one id per tensor factor");
  }
  Scope scope;
  for (std::size_t f = 0; f < povms.size(); ++f) {
    if (povms[f].dimension() != rho.dims()[f]) fail(ErrorCode::DimensionMismatch, "POVM dimension differs from its factor");
    scope.push_back({ids[f], povms[f].outcomes()});
  }
  scope_volume(scope);
  std::vector<double> values;
  born_recurse(rho.matrix(), povms, values);
  // Effects are PSD only up to kStateTolerance.
  for (double& v : values) {
    if (v < 0.0 && v > -1e-9) v = 0.0;
  }
  return DistTable(std::move(scope), std::move(values));
}

std::vector<DistTable> born_pairs(const DensityOp& rho_ab, std::span<const Povm> a_povms, std::span<const Povm> b_povms) {
  if (rho_ab.factors() != 2) fail(ErrorCode::DimensionMismatch, "born_pairs expects a bipartite state");
  std::vector<DistTable> out;
  for (std::size_t i = 0; i < a_povms.size(); ++i) {
    for (std::size_t j = 0; j < b_povms.size(); ++j) {
      const Povm pair[] = {a_povms[i], b_povms[j]};
      const std::string ids[] = {"A" + std::to_string(i + 1), "B" + std::to_string(j + 1)};
      out.push_back(born_table(rho_ab, pair, ids));
    }
  }
  return out;
}

std::vector<FactorPermutation> generate_group(std::span<const FactorPermutation> generators, std::size_t factors) {
  for (const auto& g : generators) check_permutation(g, factors);
  FactorPermutation identity(factors);
  std::iota(identity.begin(), identity.end(), std::size_t{0});

  std::set<FactorPermutation> seen{identity};
  std::vector<FactorPermutation> order{identity};
  std::deque<FactorPermutation> frontier{identity};
  while (!frontier.empty()) {
    const FactorPermutation g = frontier.front();
    frontier.pop_front();
    for (const auto& s : generators) {
      FactorPermutation h(factors);
      for (std::size_t i = 0; i < factors; ++i) h[i] = s[g[i]];
      if (seen.insert(h).second) {
        if (seen.size() > kMaxGroupOrder) fail(ErrorCode::GroupTooLarge, "permutation group exceeds 10^6 elements");
        order.push_back(h);
        frontier.push_back(std::move(h));
      }
    }
  }
  return order;
}

CMatrix permute_factors(const CMatrix& m, std::span<const std::size_t> dims, std::span<const std::size_t> perm) {
  check_permutation(perm, dims.size());
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (dims[f] != dims[perm[f]]) fail(ErrorCode::DimensionMismatch, "permutation exchanges factors of different dimension");
  }
  const auto map = basis_permutation(dims, perm);
  CMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < map.size(); ++a) {
    for (std::size_t b = 0; b < map.size(); ++b) out(ix(map[a]), ix(map[b])) = m(ix(a), ix(b));
  }
  return out;
}

DensityOp twirl(const DensityOp& rho, std::span<const FactorPermutation> generators) {
  const auto group = generate_group(generators, rho.factors());
  CMatrix sum = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& g : group) sum += permute_factors(rho.matrix(), rho.dims(), g);
  return DensityOp(rho.dims(), sum / static_cast<double>(group.size()));
}

double symmetry_residual(const DensityOp& rho, std::span<const FactorPermutation> perms) {
  double worst = 0.0;
  for (const auto& p : perms) worst = std::max(worst, max_abs(permute_factors(rho.matrix(), rho.dims(), p) - rho.matrix()));
  return worst;
}

std::vector<DistTable> star_extension_joint(const DensityOp& rho, std::span<const Povm> f_povms, std::span<const Povm> g_povms) {
  const std::size_t m = g_povms.size();
  if (m == 0) fail(ErrorCode::InvalidArgument, "star extension needs at least one B site");
  if (rho.factors() != m + 1) fail(ErrorCode::DimensionMismatch, "state must live on A (x) B^(x)m with one POVM per B copy");
  for (std::size_t j = 2; j <= m; ++j) {
    if (rho.dims()[j] != rho.dims()[1]) fail(ErrorCode::DimensionMismatch, "B copies differ in dimension");
  }

  const std::size_t first_pair[] = {0, 1};
  const DensityOp reference = partial_trace(rho, first_pair);
  for (std::size_t j = 2; j <= m; ++j) {
    const std::size_t pair[] = {0, j};
    if (max_abs(partial_trace(rho, pair).matrix() - reference.matrix()) > kSymmetryTolerance) {
      fail(ErrorCode::AsymmetricState, "reduced state on A-B" + std::to_string(j) + " differs from A-B1");
    }
  }

  std::vector<std::string> ids{""};
  for (std::size_t j = 1; j <= m; ++j) ids.push_back("B" + std::to_string(j));
  std::vector<Povm> povms;
  povms.reserve(m + 1);
  povms.push_back(f_povms.empty() ? Povm::qubit_axis(0.0) : f_povms.front());
  povms.insert(povms.end(), g_povms.begin(), g_povms.end());

  std::vector<DistTable> out;
  for (std::size_t i = 0; i < f_povms.size(); ++i) {
    povms.front() = f_povms[i];
    ids.front() = "A" + std::to_string(i + 1);
    out.push_back(born_table(rho, povms, ids));
  }
  return out;
}

std::vector<FactorPermutation> layer_generators(std::size_t layers, std::size_t copies) {
  const std::size_t n = layers * copies + 1;
  std::vector<FactorPermutation> gens;
  if (copies < 2) return gens;
  for (std::size_t layer = 0; layer < layers; ++layer) {
    const std::size_t base = layer * copies;
    FactorPermutation swap(n), cycle(n);
    std::iota(swap.begin(), swap.end(), std::size_t{0});
    std::iota(cycle.begin(), cycle.end(), std::size_t{0});
    std::swap(swap[base], swap[base + 1]);
    for (std::size_t k = 0; k < copies; ++k) cycle[base + k] = base + (k + 1) % copies;
    gens.push_back(std::move(swap));
    if (copies > 2) gens.push_back(std::move(cycle));
  }
  return gens;
}

DistTable layered_extension_joint(const DensityOp& rho, std::size_t layers, std::size_t copies,
                                  const std::vector<std::vector<Povm>>& layer_povms, const Povm& single_povm) {
  if (layers == 0 || copies == 0) fail(ErrorCode::InvalidArgument, "need at least one layer with one copy");
  if (rho.factors() != layers * copies + 1) fail(ErrorCode::DimensionMismatch, "state factor count differs from layers*copies+1");
  if (layer_povms.size() != layers) fail(ErrorCode::DimensionMismatch, "need one POVM list per layer");
  for (const auto& row : layer_povms) {
    if (row.size() != copies) fail(ErrorCode::DimensionMismatch, "need one POVM per copy within each layer");
  }
  const auto gens = layer_generators(layers, copies);
  if (symmetry_residual(rho, gens) > kSymmetryTolerance) {
    fail(ErrorCode::AsymmetricState, "state is not permutation symmetric within its layers");
  }

  std::vector<Povm> povms;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < layers; ++i) {
    for (std::size_t k = 0; k < copies; ++k) {
      povms.push_back(layer_povms[i][k]);
      ids.push_back("L" + std::to_string(i + 1) + "." + std::to_string(k + 1));
    }
  }
  povms.push_back(single_povm);
  ids.push_back("S");
  return born_table(rho, povms, ids);
}

CVector singlet_vector() {
  CVector psi = CVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return psi;
}

}  // namespace monogamy::quantum
