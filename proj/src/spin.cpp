#include "monogamy/spin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include "monogamy/error.hpp"
#include "optimize.hpp"

namespace monogamy::spin {

namespace {

using C = std::complex<double>;

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

/// Total S_z (in units of 1/2) of the two-qubit basis state l = 2 b_i + b_j.
int pair_magnetization(Eigen::Index l) { return (l & 2 ? -1 : 1) + (l & 1 ? -1 : 1); }

bool commutes_with_sz(const CMatrix& t) {
  for (Eigen::Index r = 0; r < 4; ++r) {
    for (Eigen::Index c = 0; c < 4; ++c) {
      if (pair_magnetization(r) != pair_magnetization(c) && std::abs(t(r, c)) > 1e-12) return false;
    }
  }
  return true;
}

/// Adds sum_edges two_site to `h` over the basis `states`; `pos` maps a basis
/// state to its row (or -1 outside the block).
void accumulate(const SpinHamiltonian& h, const std::vector<std::uint32_t>& states, const std::vector<long>& pos,
                CMatrix& out) {
  const std::size_t n = h.qubits();
  const CMatrix& t = h.two_site();
  for (std::size_t c = 0; c < states.size(); ++c) {
    const std::uint32_t b = states[c];
    for (const auto& [i, j] : h.graph().edges()) {
      const unsigned si = static_cast<unsigned>(n - 1 - i), sj = static_cast<unsigned>(n - 1 - j);
      const Eigen::Index l = static_cast<Eigen::Index>(2 * ((b >> si) & 1u) + ((b >> sj) & 1u));
      const std::uint32_t cleared = b & ~((1u << si) | (1u << sj));
      for (Eigen::Index lp = 0; lp < 4; ++lp) {
        const C amp = t(lp, l);
        if (amp == 0.0) continue;
        const std::uint32_t target = cleared | ((static_cast<std::uint32_t>(lp) >> 1) << si) |
                                     ((static_cast<std::uint32_t>(lp) & 1u) << sj);
        const long r = pos[target];
        if (r < 0) fail(ErrorCode::NumericalFailure, "coupling leaves its magnetization sector");
        out(r, ix(c)) += amp;
      }
    }
  }
}

CMatrix pauli_y_pair() {
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  return yy;
}

CMatrix swap_operator() {
  CMatrix f = CMatrix::Zero(4, 4);
  f(0, 0) = 1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 3) = 1.0;
  return f;
}

/// exp(M) for traceless 2x2 M, using M^2 = (m00^2 + m01 m10) 1.
CMatrix expm_traceless(const CMatrix& m) {
  const C s = std::sqrt(m(0, 0) * m(0, 0) + m(0, 1) * m(1, 0));
  const C sinhc = std::abs(s) < 1e-8 ? C(1.0) + s * s / 6.0 : std::sinh(s) / s;
  return std::cosh(s) * CMatrix::Identity(2, 2) + sinhc * m;
}

CMatrix unit_x(const Eigen::VectorXd& p) {
  CMatrix m(2, 2);
  m(0, 0) = C(p(0), p(1));
  m(0, 1) = C(p(2), p(3));
  m(1, 0) = C(p(4), p(5));
  m(1, 1) = -m(0, 0);
  return expm_traceless(m);
}

/// Dicke state |D_k> on n qubits.
CVector dicke(std::size_t n, std::size_t k) {
  CVector v = CVector::Zero(ix(std::size_t{1} << n));
  double count = 0.0;
  for (std::uint32_t b = 0; b < (1u << n); ++b) {
    if (static_cast<std::size_t>(std::popcount(b)) == k) {
      v(b) = 1.0;
      count += 1.0;
    }
  }
  return v / std::sqrt(count);
}

/// Reduced state of qubits 0 and 1 of a pure n-qubit vector.
CMatrix first_pair(const CVector& psi) {
  const Eigen::Index rest = psi.size() / 4;
  // Row-major view: row = first two qubits, column = remainder.
  CMatrix m(4, rest);
  for (Eigen::Index r = 0; r < 4; ++r) m.row(r) = psi.segment(r * rest, rest).transpose();
  return m * m.adjoint();
}

double concurrence_of(const CMatrix& rho_ab) {
  CMatrix r = 0.5 * (rho_ab + rho_ab.adjoint());
  r /= r.trace().real();
  return concurrence_wootters(quantum::DensityOp({2, 2}, r));
}

}  // namespace

CMatrix singlet_projector() {
  const CVector psi = quantum::singlet_vector();
  return psi * psi.adjoint();
}

SpinHamiltonian::SpinHamiltonian(graphs::Graph graph, CMatrix two_site)
    : graph_(std::move(graph)), two_site_(std::move(two_site)) {
  if (graph_.n() > kMaxQubits) fail(ErrorCode::CapExceeded, "spin Hamiltonians are capped at 14 qubits");
  if (two_site_.rows() != 4 || two_site_.cols() != 4) fail(ErrorCode::DimensionMismatch, "two-site block must be 4x4");
  if ((two_site_ - two_site_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    fail(ErrorCode::InvalidArgument, "two-site block is not Hermitian");
  }
  two_site_ = (0.5 * (two_site_ + two_site_.adjoint())).eval();
  conserving_ = commutes_with_sz(two_site_);
}

CMatrix SpinHamiltonian::assembled() const {
  const std::size_t n = qubits();
  if (n > kMaxDenseQubits) fail(ErrorCode::CapExceeded, "dense assembly is capped at 12 qubits");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::uint32_t> states(dim);
  std::vector<long> pos(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    states[b] = static_cast<std::uint32_t>(b);
    pos[b] = static_cast<long>(b);
  }
  CMatrix out = CMatrix::Zero(ix(dim), ix(dim));
  accumulate(*this, states, pos, out);
  return out;
}

GroundState ground_energy(const SpinHamiltonian& h) {
  const std::size_t n = h.qubits();
  const std::size_t dim = std::size_t{1} << n;
  GroundState best;
  best.energy = std::numeric_limits<double>::infinity();

  if (!h.conserves_magnetization()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.assembled());
    best.energy = es.eigenvalues()(0);
    best.state = es.eigenvectors().col(0);
    return best;
  }

  std::vector<long> pos(dim, -1);
  for (std::size_t m = 0; m <= n; ++m) {
    std::vector<std::uint32_t> states;
    for (std::uint32_t b = 0; b < dim; ++b) {
      if (static_cast<std::size_t>(std::popcount(b)) == m) states.push_back(b);
    }
    for (std::size_t r = 0; r < states.size(); ++r) pos[states[r]] = static_cast<long>(r);
    CMatrix block = CMatrix::Zero(ix(states.size()), ix(states.size()));
    accumulate(h, states, pos, block);
    for (std::uint32_t b : states) pos[b] = -1;

    Eigen::SelfAdjointEigenSolver<CMatrix> es(block);
    if (es.eigenvalues()(0) < best.energy - 1e-12) {
      best.energy = es.eigenvalues()(0);
      best.state = CVector::Zero(ix(dim));
      for (std::size_t r = 0; r < states.size(); ++r) best.state(states[r]) = es.eigenvectors()(ix(r), 0);
    }
  }
  return best;
}

double max_singlet_fraction(const graphs::Graph& g) {
  if (!g.edge_transitive()) fail(ErrorCode::NonTransitive, "graph '" + g.tag() + "' is not flagged edge-transitive");
  if (g.edges().empty()) fail(ErrorCode::InvalidArgument, "graph has no edges");
  const SpinHamiltonian h(g, -singlet_projector());
  return -ground_energy(h).energy / static_cast<double>(g.edges().size());
}

double concurrence_wootters(const quantum::DensityOp& rho) {
  if (rho.dims() != std::vector<std::size_t>{2, 2}) fail(ErrorCode::DimensionMismatch, "concurrence needs a two-qubit state");
  const CMatrix& r = rho.matrix();
  const CMatrix yy = pauli_y_pair();
  const CMatrix tilde = yy * r.conjugate() * yy;

  // Eigenvalues of rho rho~ are the squared Wootters lambdas; this avoids the
  // square root of a possibly rank-deficient rho.
  Eigen::ComplexEigenSolver<CMatrix> es(r * tilde, false);
  Eigen::VectorXd lambda = es.eigenvalues().real().cwiseMax(0.0).cwiseSqrt();
  std::sort(lambda.data(), lambda.data() + 4, std::greater<>());
  return std::clamp(lambda(0) - lambda(1) - lambda(2) - lambda(3), 0.0, 1.0);
}

VariationalResult concurrence_variational(const quantum::DensityOp& rho, std::size_t restarts, std::uint64_t seed) {
  if (rho.dims() != std::vector<std::size_t>{2, 2}) fail(ErrorCode::DimensionMismatch, "concurrence needs a two-qubit state");
  if (restarts == 0) fail(ErrorCode::InvalidArgument, "need at least one restart");
  const CMatrix r = rho.matrix();
  const CMatrix f = swap_operator();
  const detail::Objective objective = [&](const Eigen::VectorXd& p) {
    const CMatrix x = unit_x(p);
    const CMatrix k = quantum::kron(x, x.adjoint()) * f;
    return (r.cwiseProduct(k.transpose())).sum().real();
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 0.5);
  VariationalResult out;
  out.best = std::numeric_limits<double>::infinity();
  for (std::size_t run = 0; run < restarts; ++run) {
    Eigen::VectorXd x0(6);
    // The first start sits at X = 1.
    for (Eigen::Index i = 0; i < 6; ++i) x0(i) = run == 0 ? 0.0 : normal(rng);
    const auto result = detail::minimize(objective, x0);
    out.best = std::min(out.best, result.value);
    out.converged = out.converged || result.converged;
  }
  out.concurrence = std::clamp(-out.best, 0.0, 1.0);
  return out;
}

double eof_from_concurrence(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) fail(ErrorCode::InvalidArgument, "concurrence must lie in [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  const double t = std::sqrt(1.0 - c * c);
  const double p = c * c / (2.0 * (1.0 + t));  // (1 - t)/2 without cancellation
  const double q = 1.0 - p;
  return -(p * std::log(p) + q * std::log1p(-p)) / std::numbers::ln2;
}

std::vector<ClusterRow> qubit_cluster_curve(std::size_t n_max) {
  if (n_max < 2) fail(ErrorCode::InvalidArgument, "cluster curve needs n_max >= 2");
  std::vector<ClusterRow> rows;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const double c = 2.0 / static_cast<double>(n);
    rows.push_back({n, c, eof_from_concurrence(c)});
  }
  return rows;
}

double symmetric_max_concurrence(std::size_t n, std::uint64_t seed, std::size_t restarts) {
  if (n < 2 || n > 10) fail(ErrorCode::InvalidArgument, "symmetric search supports 2 <= n <= 10");
  std::vector<CVector> basis;
  std::vector<CMatrix> pair_blocks;
  for (std::size_t k = 0; k <= n; ++k) {
    basis.push_back(dicke(n, k));
    pair_blocks.push_back(first_pair(basis.back()));
  }
  const Eigen::Index terms = ix(n + 1);

  const detail::Objective pure = [&](const Eigen::VectorXd& p) {
    CVector psi = CVector::Zero(basis.front().size());
    for (Eigen::Index k = 0; k < terms; ++k) psi += C(p(2 * k), p(2 * k + 1)) * basis[static_cast<std::size_t>(k)];
    const double norm = psi.norm();
    if (norm < 1e-12) return 0.0;
    return -concurrence_of(first_pair(psi / norm));
  };
  const detail::Objective mixture = [&](const Eigen::VectorXd& p) {
    // Softmax weights over Dicke projectors.
    const double top = p.maxCoeff();
    Eigen::VectorXd w = (p.array() - top).exp();
    w /= w.sum();
    CMatrix rho = CMatrix::Zero(4, 4);
    for (Eigen::Index k = 0; k < terms; ++k) rho += w(k) * pair_blocks[static_cast<std::size_t>(k)];
    return -concurrence_of(rho);
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double best = 0.0;
  for (std::size_t run = 0; run < restarts; ++run) {
    Eigen::VectorXd a(2 * terms), b(terms);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = normal(rng);
    for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = normal(rng);
    best = std::max(best, -detail::minimize(pure, a).value);
    best = std::max(best, -detail::minimize(mixture, b).value);
  }
  return best;
}

InverseSquareFit fit_inverse_square(const std::vector<std::pair<std::size_t, double>>& points) {
  if (points.size() < 2) fail(ErrorCode::InvalidArgument, "fit needs at least two points");
  Eigen::MatrixXd design(ix(points.size()), 2);
  Eigen::VectorXd rhs(ix(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double n = static_cast<double>(points[i].first);
    design(ix(i), 0) = 1.0;
    design(ix(i), 1) = 1.0 / (n * n);
    rhs(ix(i)) = points[i].second;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return {coef(0), coef(1)};
}

}  // namespace monogamy::spin
