#include "monogamy/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "monogamy/error.hpp"

namespace monogamy::gaussian {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

/// Spectral scale of a pair: the largest diagonal of h_q + h_p (twice the
/// largest degree), at least one.
double scale_of(const HamiltonianPair& pair) {
  return std::max(1.0, (pair.h_q + pair.h_p).diagonal().maxCoeff());
}

MatrixXd psd_function(const Eigen::SelfAdjointEigenSolver<MatrixXd>& es, double eps, double (*f)(double)) {
  VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = ev(i) <= eps ? 0.0 : f(ev(i));
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

double safe_sqrt(double x) { return std::sqrt(x); }
double safe_inv_sqrt(double x) { return 1.0 / std::sqrt(x); }
double safe_inv(double x) { return 1.0 / x; }

MatrixXd psd_sqrt(const MatrixXd& m, double eps) {
  return psd_function(Eigen::SelfAdjointEigenSolver<MatrixXd>(m), eps, safe_sqrt);
}

/// Columns of the eigenvectors with eigenvalue <= eps.
MatrixXd kernel_of(const Eigen::SelfAdjointEigenSolver<MatrixXd>& es, double eps) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) <= eps) cols.push_back(i);
  }
  MatrixXd out(es.eigenvectors().rows(), ix(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(ix(c)) = es.eigenvectors().col(cols[c]);
  return out;
}

/// Geometric mean X of the PD solution to X a X = b with a positive definite:
/// X = a^(-1/2) (a^(1/2) b a^(1/2))^(1/2) a^(-1/2).
MatrixXd geometric_solution(const MatrixXd& a, const MatrixXd& b, double eps) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
  const MatrixXd s = psd_function(es, eps, safe_sqrt);
  const MatrixXd s_inv = psd_function(es, eps, safe_inv_sqrt);
  const MatrixXd inner = psd_sqrt(s * b * s, eps * eps);
  const MatrixXd x = s_inv * inner * s_inv;
  return 0.5 * (x + x.transpose());
}

double quadratic(const MatrixXd& gamma, const MatrixXd& kernel, const VectorXd& v) {
  if (kernel.cols() > 0 && (kernel.transpose() * v).norm() > kOverlapTolerance * v.norm()) return kInf;
  return std::max(0.0, 0.5 * v.dot(gamma * v));
}

bool is_cycle(const graphs::Graph& g) {
  return g.n() >= 3 && g.edges().size() == g.n() && graphs::regular(g) && graphs::degree(g).front() == 2 &&
         graphs::connected(g);
}

bool is_complete(const graphs::Graph& g) { return g.n() >= 2 && g.edges().size() == g.n() * (g.n() - 1) / 2; }

EprPair finalize(double vq, double vp, int sign) {
  EprPair out{vq, vp, 0.0, sign, EprStatus::Finite};
  if (std::isinf(vq) || std::isinf(vp)) {
    out.status = EprStatus::Null;
    out.delta = kInf;
  } else if (vq * vp <= 1e-24) {
    out.status = EprStatus::Divergent;
    out.delta = 0.0;
  } else {
    out.delta = std::sqrt(vq * vp);
  }
  return out;
}

double cluster_delta(std::size_t n) { return std::sqrt(static_cast<double>(n - 2) / static_cast<double>(n)); }

double cluster_energy(std::size_t n) {
  const double x = static_cast<double>(n);
  return (x - 1.0) * std::sqrt(x * (x - 2.0));
}

}  // namespace

HamiltonianPair hamiltonian_pair(const graphs::Graph& g) {
  if (!graphs::connected(g)) fail(ErrorCode::DisconnectedGraph, "graph '" + g.tag() + "' is not connected");
  if (g.n() > kMaxDenseModes) fail(ErrorCode::CapExceeded, "dense Gaussian path is capped at 4096 modes");
  const MatrixXd a = graphs::adjacency(g);
  const VectorXd d = a.rowwise().sum();
  return {MatrixXd(d.asDiagonal()) + a, MatrixXd(d.asDiagonal()) - a};
}

double ground_energy(const HamiltonianPair& pair) {
  const double scale = scale_of(pair);
  const MatrixXd s = psd_sqrt(pair.h_q, kKernelEpsilon * scale);
  MatrixXd m = s * pair.h_p * s;
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  double e0 = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double mu = es.eigenvalues()(i);
    if (mu < -1e-8 * scale * scale) fail(ErrorCode::NumericalFailure, "symmetrized product has a negative eigenvalue");
    if (mu > kKernelEpsilon * scale * scale) e0 += std::sqrt(mu);
  }
  return e0;
}

double symplectic_energy(const HamiltonianPair& pair) {
  const double eps = kKernelEpsilon * scale_of(pair);
  const MatrixXd m = psd_sqrt(pair.h_p, eps) * psd_sqrt(pair.h_q, eps);
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues().sum();
}

GroundStateCm ground_cm(const HamiltonianPair& pair) {
  const double scale = scale_of(pair);
  const double eps = kKernelEpsilon * scale;
  const Eigen::Index n = pair.h_q.rows();
  GroundStateCm cm;

  const double commutator = (pair.h_q * pair.h_p - pair.h_p * pair.h_q).cwiseAbs().maxCoeff();
  if (commutator <= 1e-9 * scale * scale) {
    // Both blocks are d*1 +- A' with A' = (h_q - h_p)/2.
    const double d = 0.5 * (pair.h_q(0, 0) + pair.h_p(0, 0));
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (pair.h_q - pair.h_p));
    const MatrixXd& u = es.eigenvectors();
    VectorXd gq = VectorXd::Zero(n), gp = VectorXd::Zero(n);
    std::vector<Eigen::Index> kp, kq;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double q = d + es.eigenvalues()(k);
      const double p = d - es.eigenvalues()(k);
      if (q <= eps && p <= eps) fail(ErrorCode::NoGroundState, "h_q and h_p share a null direction");
      if (p <= eps) {
        kp.push_back(k);
      } else if (q <= eps) {
        kq.push_back(k);
      } else {
        gq(k) = std::sqrt(p / q);
        gp(k) = std::sqrt(q / p);
      }
    }
    cm.gamma_q = u * gq.asDiagonal() * u.transpose();
    cm.gamma_p = u * gp.asDiagonal() * u.transpose();
    cm.kernel_p.resize(n, ix(kp.size()));
    cm.kernel_q.resize(n, ix(kq.size()));
    for (std::size_t c = 0; c < kp.size(); ++c) cm.kernel_p.col(ix(c)) = u.col(kp[c]);
    for (std::size_t c = 0; c < kq.size(); ++c) cm.kernel_q.col(ix(c)) = u.col(kq[c]);
    return cm;
  }

  Eigen::SelfAdjointEigenSolver<MatrixXd> eq(pair.h_q), ep(pair.h_p);
  const bool q_definite = eq.eigenvalues().minCoeff() > eps;
  const bool p_definite = ep.eigenvalues().minCoeff() > eps;
  if (!q_definite && !p_definite) {
    fail(ErrorCode::NoGroundState, "both h_q and h_p are singular on a graph without a shared eigenbasis");
  }
  // Gamma_Q h_q Gamma_Q = h_p; the mirror relation holds for Gamma_P.
  const MatrixXd finite = q_definite ? geometric_solution(pair.h_q, pair.h_p, eps) : geometric_solution(pair.h_p, pair.h_q, eps);
  const MatrixXd inverse = psd_function(Eigen::SelfAdjointEigenSolver<MatrixXd>(finite), 1e-9, safe_inv);
  if (q_definite) {
    cm.gamma_q = finite;
    cm.gamma_p = inverse;
    cm.kernel_p = kernel_of(ep, eps);
    cm.kernel_q.resize(n, 0);
  } else {
    cm.gamma_p = finite;
    cm.gamma_q = inverse;
    cm.kernel_q = kernel_of(eq, eps);
    cm.kernel_p.resize(n, 0);
  }
  return cm;
}

double ring_delta(std::size_t n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "ring needs n >= 3");
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += std::abs(std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n)));
  return s / static_cast<double>(n);
}

double ring_energy(std::size_t n) { return 2.0 * static_cast<double>(n) * ring_delta(n); }

EprPair epr_variances(const graphs::Graph& g, const EprOptions& options) {
  if (g.edges().empty()) fail(ErrorCode::InvalidArgument, "graph has no edges");
  if (options.edge >= g.edges().size()) fail(ErrorCode::InvalidArgument, "edge index out of range");
  if (!g.symmetric() && !options.allow_asymmetric) {
    fail(ErrorCode::NonTransitive, "graph '" + g.tag() + "' is not flagged edge- and vertex-transitive");
  }
  if (!graphs::connected(g)) fail(ErrorCode::DisconnectedGraph, "graph '" + g.tag() + "' is not connected");

  if (options.closed_forms && is_cycle(g)) {
    const double v = ring_delta(g.n());
    return finalize(v, v, 1);
  }
  if (options.closed_forms && is_complete(g)) {
    const double v = cluster_delta(g.n());
    return finalize(v, v, 1);
  }

  const GroundStateCm cm = ground_cm(hamiltonian_pair(g));
  const auto [a, b] = g.edges()[options.edge];
  EprPair best;
  double best_product = kInf;
  bool have = false;
  for (int s : {1, -1}) {
    VectorXd v = VectorXd::Zero(ix(g.n())), w = VectorXd::Zero(ix(g.n()));
    v(ix(a)) = 1.0;
    v(ix(b)) = s;
    w(ix(a)) = 1.0;
    w(ix(b)) = -s;
    const double vq = quadratic(cm.gamma_q, cm.kernel_q, v);
    const double vp = quadratic(cm.gamma_p, cm.kernel_p, w);
    const double product = (std::isinf(vq) || std::isinf(vp)) ? kInf : vq * vp;
    if (!have || product < best_product) {
      best = finalize(vq, vp, s);
      best_product = product;
      have = true;
    }
  }
  return best;
}

double eof_symmetric(double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::InvalidArgument, "EPR parameter must be positive");
  if (delta >= 1.0) return 0.0;
  // c- = (delta^-1/2 - delta^1/2)^2 / 4 and c+ = 1 + c-.
  const double cm = (1.0 - delta) * (1.0 - delta) / (4.0 * delta);
  return ((1.0 + cm) * std::log1p(cm) - cm * std::log(cm)) / std::numbers::ln2;
}

double eof_of(const EprPair& pair) {
  switch (pair.status) {
    case EprStatus::Divergent:
      return kInf;
    case EprStatus::Null:
      return 0.0;
    case EprStatus::Finite:
      break;
  }
  return eof_symmetric(pair.delta);
}

double max_nn_eof(const graphs::Graph& g, const EprOptions& options) { return eof_of(epr_variances(g, options)); }

RingLimit ring_limit() {
  // (1/4pi) int_0^2pi 2|sin t| dt = 2/pi.
  const double delta = 2.0 / std::numbers::pi;
  return {delta, eof_symmetric(delta)};
}

Family parse_family(const std::string& name) {
  if (name == "ring") return Family::Ring;
  if (name == "cluster") return Family::Cluster;
  if (name == "hex") return Family::Hex;
  if (name == "tri") return Family::Tri;
  if (name == "platonic") return Family::Platonic;
  fail(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

std::vector<ScanRow> scan(Family family, std::size_t n_min, std::size_t n_max) {
  if (family != Family::Platonic && n_min > n_max) fail(ErrorCode::InvalidArgument, "empty range: n-min exceeds n-max");
  std::vector<ScanRow> rows;
  auto push = [&rows](const graphs::Graph& g, double e0) {
    ScanRow row;
    row.n = g.n();
    row.tag = g.tag();
    row.epr = epr_variances(g);
    row.eof = eof_of(row.epr);
    row.e0_per_mode = e0 / static_cast<double>(g.n());
    rows.push_back(std::move(row));
  };

  switch (family) {
    case Family::Ring:
      if (n_min < 3) fail(ErrorCode::InvalidArgument, "ring scan needs n-min >= 3");
      for (std::size_t n = n_min; n <= n_max; ++n) {
        // Large rings skip the explicit graph; only the closed forms are used.
        ScanRow row;
        row.n = n;
        row.tag = "ring(" + std::to_string(n) + ")";
        const double v = ring_delta(n);
        row.epr = finalize(v, v, 1);
        row.eof = eof_of(row.epr);
        row.e0_per_mode = ring_energy(n) / static_cast<double>(n);
        rows.push_back(std::move(row));
      }
      break;
    case Family::Cluster:
      if (n_min < 2) fail(ErrorCode::InvalidArgument, "cluster scan needs n-min >= 2");
      for (std::size_t n = n_min; n <= n_max; ++n) {
        ScanRow row;
        row.n = n;
        row.tag = "complete(" + std::to_string(n) + ")";
        const double v = cluster_delta(n);
        row.epr = finalize(v, v, 1);
        row.eof = eof_of(row.epr);
        row.e0_per_mode = cluster_energy(n) / static_cast<double>(n);
        rows.push_back(std::move(row));
      }
      break;
    case Family::Hex:
      for (std::size_t l = n_min; l <= n_max; ++l) {
        const auto g = graphs::hex_torus(l, l);
        push(g, ground_energy(hamiltonian_pair(g)));
      }
      break;
    case Family::Tri:
      for (std::size_t l = n_min; l <= n_max; ++l) {
        const auto g = graphs::tri_torus(l, l);
        push(g, ground_energy(hamiltonian_pair(g)));
      }
      break;
    case Family::Platonic:
      for (const auto& name : graphs::platonic_names()) {
        const auto g = graphs::platonic(name);
        push(g, ground_energy(hamiltonian_pair(g)));
      }
      std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& x, const ScanRow& y) { return x.n < y.n; });
      break;
  }
  return rows;
}

}  // namespace monogamy::gaussian
