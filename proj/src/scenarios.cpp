#include "monogamy/scenarios.hpp"

#include <numbers>

#include "monogamy/error.hpp"
#include "monogamy/quantum.hpp"

namespace monogamy::scenarios {

MarginalScenario triangle_anticorrelation() {
  const Scope obs{{"X", 2}, {"Y", 2}, {"Z", 2}};
  auto anti = [&](std::size_t a, std::size_t b) {
    return EdgeSpec{obs[a].id, obs[b].id, DistTable({obs[a], obs[b]}, {0.0, 0.5, 0.5, 0.0})};
  };
  return MarginalScenario(obs, {anti(0, 1), anti(1, 2), anti(0, 2)});
}

MarginalScenario path() {
  const Scope obs{{"X", 2}, {"Y", 2}, {"Z", 3}};
  return MarginalScenario(obs, {{"X", "Y", DistTable({obs[0], obs[1]}, {0.4, 0.1, 0.1, 0.4})},
                                {"Y", "Z", DistTable({obs[1], obs[2]}, {0.2, 0.2, 0.1, 0.1, 0.1, 0.3})}});
}

MarginalScenario chsh(double visibility) {
  if (!(visibility >= 0.0 && visibility <= 1.0)) fail(ErrorCode::InvalidArgument, "visibility must lie in [0, 1]");
  using quantum::Povm;
  const quantum::CVector psi = quantum::singlet_vector();
  const quantum::CMatrix rho = visibility * psi * psi.adjoint() +
                               (1.0 - visibility) * quantum::CMatrix::Identity(4, 4) / 4.0;
  const quantum::DensityOp state({2, 2}, rho);
  const double q = std::numbers::pi / 4.0;
  const std::vector<Povm> a{Povm::qubit_axis(0.0), Povm::qubit_axis(2.0 * q)};
  const std::vector<Povm> b{Povm::qubit_axis(q), Povm::qubit_axis(-q)};
  const auto tables = quantum::born_pairs(state, a, b);

  Scope obs{{"A1", 2}, {"A2", 2}, {"B1", 2}, {"B2", 2}};
  std::vector<EdgeSpec> edges;
  for (const auto& t : tables) edges.push_back({t.scope()[0].id, t.scope()[1].id, t});
  return MarginalScenario(std::move(obs), std::move(edges));
}

}  // namespace monogamy::scenarios
