#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

#include "qframe/experiments.hpp"
#include "qframe/rng.hpp"

namespace qframe::experiments {

void ThermoSetup::validate() const {
  state.validate();
  std::vector<Violation> v;
  if (!(epsilon >= 0.0))
    v.push_back({"/epsilon", "coupling strength must be nonnegative"});
  if (trials < 1) v.push_back({"/trials", "need at least one trial"});
  if (!v.empty()) throw ValidationError(std::move(v));
}

namespace {

// Seeded random Hermitian with unit spectral norm.
quantum::Matrix random_generator(long dim, SplitMix64& rng) {
  quantum::Matrix a(dim, dim);
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j)
      a(i, j) = std::complex<double>(rng.gaussian(), rng.gaussian());
  quantum::Matrix g = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<quantum::Matrix> es(g, Eigen::EigenvaluesOnly);
  double radius = std::max(std::abs(es.eigenvalues()(0)),
                           std::abs(es.eigenvalues()(dim - 1)));
  if (radius > 0) g /= radius;
  return g;
}

quantum::PureState kicked(const quantum::PureState& s,
                          const quantum::Matrix& g, double eps) {
  if (eps == 0.0) return s;  // exactly no kick
  Eigen::SelfAdjointEigenSolver<quantum::Matrix> es(g);
  quantum::Vector phases(g.rows());
  for (long k = 0; k < g.rows(); ++k)
    phases(k) = std::exp(std::complex<double>(0.0, -eps * es.eigenvalues()(k)));
  quantum::Matrix u =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return quantum::apply_unitary(s, s.layout.labels, u);
}

double linf(const AgentStats& a, const AgentStats& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

}  // namespace

ThermoResult thermo_context_demo(const ThermoSetup& setup) {
  setup.validate();
  auto baseline = agent_statistics(setup.state, setup.agent);
  SplitMix64 root(setup.seed);

  ThermoResult out;
  const double step = 3.14159265358979323846 / 128.0;
  for (int t = 0; t < setup.trials; ++t) {
    SplitMix64 rng = root.split(static_cast<std::uint64_t>(t));
    auto g = random_generator(setup.state.layout.total_dim(), rng);
    double drift = linf(
        agent_statistics(kicked(setup.state, g, setup.epsilon), setup.agent),
        baseline);
    out.per_trial.push_back(drift);
    out.max_drift = std::max(out.max_drift, drift);
    // Nested coupling grid: bounds at larger epsilon dominate smaller ones.
    for (double e = 0.0; e <= setup.epsilon + 1e-15; e += step)
      out.bound = std::max(
          out.bound,
          linf(agent_statistics(kicked(setup.state, g, e), setup.agent),
               baseline));
    out.bound = std::max(out.bound, drift);
  }
  return out;
}

}  // namespace qframe::experiments
