#include <cmath>

#include "qframe/experiments.hpp"
#include "qframe/rng.hpp"

namespace qframe::experiments {

quantum::PureState phi_plus() {
  quantum::PureState s;
  s.layout.labels = {"1", "2"};
  s.layout.dims = {2, 2};
  s.amplitudes = quantum::Vector::Zero(4);
  s.amplitudes(0) = 1.0 / std::sqrt(2.0);
  s.amplitudes(3) = 1.0 / std::sqrt(2.0);
  return s;
}

quantum::Matrix rotated_z(double phi) {
  quantum::Matrix m(2, 2);
  m << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
  return m;
}

BellSetup::BellSetup() : state(phi_plus()) {}

void BellSetup::validate() const {
  state.validate();
  std::vector<Violation> v;
  if (state.layout.labels.size() != 2 || state.layout.total_dim() != 4)
    v.push_back({"/state", "the two-observer setup needs a two-qubit state"});
  for (double a : {a1_angles[0], a1_angles[1], a2_angles[0], a2_angles[1]})
    if (!std::isfinite(a))
      v.push_back({"/settings", "measurement angles must be finite"});
  if (!(misalignment >= 0.0 && misalignment <= 3.14159265358979323846 + 1e-12))
    v.push_back({"/misalignment", "misalignment must lie in [0, pi]"});
  if (shots < 0) v.push_back({"/shots", "shot count must be nonnegative"});
  if (!v.empty()) throw ValidationError(std::move(v));
}

namespace {

quantum::Observable angle_obs(const std::string& label, double phi) {
  quantum::Observable o;
  o.sector = {label};
  o.matrix = rotated_z(phi);
  o.dichotomic = true;
  return o;
}

}  // namespace

BellResult run_bell(const BellSetup& setup) {
  setup.validate();
  const std::string& l1 = setup.state.layout.labels[0];
  const std::string& l2 = setup.state.layout.labels[1];

  BellResult out;
  contextuality::MeasurementScenario scenario;
  scenario.observables = {{"A1:0", {"+1", "-1"}},
                          {"A1:1", {"+1", "-1"}},
                          {"A2:0", {"+1", "-1"}},
                          {"A2:1", {"+1", "-1"}}};
  contextuality::EmpiricalModel model;
  SplitMix64 root(setup.seed);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      scenario.contexts.push_back(
          {"A1:" + std::to_string(i), "A2:" + std::to_string(j)});
      auto dist = quantum::measure(
          setup.state,
          {angle_obs(l1, setup.a1_angles[i]),
           angle_obs(l2, setup.a2_angles[j] + setup.misalignment)},
          quantum::MeasureMode::joint);
      std::vector<contextuality::ProbEntry> table;
      if (setup.shots == 0) {
        for (const auto& o : dist)
          table.push_back(contextuality::ProbEntry::of(o.probability));
      } else {
        // Independent per-context sampling; counts make exact rationals.
        SplitMix64 rng = root.split(static_cast<std::uint64_t>(2 * i + j));
        std::vector<long> counts(dist.size(), 0);
        for (long shot = 0; shot < setup.shots; ++shot) {
          double u = rng.uniform();
          double acc = 0.0;
          std::size_t cell = dist.size() - 1;
          for (std::size_t k = 0; k < dist.size(); ++k) {
            acc += dist[k].probability;
            if (u < acc) {
              cell = k;
              break;
            }
          }
          ++counts[cell];
        }
        for (long c : counts)
          table.push_back(
              contextuality::ProbEntry::of(Rational(c, setup.shots)));
      }
      double e = 0.0;
      int sign[4] = {+1, -1, -1, +1};
      for (int cell = 0; cell < 4; ++cell)
        e += sign[cell] * table[cell].value;
      out.correlators[i][j] = e;
      model.tables.push_back(std::move(table));
    }
  model.scenario = std::move(scenario);

  out.chsh = out.correlators[0][0] + out.correlators[0][1] +
             out.correlators[1][0] - out.correlators[1][1];
  out.model = model;
  // Finite-sample tables are expected to miss exact marginal agreement;
  // allow a three-sigma statistical band in shot mode.
  out.nd_tol =
      setup.shots == 0
          ? 1e-9
          : std::max(1e-9, 3.0 / std::sqrt(static_cast<double>(setup.shots)));
  out.report.disturbance = contextuality::check_no_disturbance(model, out.nd_tol);
  out.report.section = contextuality::has_global_section(model);
  if (out.report.disturbance.passes)
    out.report.fraction = contextuality::contextual_fraction(model);
  return out;
}

double communication_error_rate(double theta) {
  if (!(theta >= 0.0 && theta <= 3.14159265358979323846 + 1e-12))
    throw ValidationError("/misalignment",
                          "misalignment must lie in [0, pi]");
  quantum::PureState zero;
  zero.layout.labels = {"1"};
  zero.layout.dims = {2};
  zero.amplitudes = quantum::Vector::Zero(2);
  zero.amplitudes(0) = 1.0;
  auto dist = quantum::measure(zero, {angle_obs("1", theta)},
                               quantum::MeasureMode::joint);
  return dist[1].probability;  // decoder reads -1: the bit flipped
}

BellBasisResult bell_basis_measure(const quantum::PureState& s) {
  s.validate();
  if (s.layout.labels.size() != 2 || s.layout.total_dim() != 4)
    throw ValidationError("/state", "Bell-basis readout needs two qubits");
  const double r = 1.0 / std::sqrt(2.0);
  quantum::Vector basis[4] = {quantum::Vector(4), quantum::Vector(4),
                              quantum::Vector(4), quantum::Vector(4)};
  basis[0] << r, 0, 0, r;    // (|00> + |11>)/sqrt2
  basis[1] << r, 0, 0, -r;   // (|00> - |11>)/sqrt2
  basis[2] << 0, r, r, 0;    // (|10> + |01>)/sqrt2
  basis[3] << 0, r, -r, 0;   // (|10> - |01>)/sqrt2
  BellBasisResult out;
  out.labels = {"phi+", "phi-", "psi+", "psi-"};
  for (int k = 0; k < 4; ++k) {
    std::complex<double> amp = basis[k].dot(s.amplitudes);
    out.probabilities[k] = std::norm(amp);
  }
  out.annotation =
      "the four projectors are entangled states, so deploying this basis "
      "requires a joint entangling measurement on both qubits; no pair of "
      "single-qubit deployments realizes it";
  return out;
}

}  // namespace qframe::experiments
