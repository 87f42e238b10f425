#pragma once

// Executable harnesses: the two-observer Bell setup with frame misalignment,
// agent-blindness constructions around entanglement entropy, and thermal
// context drift.  All randomness flows from explicit seeds through the
// splittable generator in rng.hpp, so every report is reproducible.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qframe/contextuality.hpp"
#include "qframe/quantum.hpp"

namespace qframe::experiments {

// (|00> + |11>)/sqrt(2) on qubit labels "1", "2".
quantum::PureState phi_plus();

// Dichotomic observable at angle phi in the x-z plane:
// cos(phi) sigma_z + sin(phi) sigma_x.
quantum::Matrix rotated_z(double phi);

struct BellSetup {
  quantum::PureState state;            // default: phi_plus()
  std::array<double, 2> a1_angles{0.0, 0.0};
  std::array<double, 2> a2_angles{0.0, 0.0};
  double misalignment = 0.0;           // radians in [0, pi], applied to A2
  long shots = 0;                      // 0 = exact Born tables
  std::uint64_t seed = 0;

  BellSetup();
  void validate() const;
};

struct BellResult {
  std::array<std::array<double, 2>, 2> correlators{};  // E[a_i][b_j]
  double chsh = 0.0;
  contextuality::EmpiricalModel model;
  contextuality::ContextualityReport report;
  double nd_tol = 1e-9;  // no-disturbance tolerance used (loosened for shots)
};

// Exact mode computes Born tables for the four cross contexts; shot mode
// samples each context independently and analyzes the (exactly rational)
// frequencies.  A2's observables are conjugated by the misalignment
// rotation before measuring.
BellResult run_bell(const BellSetup& setup);

// Bit-error probability when a classical bit encoded along one z-axis is
// decoded along a z-axis misaligned by theta, computed by the Born rule
// (prepare |0>, measure the rotated observable).  Equals sin^2(theta/2).
double communication_error_rate(double theta);

struct BellBasisResult {
  std::array<std::string, 4> labels;  // phi+, phi-, psi+, psi-
  std::array<double, 4> probabilities;
  std::string annotation;  // why this basis needs an entangling measurement
};

BellBasisResult bell_basis_measure(const quantum::PureState& s);

// ---------------------------------------------------------------------------

struct AgentComponent {
  std::string id;
  quantum::Qrf qrf;
};

// Everything the agent can record about a state: each observable's outcome
// distribution, plus the joint distribution of every maximal mutually
// commuting subset of its observables (within 1e-10).  Entries are labeled
// deterministically so before/after vectors align.
struct AgentStats {
  std::vector<std::string> labels;
  std::vector<double> values;
};

AgentStats agent_statistics(const quantum::PureState& s,
                            const std::vector<AgentComponent>& agent);

struct QfpAction {
  quantum::Matrix unitary;
  std::vector<std::string> targets;
};

struct QfpInstance {
  quantum::PureState environment;
  std::vector<AgentComponent> components;
  QfpAction action;

  void validate() const;  // sectors and targets within layout; unitary
};

// Decides "the action changed the state" from before/after statistics.
using AgentStrategy =
    std::function<bool(const AgentStats&, const AgentStats&)>;

// Flags a change when any statistic moves by more than 1e-9.
bool naive_stat_diff(const AgentStats& before, const AgentStats& after);

struct QfpTrialResult {
  bool truth_changed = false;  // entanglement entropy moved by > 1e-9 bits
  bool agent_changed = false;
  std::string classification;  // correct | false-negative | false-positive
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  double max_stat_change = 0.0;
};

QfpTrialResult run_qfp_trial(const QfpInstance& instance,
                             const AgentStrategy& strategy = nullptr);

struct AdversarialPair {
  quantum::PureState state_a;
  quantum::PureState state_b;
  std::vector<AgentComponent> agent;
  double max_discrepancy = 0.0;  // over all agent statistics; <= 1e-9
  double delta_s_bits = 0.0;     // entropy gap; >= 1
  std::string family;            // catalog key that produced the pair
};

// Catalog families:
//   "bell-tail"      two extra qubits hide a Bell pair outside the agent's
//                    sectors (works for any agent confined to labels 1,2 of
//                    a four-qubit line);
//   "diagonal-blind" equal computational-basis diagonals, different
//                    entanglement (works when every agent observable is
//                    diagonal);
//   "ghz-vs-bell"    equal single-qubit marginals but no entropy gap --
//                    kept as the negative control, always rejected;
//   "auto"           first verifying family in the order above.
// The returned pair is re-verified; a family that fails verification
// raises a ValidationError instead of being returned.
AdversarialPair construct_adversarial_pair(
    const std::vector<AgentComponent>& agent, const std::string& catalog_key);

// ---------------------------------------------------------------------------

struct ThermoSetup {
  quantum::PureState state;
  std::vector<AgentComponent> agent;
  double epsilon = 0.0;  // coupling strength, >= 0
  std::uint64_t seed = 0;
  int trials = 1;

  void validate() const;
};

struct ThermoResult {
  double max_drift = 0.0;  // L-inf stats deviation from baseline at epsilon
  double bound = 0.0;      // cumulative max over an epsilon grid [0, eps]
  std::vector<double> per_trial;
};

// Applies exp(-i eps G) with G a seeded random Hermitian (unit spectral
// norm) between preparation and measurement; reports how far agent-visible
// statistics drift from the unperturbed baseline.
ThermoResult thermo_context_demo(const ThermoSetup& setup);

}  // namespace qframe::experiments
