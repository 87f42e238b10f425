#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qframe/errors.hpp"

namespace qframe::quantum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K
inline constexpr double kMinBeta = 0.6931471805599453;  // ln 2

// Tolerances (double precision on <= 2^12-dimensional spaces).
inline constexpr double kTolHermitian = 1e-12;
inline constexpr double kTolNorm = 1e-12;
inline constexpr double kTolTrace = 1e-12;
inline constexpr double kTolPsd = 1e-10;
inline constexpr double kTolDichotomy = 1e-10;
inline constexpr double kTolCommute = 1e-10;
inline constexpr double kTolWeightSum = 1e-12;
inline constexpr double kTolUnitary = 1e-10;

// Ordered subsystem labels with local dimensions; labels[0] is the most
// significant digit of the composite index.
struct SystemLayout {
  std::vector<std::string> labels;
  std::vector<int> dims;  // same length as labels; entries >= 2

  int position(const std::string& label) const;
  long total_dim() const;
  void validate() const;
  // Sub-layout of the given labels, kept in this layout's order.
  SystemLayout sublayout(const std::vector<std::string>& subset) const;
};

struct PureState {
  SystemLayout layout;
  Vector amplitudes;

  void validate() const;  // norm 1 within kTolNorm
};

struct DensityMatrix {
  SystemLayout layout;
  Matrix matrix;

  void validate() const;  // Hermitian, PSD, trace 1
};

struct Observable {
  std::vector<std::string> sector;  // layout labels it acts on, in this order
  Matrix matrix;                    // over the sector subspace
  bool dichotomic = false;

  void validate() const;  // Hermitian; dichotomic => matrix^2 = I
};

// Weighted dichotomic observable set with interaction parameters.
struct Qrf {
  std::string id;
  std::vector<std::string> sector;
  std::vector<Observable> observables;
  std::vector<double> weights;  // one alpha per observable
  double beta = kMinBeta;       // dimensionless, >= ln 2
  double temperature = 300.0;   // kelvin, > 0

  // Throws ValidationError naming each violated constraint.
  void validate() const;
};

// Embeds an operator acting on `sector` (labels in the given order, not
// necessarily layout order) into the full layout by tensoring identities.
Matrix embed(const SystemLayout& layout, const std::vector<std::string>& sector,
             const Matrix& op);

// beta * k_B * T * sum_i alpha_i M_i over the QRF sector (labels in layout
// order of the given layout restricted to the sector).
Matrix interaction_hamiltonian(const Qrf& q, const SystemLayout& layout);

// Max over observable pairs (M from q1, N from q2) of ||MN - NM||_F after
// embedding into the common layout; 0 iff all pairs commute.
double commutator_norm(const Qrf& q1, const Qrf& q2,
                       const SystemLayout& layout);

bool codeployable(const Qrf& q1, const Qrf& q2, const SystemLayout& layout,
                  double tol = kTolCommute);

DensityMatrix partial_trace(const PureState& s,
                            const std::vector<std::string>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& keep);

/// -sum lambda log2 lambda over eigenvalues (0 log 0 := 0), in bits.
double von_neumann_entropy(const DensityMatrix& rho);

struct EntanglementResult {
  double bits = 0.0;
  std::vector<std::string> part_a;  // contains the first layout label
  std::vector<std::string> part_b;
};

// Max over all 2^(n-1)-1 nontrivial bipartitions of the entropy of the
// reduced state; argmax is lexicographically first on ties (on the sorted
// label subset containing the first label).
EntanglementResult entanglement_entropy(const PureState& s);

// Schmidt rank 1 across the bipartition (second singular value < 1e-10).
bool is_separable_pure(const PureState& s,
                       const std::vector<std::string>& part_a);

enum class MeasureMode { joint, sequential };

struct MeasureOutcome {
  std::vector<int> outcomes;  // +1/-1 per observable, in list order
  double probability = 0.0;
  std::optional<PureState> post_state;  // sequential mode, probability > 0
};

// Born-rule engine for dichotomic observables.  Joint mode requires all
// pairs to commute (within kTolCommute) and reports the joint distribution;
// sequential mode applies projective updates in list order and also reports
// post-measurement states.
std::vector<MeasureOutcome> measure(const PureState& s,
                                    const std::vector<Observable>& obs,
                                    MeasureMode mode);

// n_bits * beta * k_B * temperature, joules.
double landauer_cost(double beta, double temperature, double n_bits);

/// Helpers shared by experiments: apply a unitary on a label subset.
PureState apply_unitary(const PureState& s,
                        const std::vector<std::string>& targets,
                        const Matrix& u);

}  // namespace qframe::quantum
