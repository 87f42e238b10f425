#pragma once

// Measurement scenarios, empirical models, and the noncontextuality
// decision: does a single probability distribution over global outcome
// assignments reproduce every context table?  Decided by exact rational
// linear programming when the tables are rational, floating otherwise.

#include <optional>
#include <string>
#include <vector>

#include "qframe/errors.hpp"
#include "qframe/quantum.hpp"
#include "qframe/rational.hpp"

namespace qframe::contextuality {

struct ObservableSpec {
  std::string id;
  std::vector<std::string> outcomes;  // nonempty, unique
};

// Observables are kept sorted by id so assignment enumeration, table
// indexing, and report output are canonical.
struct MeasurementScenario {
  std::vector<ObservableSpec> observables;         // sorted by id
  std::vector<std::vector<std::string>> contexts;  // observable ids

  void validate() const;
  int observable_index(const std::string& id) const;  // -1 when absent
  // Joint outcome tuples of one context: product of member outcome counts,
  // indexed row-major with the first context member most significant.
  long context_cells(int context) const;
  // Product over all observables; throws CapError above the cap.
  long assignment_count(long cap) const;
};

struct ProbEntry {
  double value = 0.0;
  std::optional<Rational> exact;

  static ProbEntry of(double v) { return {v, std::nullopt}; }
  static ProbEntry of(const Rational& r) {
    return {static_cast<double>(r), r};
  }
};

struct EmpiricalModel {
  MeasurementScenario scenario;
  std::vector<std::vector<ProbEntry>> tables;  // [context][cell]

  void validate() const;  // nonnegative, each table sums to 1 within 1e-10
  bool all_rational() const;
};

struct DisturbanceReport {
  bool passes = true;
  double max_violation = 0.0;
  std::string observable;  // worst offender (empty when no sharing)
  int context_a = -1;
  int context_b = -1;
};

// Marginal agreement for every observable shared between two contexts.
DisturbanceReport check_no_disturbance(const EmpiricalModel& m,
                                       double tol = 1e-9);

inline constexpr long kDefaultAssignmentCap = 1000000;

// Global assignments are mixed-radix numbers over the sorted observables
// (first observable most significant, digits = outcome indices); constraint
// rows are (context, cell) pairs flattened in order.
struct SectionReport {
  bool feasible = false;
  bool exact = false;      // rational arithmetic was used
  bool signaling = false;  // no-disturbance failed; verdict still computed
  long assignments = 0;
  std::vector<double> lambda;  // distribution over assignments when feasible
  std::vector<Rational> lambda_exact;
  std::vector<double> farkas;  // dual over constraint rows when infeasible
  std::vector<Rational> farkas_exact;
  // Self-check: worst |marginal - table| after re-marginalizing lambda.
  double max_marginal_error = 0.0;
};

SectionReport has_global_section(const EmpiricalModel& m,
                                 long cap = kDefaultAssignmentCap);

struct FractionReport {
  double value = 0.0;  // 0 = noncontextual, 1 = strongly contextual
  std::optional<Rational> exact;
  bool signaling = false;
  long assignments = 0;
};

// 1 - max total weight of a subnormalized noncontextual part of the model.
FractionReport contextual_fraction(const EmpiricalModel& m,
                                   long cap = kDefaultAssignmentCap);

// E(a,b) + E(a,b') + E(a',b) - E(a',b') over the four cross contexts of a
// 2x2x2 Bell scenario; sides and primes are fixed by sorted observable ids
// (the side containing the first observable is the unprimed-first A side).
// Outcome labels must parse as +1/-1.
double chsh_value(const EmpiricalModel& m);

struct ContextualityReport {
  DisturbanceReport disturbance;
  SectionReport section;
  std::optional<FractionReport> fraction;  // present when no-disturbance holds
};

ContextualityReport analyze(const EmpiricalModel& m,
                            long cap = kDefaultAssignmentCap);

// Scenario and Born tables from deploying two QRFs on a state: observables
// "<qrf id>:<k>", contexts all cross pairs (q1's observable listed first,
// and measured first in sequential mode).
struct QrfModelResult {
  EmpiricalModel model;
  bool codeployable = false;
  double commutator = 0.0;
  std::string note;  // deployment record: verdict, mode, order
};

QrfModelResult empirical_model_from_qrfs(const quantum::PureState& s,
                                         const quantum::Qrf& q1,
                                         const quantum::Qrf& q2,
                                         quantum::MeasureMode mode);

}  // namespace qframe::contextuality
