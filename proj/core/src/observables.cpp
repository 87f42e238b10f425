#include <algorithm>
#include <cmath>
#include <set>

#include "qframe/quantum.hpp"

namespace qframe::quantum {

void Observable::validate() const {
  std::vector<Violation> v;
  if (sector.empty()) v.push_back({"/sector", "sector must be nonempty"});
  std::set<std::string> seen;
  for (const auto& s : sector)
    if (!seen.insert(s).second)
      v.push_back({"/sector", "duplicate label '" + s + "'"});
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    v.push_back({"/matrix", "matrix must be square and nonempty"});
  else {
    double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kTolHermitian)
      v.push_back({"/matrix", "not Hermitian (max asymmetry " +
                                  std::to_string(herm) + ")"});
    if (dichotomic) {
      Matrix sq = matrix * matrix;
      double defect =
          (sq - Matrix::Identity(matrix.rows(), matrix.cols()))
              .cwiseAbs()
              .maxCoeff();
      if (defect > kTolDichotomy)
        v.push_back({"/matrix",
                     "dichotomic observable must square to the identity "
                     "(eigenvalues in {-1,1}); defect " +
                         std::to_string(defect)});
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

void Qrf::validate() const {
  std::vector<Violation> v;
  if (id.empty()) v.push_back({"/id", "id must be nonempty"});
  if (sector.empty()) v.push_back({"/sector", "sector must be nonempty"});
  if (weights.size() != observables.size())
    v.push_back({"/weights", "expected one weight per observable"});
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0 && weights[i] <= 1.0))
      v.push_back({"/weights/" + std::to_string(i),
                   "weight alpha_i must lie in [0,1]"});
    sum += weights[i];
  }
  if (!weights.empty() && std::abs(sum - 1.0) > kTolWeightSum)
    v.push_back({"/weights", "weights must sum to 1 (got " +
                                 std::to_string(sum) + ")"});
  if (!(beta >= kMinBeta - 1e-15))
    v.push_back({"/beta", "beta must be at least ln 2 ~ 0.6931 "
                          "(thermodynamic efficiency bound); got " +
                              std::to_string(beta)});
  if (!(temperature > 0.0))
    v.push_back({"/temperature", "temperature must be positive kelvin"});
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const auto& o = observables[i];
    std::string p = "/observables/" + std::to_string(i);
    try {
      o.validate();
    } catch (const ValidationError& e) {
      for (const auto& w : e.violations()) v.push_back({p + w.pointer, w.message});
    }
    if (!o.dichotomic)
      v.push_back({p, "observables must be dichotomic (eigenvalues in {-1,1})"});
    for (const auto& s : o.sector)
      if (std::find(sector.begin(), sector.end(), s) == sector.end())
        v.push_back({p + "/sector",
                     "label '" + s + "' lies outside the reference-frame "
                     "sector"});
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

Matrix interaction_hamiltonian(const Qrf& q, const SystemLayout& layout) {
  q.validate();
  SystemLayout sec = layout.sublayout(q.sector);
  long d = sec.total_dim();
  Matrix h = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < q.observables.size(); ++i)
    h += q.weights[i] * embed(sec, q.observables[i].sector,
                              q.observables[i].matrix);
  return q.beta * kBoltzmann * q.temperature * h;
}

double commutator_norm(const Qrf& q1, const Qrf& q2,
                       const SystemLayout& layout) {
  q1.validate();
  q2.validate();
  layout.validate();
  // Work over the union of the two sectors so identity factors on
  // irrelevant labels do not inflate the Frobenius norm.
  std::vector<std::string> support;
  for (const auto& lbl : layout.labels) {
    bool in1 = std::find(q1.sector.begin(), q1.sector.end(), lbl) !=
               q1.sector.end();
    bool in2 = std::find(q2.sector.begin(), q2.sector.end(), lbl) !=
               q2.sector.end();
    if (in1 || in2) support.push_back(lbl);
  }
  SystemLayout common = layout.sublayout(support);
  double best = 0.0;
  std::vector<Matrix> left, right;
  for (const auto& o : q1.observables)
    left.push_back(embed(common, o.sector, o.matrix));
  for (const auto& o : q2.observables)
    right.push_back(embed(common, o.sector, o.matrix));
  for (const auto& m : left)
    for (const auto& n : right)
      best = std::max(best, (m * n - n * m).norm());
  return best;
}

bool codeployable(const Qrf& q1, const Qrf& q2, const SystemLayout& layout,
                  double tol) {
  return commutator_norm(q1, q2, layout) < tol;
}

double landauer_cost(double beta, double temperature, double n_bits) {
  std::vector<Violation> v;
  if (!(beta >= kMinBeta - 1e-15))
    v.push_back({"/beta", "beta must be at least ln 2 ~ 0.6931 "
                          "(thermodynamic efficiency bound); got " +
                              std::to_string(beta)});
  if (!(temperature > 0.0))
    v.push_back({"/temperature", "temperature must be positive kelvin"});
  if (!(n_bits >= 0.0))
    v.push_back({"/bits", "bit count must be nonnegative"});
  if (!v.empty()) throw ValidationError(std::move(v));
  return n_bits * beta * kBoltzmann * temperature;
}

}  // namespace qframe::quantum
