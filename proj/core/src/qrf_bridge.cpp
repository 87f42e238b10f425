#include <algorithm>
#include <cstdio>

#include "qframe/contextuality.hpp"

namespace qframe::contextuality {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

QrfModelResult empirical_model_from_qrfs(const quantum::PureState& s,
                                         const quantum::Qrf& q1,
                                         const quantum::Qrf& q2,
                                         quantum::MeasureMode mode) {
  s.validate();
  q1.validate();
  q2.validate();
  if (q1.id == q2.id)
    throw ValidationError("/qrfs", "the two QRFs must have distinct ids");

  QrfModelResult out;
  out.commutator = quantum::commutator_norm(q1, q2, s.layout);
  out.codeployable = out.commutator < quantum::kTolCommute;

  MeasurementScenario scenario;
  for (std::size_t k = 0; k < q1.observables.size(); ++k)
    scenario.observables.push_back(
        {q1.id + ":" + std::to_string(k), {"+1", "-1"}});
  for (std::size_t k = 0; k < q2.observables.size(); ++k)
    scenario.observables.push_back(
        {q2.id + ":" + std::to_string(k), {"+1", "-1"}});
  std::sort(scenario.observables.begin(), scenario.observables.end(),
            [](const ObservableSpec& a, const ObservableSpec& b) {
              return a.id < b.id;
            });

  EmpiricalModel model;
  for (std::size_t i = 0; i < q1.observables.size(); ++i)
    for (std::size_t j = 0; j < q2.observables.size(); ++j) {
      std::string id1 = q1.id + ":" + std::to_string(i);
      std::string id2 = q2.id + ":" + std::to_string(j);
      scenario.contexts.push_back({id1, id2});
      // Joint mode needs this cross pair to commute; name the pair rather
      // than letting the engine report bare indices.
      if (mode == quantum::MeasureMode::joint) {
        auto ma = quantum::embed(s.layout, q1.observables[i].sector,
                                 q1.observables[i].matrix);
        auto mb = quantum::embed(s.layout, q2.observables[j].sector,
                                 q2.observables[j].matrix);
        double defect = (ma * mb - mb * ma).norm();
        if (defect > quantum::kTolCommute)
          throw NonCodeployableError(
              "cross pair (" + id1 + ", " + id2 + ") does not commute "
              "(defect " + fmt(defect) + "); joint deployment is undefined");
      }
      auto dist = quantum::measure(
          s, {q1.observables[i], q2.observables[j]}, mode);
      std::vector<ProbEntry> table;
      for (const auto& o : dist) table.push_back(ProbEntry::of(o.probability));
      model.tables.push_back(std::move(table));
    }
  model.scenario = std::move(scenario);
  model.validate();

  out.note = std::string(out.codeployable ? "co-deployable" :
                                            "non-codeployable") +
             " (max pairwise commutator " + fmt(out.commutator) + "); " +
             (mode == quantum::MeasureMode::joint
                  ? "joint Born tables, order-independent"
                  : "sequential deployment, projective order " + q1.id +
                        " then " + q2.id +
                        "; this order is invisible in the tables");
  out.model = std::move(model);
  return out;
}

}  // namespace qframe::contextuality
