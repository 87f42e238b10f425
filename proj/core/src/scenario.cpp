#include <algorithm>
#include <cmath>
#include <set>

#include "qframe/contextuality.hpp"

namespace qframe::contextuality {

void MeasurementScenario::validate() const {
  std::vector<Violation> v;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const auto& o = observables[i];
    std::string at = "/observables/" + std::to_string(i);
    if (o.id.empty()) v.push_back({at, "observable id is empty"});
    if (i > 0 && !(observables[i - 1].id < o.id))
      v.push_back({at, "observable ids must be sorted and unique (saw '" +
                           observables[i - 1].id + "' before '" + o.id +
                           "')"});
    if (o.outcomes.empty())
      v.push_back({at, "outcome set of '" + o.id + "' is empty"});
    std::set<std::string> seen(o.outcomes.begin(), o.outcomes.end());
    if (seen.size() != o.outcomes.size())
      v.push_back({at, "outcome labels of '" + o.id + "' repeat"});
  }
  std::vector<bool> covered(observables.size(), false);
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    std::string at = "/contexts/" + std::to_string(c);
    if (contexts[c].empty()) v.push_back({at, "context is empty"});
    std::set<std::string> members;
    for (const auto& id : contexts[c]) {
      int idx = observable_index(id);
      if (idx < 0) {
        v.push_back({at, "context names unknown observable '" + id + "'"});
        continue;
      }
      if (!members.insert(id).second)
        v.push_back({at, "context repeats observable '" + id + "'"});
      covered[idx] = true;
    }
  }
  for (std::size_t i = 0; i < observables.size(); ++i)
    if (!covered[i])
      v.push_back({"/observables/" + std::to_string(i),
                   "observable '" + observables[i].id +
                       "' occurs in no context"});
  if (!v.empty()) throw ValidationError(std::move(v));
}

int MeasurementScenario::observable_index(const std::string& id) const {
  for (std::size_t i = 0; i < observables.size(); ++i)
    if (observables[i].id == id) return static_cast<int>(i);
  return -1;
}

long MeasurementScenario::context_cells(int context) const {
  long cells = 1;
  for (const auto& id : contexts[context])
    cells *= static_cast<long>(
        observables[observable_index(id)].outcomes.size());
  return cells;
}

long MeasurementScenario::assignment_count(long cap) const {
  long count = 1;
  for (const auto& o : observables) {
    count *= static_cast<long>(o.outcomes.size());
    if (count > cap)
      throw CapError("global-assignment count exceeds the cap of " +
                     std::to_string(cap) +
                     " (raise the cap to analyze this scenario)");
  }
  return count;
}

void EmpiricalModel::validate() const {
  scenario.validate();
  std::vector<Violation> v;
  if (tables.size() != scenario.contexts.size())
    v.push_back({"/tables", "expected " +
                                std::to_string(scenario.contexts.size()) +
                                " tables, got " +
                                std::to_string(tables.size())});
  for (std::size_t c = 0; c < tables.size() && c < scenario.contexts.size();
       ++c) {
    std::string at = "/tables/" + std::to_string(c);
    long cells = scenario.context_cells(static_cast<int>(c));
    if (static_cast<long>(tables[c].size()) != cells) {
      v.push_back({at, "expected " + std::to_string(cells) +
                           " cells, got " +
                           std::to_string(tables[c].size())});
      continue;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < tables[c].size(); ++k) {
      const auto& e = tables[c][k];
      if (e.value < -1e-12 || (e.exact && *e.exact < 0))
        v.push_back({at + "/" + std::to_string(k),
                     "probability is negative"});
      if (e.exact &&
          std::abs(static_cast<double>(*e.exact) - e.value) > 1e-9)
        v.push_back({at + "/" + std::to_string(k),
                     "exact and floating values disagree"});
      sum += e.value;
    }
    if (std::abs(sum - 1.0) > 1e-10)
      v.push_back({at, "table sums to " + std::to_string(sum) +
                           ", expected 1"});
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

bool EmpiricalModel::all_rational() const {
  for (const auto& table : tables)
    for (const auto& e : table)
      if (!e.exact) return false;
  return true;
}

namespace {

// Marginal of one context member: bucket cell probabilities by that
// member's digit (row-major, first member most significant).
std::vector<double> marginal(const MeasurementScenario& s,
                             const std::vector<ProbEntry>& table, int context,
                             int member) {
  const auto& ctx = s.contexts[context];
  std::vector<long> radix(ctx.size());
  for (std::size_t k = 0; k < ctx.size(); ++k)
    radix[k] = static_cast<long>(
        s.observables[s.observable_index(ctx[k])].outcomes.size());
  long stride = 1;
  for (std::size_t k = ctx.size(); k-- > static_cast<std::size_t>(member) + 1;)
    stride *= radix[k];
  std::vector<double> out(radix[member], 0.0);
  for (std::size_t cell = 0; cell < table.size(); ++cell)
    out[(static_cast<long>(cell) / stride) % radix[member]] +=
        table[cell].value;
  return out;
}

}  // namespace

DisturbanceReport check_no_disturbance(const EmpiricalModel& m, double tol) {
  m.validate();
  const auto& s = m.scenario;
  DisturbanceReport rep;
  for (std::size_t obs = 0; obs < s.observables.size(); ++obs) {
    const std::string& id = s.observables[obs].id;
    // Collect (context, member position) occurrences of this observable.
    std::vector<std::pair<int, int>> occ;
    for (std::size_t c = 0; c < s.contexts.size(); ++c)
      for (std::size_t k = 0; k < s.contexts[c].size(); ++k)
        if (s.contexts[c][k] == id)
          occ.push_back({static_cast<int>(c), static_cast<int>(k)});
    for (std::size_t i = 0; i < occ.size(); ++i)
      for (std::size_t j = i + 1; j < occ.size(); ++j) {
        auto ma = marginal(s, m.tables[occ[i].first], occ[i].first,
                           occ[i].second);
        auto mb = marginal(s, m.tables[occ[j].first], occ[j].first,
                           occ[j].second);
        for (std::size_t k = 0; k < ma.size(); ++k) {
          double d = std::abs(ma[k] - mb[k]);
          if (d > rep.max_violation) {
            rep.max_violation = d;
            rep.observable = id;
            rep.context_a = occ[i].first;
            rep.context_b = occ[j].first;
          }
        }
      }
  }
  rep.passes = rep.max_violation <= tol;
  return rep;
}

namespace {

int pm_outcome(const std::string& label) {
  if (label == "+1" || label == "1") return +1;
  if (label == "-1") return -1;
  throw ValidationError("/observables",
                        "outcome label '" + label +
                            "' is not +1/-1; correlators are undefined");
}

}  // namespace

double chsh_value(const EmpiricalModel& m) {
  m.validate();
  const auto& s = m.scenario;
  auto shape_error = [](const std::string& why) {
    return ValidationError("/scenario",
                           "not a 2x2x2 Bell scenario: " + why);
  };
  if (s.observables.size() != 4) throw shape_error("need 4 observables");
  for (const auto& o : s.observables) {
    if (o.outcomes.size() != 2)
      throw shape_error("observable '" + o.id + "' is not dichotomic");
    for (const auto& lbl : o.outcomes) pm_outcome(lbl);
  }
  if (s.contexts.size() != 4) throw shape_error("need 4 contexts");
  // Adjacency over the 4 observables; contexts must be 4 distinct pairs.
  std::set<std::pair<int, int>> edges;
  for (const auto& ctx : s.contexts) {
    if (ctx.size() != 2) throw shape_error("contexts must be pairs");
    int u = s.observable_index(ctx[0]);
    int w = s.observable_index(ctx[1]);
    auto e = std::minmax(u, w);
    if (!edges.insert({e.first, e.second}).second)
      throw shape_error("context pair repeats");
  }
  // Sides: observable 0 plus its non-neighbor vs. its two neighbors.
  std::vector<int> nbr, non;
  for (int v = 1; v < 4; ++v) {
    if (edges.count({0, v}))
      nbr.push_back(v);
    else
      non.push_back(v);
  }
  if (nbr.size() != 2 || non.size() != 1 ||
      !edges.count({std::min(non[0], nbr[0]), std::max(non[0], nbr[0])}) ||
      !edges.count({std::min(non[0], nbr[1]), std::max(non[0], nbr[1])}) ||
      edges.count({std::min(nbr[0], nbr[1]), std::max(nbr[0], nbr[1])}))
    throw shape_error("contexts do not form the complete bipartite cover");
  int a = 0, ap = non[0];       // A side in sorted order (0 is globally first)
  int b = nbr[0], bp = nbr[1];  // already sorted since v ascends

  auto correlator = [&](int x, int y) {
    for (std::size_t c = 0; c < s.contexts.size(); ++c) {
      int u = s.observable_index(s.contexts[c][0]);
      int w = s.observable_index(s.contexts[c][1]);
      if (!((u == x && w == y) || (u == y && w == x))) continue;
      double e = 0.0;
      for (int cell = 0; cell < 4; ++cell) {
        int s0 = pm_outcome(s.observables[u].outcomes[cell / 2]);
        int s1 = pm_outcome(s.observables[w].outcomes[cell % 2]);
        e += s0 * s1 * m.tables[c][cell].value;
      }
      return e;
    }
    throw shape_error("missing cross context");
  };
  return correlator(a, b) + correlator(a, bp) + correlator(ap, b) -
         correlator(ap, bp);
}

}  // namespace qframe::contextuality
