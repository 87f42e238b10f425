#include <algorithm>
#include <cmath>
#include <set>

#include "qframe/experiments.hpp"

namespace qframe::experiments {

namespace {

struct EmbeddedObs {
  std::string label;
  quantum::Observable obs;
  quantum::Matrix full;  // embedded into the state layout
};

std::vector<EmbeddedObs> embed_agent(const quantum::PureState& s,
                                     const std::vector<AgentComponent>& agent) {
  std::set<std::string> ids;
  std::vector<EmbeddedObs> out;
  for (const auto& comp : agent) {
    if (comp.id.empty())
      throw ValidationError("/agent", "component id is empty");
    if (!ids.insert(comp.id).second)
      throw ValidationError("/agent",
                            "component id '" + comp.id + "' repeats");
    comp.qrf.validate();
    for (std::size_t k = 0; k < comp.qrf.observables.size(); ++k) {
      const auto& o = comp.qrf.observables[k];
      out.push_back({comp.id + ":" + std::to_string(k), o,
                     quantum::embed(s.layout, o.sector, o.matrix)});
    }
  }
  return out;
}

// Maximal cliques of the commutation graph, vertices in index order.
void bron_kerbosch(const std::vector<std::vector<bool>>& adj,
                   std::vector<int>& r, std::vector<int> p, std::vector<int> x,
                   std::vector<std::vector<int>>& cliques, std::size_t cap) {
  if (p.empty() && x.empty()) {
    if (r.size() >= 2) {
      if (cliques.size() >= cap)
        throw CapError("agent context enumeration exceeds " +
                       std::to_string(cap) + " maximal commuting sets");
      cliques.push_back(r);
    }
    return;
  }
  while (!p.empty()) {
    int v = p.front();
    std::vector<int> pn, xn;
    for (int u : p)
      if (adj[v][u]) pn.push_back(u);
    for (int u : x)
      if (adj[v][u]) xn.push_back(u);
    r.push_back(v);
    bron_kerbosch(adj, r, pn, xn, cliques, cap);
    r.pop_back();
    p.erase(p.begin());
    x.push_back(v);
  }
}

}  // namespace

AgentStats agent_statistics(const quantum::PureState& s,
                            const std::vector<AgentComponent>& agent) {
  s.validate();
  auto embedded = embed_agent(s, agent);
  AgentStats stats;

  auto record = [&](const std::vector<int>& members) {
    std::vector<quantum::Observable> obs;
    std::string ctx;
    for (int idx : members) {
      obs.push_back(embedded[idx].obs);
      ctx += (ctx.empty() ? "" : ",") + embedded[idx].label;
    }
    auto dist = quantum::measure(s, obs, quantum::MeasureMode::joint);
    for (const auto& o : dist) {
      std::string key = "ctx(" + ctx + ")=";
      for (std::size_t k = 0; k < o.outcomes.size(); ++k)
        key += (k ? "," : "") + std::string(o.outcomes[k] > 0 ? "+1" : "-1");
      stats.labels.push_back(key);
      stats.values.push_back(o.probability);
    }
  };

  for (std::size_t i = 0; i < embedded.size(); ++i)
    record({static_cast<int>(i)});

  int n = static_cast<int>(embedded.size());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double defect = (embedded[i].full * embedded[j].full -
                       embedded[j].full * embedded[i].full)
                          .norm();
      adj[i][j] = adj[j][i] = defect <= quantum::kTolCommute;
    }
  std::vector<std::vector<int>> cliques;
  std::vector<int> r, p, x;
  for (int i = 0; i < n; ++i) p.push_back(i);
  bron_kerbosch(adj, r, p, x, cliques, 4096);
  for (auto& clique : cliques) {
    std::sort(clique.begin(), clique.end());
  }
  std::sort(cliques.begin(), cliques.end());
  for (const auto& clique : cliques) record(clique);
  return stats;
}

void QfpInstance::validate() const {
  environment.validate();
  std::vector<Violation> v;
  std::set<std::string> ids;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    std::string at = "/components/" + std::to_string(c);
    if (comp.id.empty()) v.push_back({at, "component id is empty"});
    if (!ids.insert(comp.id).second)
      v.push_back({at, "component id '" + comp.id + "' repeats"});
    try {
      comp.qrf.validate();
    } catch (const ValidationError& e) {
      for (const auto& viol : e.violations())
        v.push_back({at + viol.pointer, viol.message});
    }
    for (const auto& lbl : comp.qrf.sector)
      if (environment.layout.position(lbl) < 0)
        v.push_back({at, "sector label '" + lbl +
                             "' is outside the environment layout"});
  }
  std::set<std::string> tgts;
  long dim = 1;
  for (const auto& lbl : action.targets) {
    int pos = environment.layout.position(lbl);
    if (pos < 0)
      v.push_back({"/action/targets",
                   "target label '" + lbl + "' is outside the layout"});
    else
      dim *= environment.layout.dims[pos];
    if (!tgts.insert(lbl).second)
      v.push_back({"/action/targets", "target label '" + lbl + "' repeats"});
  }
  if (action.unitary.rows() != action.unitary.cols() ||
      action.unitary.rows() != dim)
    v.push_back({"/action/unitary",
                 "unitary must be square over the target subspace (dim " +
                     std::to_string(dim) + ")"});
  else if ((action.unitary.adjoint() * action.unitary -
            quantum::Matrix::Identity(dim, dim))
               .norm() > 1e-10)
    v.push_back({"/action/unitary", "matrix is not unitary within 1e-10"});
  if (!v.empty()) throw ValidationError(std::move(v));
}

bool naive_stat_diff(const AgentStats& before, const AgentStats& after) {
  double worst = 0.0;
  for (std::size_t i = 0; i < before.values.size(); ++i)
    worst = std::max(worst, std::abs(before.values[i] - after.values[i]));
  return worst > 1e-9;
}

QfpTrialResult run_qfp_trial(const QfpInstance& instance,
                             const AgentStrategy& strategy) {
  instance.validate();
  QfpTrialResult out;

  auto before = agent_statistics(instance.environment, instance.components);
  out.entropy_before =
      quantum::entanglement_entropy(instance.environment).bits;

  auto after_state = quantum::apply_unitary(
      instance.environment, instance.action.targets, instance.action.unitary);
  auto after = agent_statistics(after_state, instance.components);
  out.entropy_after = quantum::entanglement_entropy(after_state).bits;

  for (std::size_t i = 0; i < before.values.size(); ++i)
    out.max_stat_change = std::max(
        out.max_stat_change, std::abs(before.values[i] - after.values[i]));

  out.truth_changed =
      std::abs(out.entropy_after - out.entropy_before) > 1e-9;
  out.agent_changed =
      strategy ? strategy(before, after) : naive_stat_diff(before, after);
  if (out.truth_changed == out.agent_changed)
    out.classification = "correct";
  else if (out.truth_changed)
    out.classification = "false-negative";
  else
    out.classification = "false-positive";
  return out;
}

namespace {

quantum::PureState four_qubit(const std::vector<std::complex<double>>& amps) {
  quantum::PureState s;
  s.layout.labels = {"1", "2", "3", "4"};
  s.layout.dims = {2, 2, 2, 2};
  s.amplitudes = quantum::Vector::Zero(16);
  for (std::size_t i = 0; i < amps.size(); ++i) s.amplitudes(i) = amps[i];
  return s;
}

quantum::PureState two_qubit(std::initializer_list<double> amps) {
  quantum::PureState s;
  s.layout.labels = {"1", "2"};
  s.layout.dims = {2, 2};
  s.amplitudes = quantum::Vector::Zero(4);
  int i = 0;
  for (double a : amps) s.amplitudes(i++) = a;
  return s;
}

struct Family {
  std::string key;
  quantum::PureState a;
  quantum::PureState b;
};

std::vector<Family> catalog() {
  const double h = 0.5;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Family> fams;
  // Bell pair on 1,2 with either a second Bell pair or |00> on 3,4: the
  // reduced state on 1,2 is identical, the full entanglement differs.
  std::vector<std::complex<double>> bell_bell(16, 0.0);
  std::vector<std::complex<double>> bell_zero(16, 0.0);
  // Index = 8 d1 + 4 d2 + 2 d3 + d4.
  for (int u : {0, 1})
    for (int v : {0, 1}) bell_bell[8 * u + 4 * u + 2 * v + v] = h;
  bell_zero[0] = r;
  bell_zero[8 + 4] = r;
  fams.push_back({"bell-tail", four_qubit(bell_bell), four_qubit(bell_zero)});
  // Equal computational-basis diagonals, different Schmidt structure.
  fams.push_back({"diagonal-blind", two_qubit({h, h, h, h}),
                  two_qubit({h, h, h, -h})});
  // Same single-qubit marginals but the same entropy too: the pair every
  // verifier must reject.
  quantum::PureState ghz;
  ghz.layout.labels = {"1", "2", "3"};
  ghz.layout.dims = {2, 2, 2};
  ghz.amplitudes = quantum::Vector::Zero(8);
  ghz.amplitudes(0) = r;
  ghz.amplitudes(7) = r;
  fams.push_back({"ghz-vs-bell", two_qubit({r, 0, 0, r}), ghz});
  return fams;
}

AdversarialPair try_family(const Family& fam,
                           const std::vector<AgentComponent>& agent,
                           std::string& why_not) {
  AdversarialPair pair;
  pair.family = fam.key;
  pair.state_a = fam.a;
  pair.state_b = fam.b;
  pair.agent = agent;
  AgentStats sa, sb;
  try {
    sa = agent_statistics(fam.a, agent);
    sb = agent_statistics(fam.b, agent);
  } catch (const ValidationError& e) {
    why_not = "agent does not fit the family layout (" +
              std::string(e.what()) + ")";
    throw ValidationError("/agent", "family '" + fam.key + "': " + why_not);
  }
  for (std::size_t i = 0; i < sa.values.size(); ++i)
    pair.max_discrepancy = std::max(
        pair.max_discrepancy, std::abs(sa.values[i] - sb.values[i]));
  double ea = quantum::entanglement_entropy(fam.a).bits;
  double eb = quantum::entanglement_entropy(fam.b).bits;
  pair.delta_s_bits = std::abs(ea - eb);
  if (pair.max_discrepancy > 1e-9) {
    why_not = "agent statistics separate the two states (max discrepancy " +
              std::to_string(pair.max_discrepancy) + ")";
    throw ValidationError("/agent", "family '" + fam.key + "': " + why_not);
  }
  if (pair.delta_s_bits < 1.0 - 1e-9) {
    why_not = "entropy gap is only " + std::to_string(pair.delta_s_bits) +
              " bits";
    throw ValidationError("/agent", "family '" + fam.key + "': " + why_not);
  }
  return pair;
}

}  // namespace

AdversarialPair construct_adversarial_pair(
    const std::vector<AgentComponent>& agent, const std::string& catalog_key) {
  auto fams = catalog();
  if (catalog_key != "auto") {
    for (const auto& fam : fams)
      if (fam.key == catalog_key) {
        std::string why;
        return try_family(fam, agent, why);
      }
    throw ValidationError("/family",
                          "unknown catalog family '" + catalog_key + "'");
  }
  std::string reasons;
  for (const auto& fam : fams) {
    std::string why;
    try {
      return try_family(fam, agent, why);
    } catch (const ValidationError&) {
      reasons += (reasons.empty() ? "" : "; ") + fam.key + ": " + why;
    }
  }
  throw ValidationError("/agent",
                        "no catalog family defeats the given QRFs (" +
                            reasons + ")");
}

}  // namespace qframe::experiments
