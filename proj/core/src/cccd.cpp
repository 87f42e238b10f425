#include <algorithm>
#include <map>
#include <set>

#include "qframe/classifier.hpp"

namespace qframe::classifier {

namespace {

std::string describe(const CommutationWitness& w) {
  auto join = [](const std::vector<std::string>& p) {
    std::string s;
    for (const auto& e : p) {
      if (!s.empty()) s += ";";
      s += e;
    }
    return s;
  };
  return "paths [" + join(w.path_a) + "] and [" + join(w.path_b) +
         "] disagree on " + w.kind + " '" + w.element + "' (" + w.image_a +
         " vs " + w.image_b + ")";
}

// Both maps of a valid infomorphism are bijections iff it is an isomorphism
// (the inverse maps then satisfy the infomorphism condition automatically).
bool is_iso(const Classification& src, const Classification& tgt,
            const Infomorphism& m) {
  if (src.types.size() != tgt.types.size()) return false;
  if (src.tokens.size() != tgt.tokens.size()) return false;
  std::set<std::string> timg, kimg;
  for (const auto& [_, v] : m.type_map) timg.insert(v);
  for (const auto& [_, v] : m.token_map) kimg.insert(v);
  return timg.size() == tgt.types.size() && kimg.size() == src.tokens.size();
}

ClassifierDiagram full_diagram(const CccdCandidate& c) {
  ClassifierDiagram full;
  full.nodes = c.base.nodes;
  full.nodes.push_back(c.core);
  int core_idx = static_cast<int>(full.nodes.size()) - 1;
  // The core may legitimately reuse a base node's id (core = that node);
  // give the appended copy a fresh id since edges reference nodes by index.
  {
    std::set<std::string> node_ids;
    for (const auto& nd : c.base.nodes) node_ids.insert(nd.id);
    while (node_ids.count(full.nodes.back().id))
      full.nodes.back().id += "'";
  }
  full.edges = c.base.edges;
  std::set<std::string> eids;
  for (const auto& e : full.edges) eids.insert(e.id);
  auto fresh = [&](std::string base) {
    std::string id = base;
    int k = 2;
    while (!eids.insert(id).second) id = base + "#" + std::to_string(k++);
    return id;
  };
  for (std::size_t i = 0; i < c.incoming.size(); ++i)
    full.edges.push_back({fresh("f:" + c.base.nodes[i].id),
                          static_cast<int>(i), core_idx, c.incoming[i]});
  for (std::size_t i = 0; i < c.outgoing.size(); ++i)
    full.edges.push_back({fresh("h:" + c.base.nodes[i].id), core_idx,
                          static_cast<int>(i), c.outgoing[i]});
  return full;
}

}  // namespace

CccdReport verify_cccd(const CccdCandidate& c) {
  c.base.validate();
  c.core.validate();
  int n = static_cast<int>(c.base.nodes.size());
  std::vector<Violation> v;
  if (static_cast<int>(c.incoming.size()) != n)
    v.push_back({"/incoming", "expected one arrow per base node"});
  if (static_cast<int>(c.outgoing.size()) != n)
    v.push_back({"/outgoing", "expected one arrow per base node"});
  if (!v.empty()) throw ValidationError(std::move(v));
  for (int i = 0; i < n; ++i) {
    if (c.incoming[i].source_id != c.base.nodes[i].id ||
        c.incoming[i].target_id != c.core.id)
      v.push_back({"/incoming/" + std::to_string(i),
                   "arrow endpoints must be base node -> core"});
    if (c.outgoing[i].source_id != c.core.id ||
        c.outgoing[i].target_id != c.base.nodes[i].id)
      v.push_back({"/outgoing/" + std::to_string(i),
                   "arrow endpoints must be core -> base node"});
  }
  if (!v.empty()) throw ValidationError(std::move(v));

  CccdReport rep;
  rep.arrows_valid = true;
  auto check_arrow = [&](const Classification& s, const Classification& t,
                         const Infomorphism& m, const std::string& label) {
    try {
      auto r = validate_infomorphism(s, t, m);
      if (!r.valid) {
        rep.arrows_valid = false;
        rep.details.push_back(label + " violates the infomorphism condition (" +
                              std::to_string(r.violations.size()) +
                              " failing pairs)");
      }
    } catch (const ValidationError& e) {
      rep.arrows_valid = false;
      rep.details.push_back(label + " is malformed: " + e.what());
    }
  };
  try {
    c.base.validate_edges();
  } catch (const ValidationError& e) {
    rep.arrows_valid = false;
    rep.details.push_back(std::string("base diagram edge invalid: ") +
                          e.what());
  }
  for (int i = 0; i < n; ++i) {
    check_arrow(c.base.nodes[i], c.core, c.incoming[i],
                "incoming arrow from '" + c.base.nodes[i].id + "'");
    check_arrow(c.core, c.base.nodes[i], c.outgoing[i],
                "outgoing arrow to '" + c.base.nodes[i].id + "'");
  }

  if (rep.arrows_valid) {
    auto cr = check_commutes(full_diagram(c));
    rep.full_diagram_commutes = cr.commutes;
    if (!cr.commutes && cr.witness)
      rep.details.push_back("full diagram does not commute: " +
                            describe(*cr.witness));

    auto col = colimit(c.base);
    auto m = mediate_from_colimit(c.base, col, c.core, c.incoming);
    rep.core_is_colimit = m && is_iso(col.object, c.core, *m);
    if (!rep.core_is_colimit)
      rep.details.push_back(
          m ? "mediating map from the canonical colimit is not an isomorphism"
            : "incoming arrows do not factor through the canonical colimit");

    auto lim = limit(c.base);
    auto m2 = mediate_into_limit(c.base, lim, c.core, c.outgoing);
    rep.core_is_limit = m2 && is_iso(c.core, lim.object, *m2);
    if (!rep.core_is_limit)
      rep.details.push_back(
          m2 ? "mediating map into the canonical limit is not an isomorphism"
             : "outgoing arrows do not factor through the canonical limit");
  }

  rep.verdict = rep.arrows_valid && rep.full_diagram_commutes &&
                rep.core_is_colimit && rep.core_is_limit;
  return rep;
}

std::optional<CccdCandidate> complete_cccd_strict(
    const ClassifierDiagram& base) {
  auto col = colimit(base);
  int n = static_cast<int>(base.nodes.size());

  CccdCandidate cand;
  cand.base = base;
  cand.core = col.object;
  cand.incoming = col.cocone;
  for (int i = 0; i < n; ++i) {
    Infomorphism q;  // core -> nodes[i]
    q.source_id = cand.core.id;
    q.target_id = base.nodes[i].id;
    int ct = static_cast<int>(cand.core.types.size());
    for (int cls = 0; cls < ct; ++cls) {
      // The class must restrict to exactly one type of this node.
      int found = -1;
      for (std::size_t a = 0; a < base.nodes[i].types.size(); ++a)
        if (col.type_class[i][a] == cls) {
          if (found >= 0) return std::nullopt;
          found = static_cast<int>(a);
        }
      if (found < 0) return std::nullopt;
      q.type_map[cand.core.types[cls]] = base.nodes[i].types[found];
    }
    for (std::size_t b = 0; b < base.nodes[i].tokens.size(); ++b) {
      // The token must extend to exactly one compatible family.
      int found = -1;
      for (std::size_t f = 0; f < col.family_members.size(); ++f)
        if (col.family_members[f][i] == static_cast<int>(b)) {
          if (found >= 0) return std::nullopt;
          found = static_cast<int>(f);
        }
      if (found < 0) return std::nullopt;
      q.token_map[base.nodes[i].tokens[b]] = cand.core.tokens[found];
    }
    cand.outgoing.push_back(std::move(q));
  }
  if (!verify_cccd(cand).verdict) return std::nullopt;
  return cand;
}

std::optional<std::vector<Infomorphism>> search_outgoing_arrows(
    const ClassifierDiagram& base, const ColimitResult& col,
    std::uint64_t budget) {
  int n = static_cast<int>(base.nodes.size());
  int nfam = static_cast<int>(col.object.tokens.size());
  int ncls = static_cast<int>(col.object.types.size());
  std::vector<Infomorphism> out;

  for (int i = 0; i < n; ++i) {
    const auto& node = base.nodes[i];
    int ntok = static_cast<int>(node.tokens.size());
    if (nfam == 0 && ntok > 0) return std::nullopt;

    // Incidence column of each node type, for pattern lookup.
    std::map<std::vector<bool>, int> column_of;
    for (std::size_t a = 0; a < node.types.size(); ++a) {
      std::vector<bool> col_a(ntok);
      for (int b = 0; b < ntok; ++b) col_a[b] = node.holds(b, a);
      column_of.emplace(col_a, static_cast<int>(a));  // smallest index wins
    }

    // Enumerate token maps Tok(node) -> Tok(core) lexicographically; the
    // first map whose induced class columns all match node types wins.
    std::vector<int> km(ntok, 0);
    bool found = false;
    while (true) {
      if (budget-- == 0)
        throw CapError("outgoing-arrow search budget exhausted");
      std::vector<int> tm(ncls, -1);
      bool ok = true;
      for (int cls = 0; cls < ncls && ok; ++cls) {
        std::vector<bool> pattern(ntok);
        for (int b = 0; b < ntok; ++b)
          pattern[b] = col.object.holds(km[b], cls);
        auto it = column_of.find(pattern);
        if (it == column_of.end()) ok = false;
        else tm[cls] = it->second;
      }
      if (ok) {
        Infomorphism q;
        q.source_id = col.object.id;
        q.target_id = node.id;
        for (int cls = 0; cls < ncls; ++cls)
          q.type_map[col.object.types[cls]] = node.types[tm[cls]];
        for (int b = 0; b < ntok; ++b)
          q.token_map[node.tokens[b]] = col.object.tokens[km[b]];
        out.push_back(std::move(q));
        found = true;
        break;
      }
      // next candidate
      int pos = ntok - 1;
      while (pos >= 0 && km[pos] == nfam - 1) km[pos--] = 0;
      if (pos < 0) break;
      ++km[pos];
    }
    if (ntok == 0 && !found) {
      // No tokens to map; only the class columns (all empty) must match,
      // which requires a type for every class pattern (the empty pattern).
      std::vector<int> tm(ncls, -1);
      bool ok = !node.types.empty() || ncls == 0;
      Infomorphism q;
      q.source_id = col.object.id;
      q.target_id = node.id;
      for (int cls = 0; cls < ncls; ++cls) {
        if (node.types.empty()) { ok = false; break; }
        q.type_map[col.object.types[cls]] = node.types[0];
      }
      if (!ok) return std::nullopt;
      out.push_back(std::move(q));
      found = true;
    }
    if (!found) return std::nullopt;
  }
  return out;
}

MergeResult merge_cores(const CccdCandidate& a, const CccdCandidate& b) {
  auto ra = verify_cccd(a);
  if (!ra.verdict)
    throw ValidationError("/a", "first operand is not a verified structure: " +
                                    (ra.details.empty() ? std::string("?")
                                                        : ra.details[0]));
  auto rb = verify_cccd(b);
  if (!rb.verdict)
    throw ValidationError("/b", "second operand is not a verified structure: " +
                                    (rb.details.empty() ? std::string("?")
                                                        : rb.details[0]));

  // Union of the bases; nodes with equal ids must agree structurally.
  ClassifierDiagram combined;
  std::map<std::string, int> node_at;
  auto add_nodes = [&](const ClassifierDiagram& d, const char* which) {
    for (const auto& nd : d.nodes) {
      auto it = node_at.find(nd.id);
      if (it == node_at.end()) {
        node_at[nd.id] = static_cast<int>(combined.nodes.size());
        combined.nodes.push_back(nd);
      } else {
        const auto& prev = combined.nodes[it->second];
        if (prev.tokens != nd.tokens || prev.types != nd.types ||
            prev.incidence != nd.incidence)
          throw ValidationError(std::string("/") + which,
                                "node '" + nd.id +
                                    "' appears in both bases with different "
                                    "structure");
      }
    }
  };
  add_nodes(a.base, "a");
  add_nodes(b.base, "b");

  std::set<std::string> eids;
  auto add_edges = [&](const ClassifierDiagram& d) {
    for (const auto& e : d.edges) {
      int s = node_at.at(d.nodes[e.source].id);
      int t = node_at.at(d.nodes[e.target].id);
      bool dup = false;
      for (const auto& prev : combined.edges)
        if (prev.source == s && prev.target == t &&
            prev.morphism.type_map == e.morphism.type_map &&
            prev.morphism.token_map == e.morphism.token_map) {
          dup = true;
          break;
        }
      if (dup) continue;
      std::string id = e.id;
      int k = 2;
      while (!eids.insert(id).second) id = e.id + "#" + std::to_string(k++);
      combined.edges.push_back({id, s, t, e.morphism});
    }
  };
  add_edges(a.base);
  add_edges(b.base);

  MergeResult res;
  auto cr = check_commutes(combined);
  if (!cr.commutes) {
    res.merged = false;
    res.error =
        "cores are not co-deployable: the combined diagram does not commute";
    res.witness = cr.witness;
    return res;
  }

  if (auto strict = complete_cccd_strict(combined)) {
    res.merged = true;
    res.strict = true;
    res.combined = std::move(*strict);
    return res;
  }

  auto col = colimit(combined);
  if (auto arrows = search_outgoing_arrows(combined, col)) {
    CccdCandidate cand;
    cand.base = combined;
    cand.core = col.object;
    cand.incoming = col.cocone;
    cand.outgoing = std::move(*arrows);
    res.merged = true;
    res.strict = false;
    res.combined = std::move(cand);
    return res;
  }

  res.merged = false;
  res.error =
      "combined diagram commutes but no valid outgoing arrows were found "
      "within the search budget";
  return res;
}

}  // namespace qframe::classifier
