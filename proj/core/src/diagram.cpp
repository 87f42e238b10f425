#include <deque>
#include <map>
#include <set>

#include "qframe/classifier.hpp"

namespace qframe::classifier {

int ClassifierDiagram::node_index(const std::string& id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<int>(i);
  return -1;
}

void ClassifierDiagram::validate() const {
  std::vector<Violation> v;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    try {
      nodes[i].validate();
    } catch (const ValidationError& e) {
      for (const auto& w : e.violations())
        v.push_back({"/nodes/" + std::to_string(i) + w.pointer, w.message});
    }
    if (!ids.insert(nodes[i].id).second)
      v.push_back({"/nodes/" + std::to_string(i),
                   "duplicate node id '" + nodes[i].id + "'"});
  }
  std::set<std::string> eids;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    std::string p = "/edges/" + std::to_string(i);
    if (!eids.insert(e.id).second)
      v.push_back({p, "duplicate edge id '" + e.id + "'"});
    if (e.source < 0 || e.source >= static_cast<int>(nodes.size()))
      v.push_back({p + "/source", "node index out of range"});
    if (e.target < 0 || e.target >= static_cast<int>(nodes.size()))
      v.push_back({p + "/target", "node index out of range"});
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

void ClassifierDiagram::validate_edges() const {
  validate();
  std::vector<Violation> v;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    try {
      auto rep =
          validate_infomorphism(nodes[e.source], nodes[e.target], e.morphism);
      if (!rep.valid)
        v.push_back({"/edges/" + std::to_string(i),
                     "edge '" + e.id + "' violates the infomorphism condition (" +
                         std::to_string(rep.violations.size()) +
                         " failing pairs, first at token '" +
                         rep.violations[0].token + "', type '" +
                         rep.violations[0].type + "')"});
    } catch (const ValidationError& err) {
      for (const auto& w : err.violations())
        v.push_back({"/edges/" + std::to_string(i) + w.pointer, w.message});
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

namespace {

struct ResolvedEdge {
  int src, tgt;
  std::vector<int> tmap;  // Typ(src) -> Typ(tgt)
  std::vector<int> kmap;  // Tok(tgt) -> Tok(src)
};

// Composite of a nonempty edge walk, reduced to index maps.
struct Composite {
  int src, tgt;
  std::vector<int> tmap;
  std::vector<int> kmap;
  std::vector<int> walk;  // edge indices
};

std::vector<ResolvedEdge> resolve_edges(const ClassifierDiagram& d) {
  std::vector<ResolvedEdge> out;
  out.reserve(d.edges.size());
  for (const auto& e : d.edges) {
    const auto& A = d.nodes[e.source];
    const auto& B = d.nodes[e.target];
    ResolvedEdge r{e.source, e.target, {}, {}};
    r.tmap.resize(A.types.size());
    r.kmap.resize(B.tokens.size());
    for (std::size_t a = 0; a < A.types.size(); ++a)
      r.tmap[a] = B.type_index(e.morphism.type_map.at(A.types[a]));
    for (std::size_t b = 0; b < B.tokens.size(); ++b)
      r.kmap[b] = A.token_index(e.morphism.token_map.at(B.tokens[b]));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> edge_ids(const ClassifierDiagram& d,
                                  const std::vector<int>& walk) {
  std::vector<std::string> out;
  for (int e : walk) out.push_back(d.edges[e].id);
  return out;
}

}  // namespace

CommutationReport check_commutes(const ClassifierDiagram& d) {
  d.validate();
  // Edge maps must at least be total to compose walks.
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    const auto& A = d.nodes[e.source];
    const auto& B = d.nodes[e.target];
    std::vector<Violation> v;
    for (const auto& t : A.types)
      if (!e.morphism.type_map.count(t) ||
          B.type_index(e.morphism.type_map.at(t)) < 0)
        v.push_back({"/edges/" + std::to_string(i) + "/typeMap",
                     "no image in '" + B.id + "' for type '" + t + "'"});
    for (const auto& t : B.tokens)
      if (!e.morphism.token_map.count(t) ||
          A.token_index(e.morphism.token_map.at(t)) < 0)
        v.push_back({"/edges/" + std::to_string(i) + "/tokenMap",
                     "no image in '" + A.id + "' for token '" + t + "'"});
    if (!v.empty()) throw ValidationError(std::move(v));
  }

  auto edges = resolve_edges(d);
  // Outgoing adjacency in edge-index order keeps the search deterministic.
  std::vector<std::vector<int>> out(d.nodes.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    out[edges[i].src].push_back(static_cast<int>(i));

  // At most one composite may exist per (src, tgt); a second distinct one is
  // a witness.  Equal composites extend equally, so dropping them is safe,
  // and this also bounds the search: each of the n^2 slots fills once.
  std::map<std::pair<int, int>, Composite> slot;
  std::deque<std::pair<int, int>> queue;

  auto submit = [&](Composite c) -> std::optional<CommutationWitness> {
    auto key = std::make_pair(c.src, c.tgt);
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, std::move(c));
      queue.push_back(key);
      return std::nullopt;
    }
    const Composite& prev = it->second;
    if (prev.tmap == c.tmap && prev.kmap == c.kmap) return std::nullopt;
    CommutationWitness w;
    w.path_a = edge_ids(d, prev.walk);
    w.path_b = edge_ids(d, c.walk);
    const auto& A = d.nodes[c.src];
    const auto& B = d.nodes[c.tgt];
    for (std::size_t a = 0; a < prev.tmap.size(); ++a)
      if (prev.tmap[a] != c.tmap[a]) {
        w.kind = "type";
        w.element = A.types[a];
        w.image_a = B.types[prev.tmap[a]];
        w.image_b = B.types[c.tmap[a]];
        return w;
      }
    for (std::size_t b = 0; b < prev.kmap.size(); ++b)
      if (prev.kmap[b] != c.kmap[b]) {
        w.kind = "token";
        w.element = B.tokens[b];
        w.image_a = A.tokens[prev.kmap[b]];
        w.image_b = A.tokens[c.kmap[b]];
        return w;
      }
    return std::nullopt;  // unreachable
  };

  for (std::size_t i = 0; i < edges.size(); ++i) {
    Composite c{edges[i].src, edges[i].tgt, edges[i].tmap, edges[i].kmap,
                {static_cast<int>(i)}};
    if (auto w = submit(std::move(c))) return {false, std::move(w)};
  }
  while (!queue.empty()) {
    auto key = queue.front();
    queue.pop_front();
    Composite base = slot.at(key);  // copy: slot may rehash while extending
    for (int ei : out[base.tgt]) {
      const auto& e = edges[ei];
      Composite c;
      c.src = base.src;
      c.tgt = e.tgt;
      c.tmap.resize(base.tmap.size());
      for (std::size_t a = 0; a < base.tmap.size(); ++a)
        c.tmap[a] = e.tmap[base.tmap[a]];
      c.kmap.resize(e.kmap.size());
      for (std::size_t b = 0; b < e.kmap.size(); ++b)
        c.kmap[b] = base.kmap[e.kmap[b]];
      c.walk = base.walk;
      c.walk.push_back(ei);
      if (auto w = submit(std::move(c))) return {false, std::move(w)};
    }
  }
  return {true, std::nullopt};
}

}  // namespace qframe::classifier
