#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "qframe/classifier.hpp"

namespace qframe::classifier {

namespace {

constexpr std::uint64_t kFamilyCap = 5000000;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Keeps the smaller index as representative so class order is canonical.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent[b] = a;
    else parent[a] = b;
  }
};

struct ResolvedEdge {
  int src, tgt;
  std::vector<int> tmap;  // Typ(src) -> Typ(tgt)
  std::vector<int> kmap;  // Tok(tgt) -> Tok(src)
};

std::vector<ResolvedEdge> resolve_edges(const ClassifierDiagram& d) {
  std::vector<ResolvedEdge> out;
  for (const auto& e : d.edges) {
    const auto& A = d.nodes[e.source];
    const auto& B = d.nodes[e.target];
    ResolvedEdge r{e.source, e.target, {}, {}};
    for (const auto& t : A.types)
      r.tmap.push_back(B.type_index(e.morphism.type_map.at(t)));
    for (const auto& t : B.tokens)
      r.kmap.push_back(A.token_index(e.morphism.token_map.at(t)));
    out.push_back(std::move(r));
  }
  return out;
}

std::string unique_name(std::string base, std::set<std::string>& used) {
  std::string name = base;
  int k = 2;
  while (!used.insert(name).second) name = base + "#" + std::to_string(k++);
  return name;
}

std::string joined_ids(const ClassifierDiagram& d) {
  std::string s;
  for (const auto& n : d.nodes) {
    if (!s.empty()) s += ",";
    s += n.id;
  }
  return s;
}

// Enumerates all edge-compatible families of one element per node, where an
// edge (i -> j, emap: elems(j) -> elems(i)) constrains pick[i] ==
// emap[pick[j]].  `sizes[i]` counts node i's elements.  Families come back in
// lexicographic order of the pick vector.
std::vector<std::vector<int>> compatible_families(
    const std::vector<int>& sizes,
    const std::vector<std::array<int, 2>>& constraint_nodes,
    const std::vector<const std::vector<int>*>& constraint_maps) {
  std::uint64_t product = 1;
  for (int s : sizes) {
    product *= static_cast<std::uint64_t>(std::max(s, 1));
    if (product > kFamilyCap)
      throw CapError("family enumeration exceeds cap of " +
                     std::to_string(kFamilyCap) + " candidates");
  }
  int n = static_cast<int>(sizes.size());
  // Constraints indexed by the later of their two endpoints, so each is
  // checked as soon as both picks exist.
  std::vector<std::vector<int>> by_node(n);
  for (std::size_t c = 0; c < constraint_nodes.size(); ++c) {
    int later = std::max(constraint_nodes[c][0], constraint_nodes[c][1]);
    by_node[later].push_back(static_cast<int>(c));
  }
  std::vector<std::vector<int>> families;
  std::vector<int> pick(n, 0);
  // Depth-first over nodes in order.
  std::vector<int> depth_choice(n, -1);
  int depth = 0;
  if (n == 0) return {{}};
  while (depth >= 0) {
    if (depth == n) {
      families.push_back(pick);
      --depth;
      continue;
    }
    int next = depth_choice[depth] + 1;
    if (sizes[depth] == 0 || next >= sizes[depth]) {
      depth_choice[depth] = -1;
      --depth;
      continue;
    }
    depth_choice[depth] = next;
    pick[depth] = next;
    bool ok = true;
    for (int c : by_node[depth]) {
      int i = constraint_nodes[c][0], j = constraint_nodes[c][1];
      if (pick[i] != (*constraint_maps[c])[pick[j]]) {
        ok = false;
        break;
      }
    }
    if (ok) ++depth;
  }
  return families;
}

}  // namespace

ColimitResult colimit(const ClassifierDiagram& d) {
  d.validate_edges();
  auto edges = resolve_edges(d);
  int n = static_cast<int>(d.nodes.size());

  // Glue types: (i, a) ~ (j, tmap[a]) for every edge i -> j.
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i)
    offset[i + 1] = offset[i] + static_cast<int>(d.nodes[i].types.size());
  UnionFind uf(offset[n]);
  for (const auto& e : edges)
    for (std::size_t a = 0; a < e.tmap.size(); ++a)
      uf.unite(offset[e.src] + static_cast<int>(a), offset[e.tgt] + e.tmap[a]);

  std::map<int, int> class_of_root;  // root -> colim type index, in root order
  for (int g = 0; g < offset[n]; ++g) {
    int r = uf.find(g);
    if (!class_of_root.count(r)) {
      int next = static_cast<int>(class_of_root.size());
      class_of_root[r] = next;
    }
  }
  // Roots are minimal members, and std::map iterates them in increasing
  // order, but insertion order above already follows global index order; fix
  // indices so colim type k corresponds to the k-th distinct root seen.
  std::vector<int> root_of_class(class_of_root.size());
  for (const auto& [root, cls] : class_of_root) root_of_class[cls] = root;
  // Reorder classes by representative global index for a canonical layout.
  std::sort(root_of_class.begin(), root_of_class.end());
  for (std::size_t c = 0; c < root_of_class.size(); ++c)
    class_of_root[root_of_class[c]] = static_cast<int>(c);

  ColimitResult res;
  res.type_class.resize(n);
  for (int i = 0; i < n; ++i) {
    res.type_class[i].resize(d.nodes[i].types.size());
    for (std::size_t a = 0; a < d.nodes[i].types.size(); ++a)
      res.type_class[i][a] =
          class_of_root.at(uf.find(offset[i] + static_cast<int>(a)));
  }

  std::set<std::string> used;
  std::vector<std::string> class_names(root_of_class.size());
  for (std::size_t c = 0; c < root_of_class.size(); ++c) {
    int g = root_of_class[c];
    int node = static_cast<int>(std::upper_bound(offset.begin(), offset.end(),
                                                 g) -
                                offset.begin()) -
               1;
    class_names[c] = unique_name(
        d.nodes[node].id + ":" + d.nodes[node].types[g - offset[node]], used);
  }

  // Tokens: edge-compatible families, one token per node.
  std::vector<int> sizes;
  for (const auto& nd : d.nodes)
    sizes.push_back(static_cast<int>(nd.tokens.size()));
  std::vector<std::array<int, 2>> cnodes;
  std::vector<const std::vector<int>*> cmaps;
  for (const auto& e : edges) {
    cnodes.push_back({e.src, e.tgt});  // pick[src] == kmap[pick[tgt]]
    cmaps.push_back(&e.kmap);
  }
  res.family_members = compatible_families(sizes, cnodes, cmaps);

  Classification obj;
  obj.id = "colim(" + joined_ids(d) + ")";
  obj.types = class_names;
  std::set<std::string> tok_used;
  for (const auto& fam : res.family_members) {
    std::string name;
    for (int i = 0; i < n; ++i) {
      if (!name.empty()) name += "|";
      name += d.nodes[i].id + "=" + d.nodes[i].tokens[fam[i]];
    }
    if (n == 0) name = "()";
    obj.tokens.push_back(unique_name(name, tok_used));
  }
  obj.incidence.assign(obj.tokens.size(),
                       std::vector<bool>(obj.types.size(), false));
  for (std::size_t f = 0; f < res.family_members.size(); ++f)
    for (std::size_t c = 0; c < root_of_class.size(); ++c) {
      int g = root_of_class[c];
      int node = static_cast<int>(std::upper_bound(offset.begin(),
                                                   offset.end(), g) -
                                  offset.begin()) -
                 1;
      // Any class member gives the same answer on a compatible family; use
      // the representative.
      obj.incidence[f][c] =
          d.nodes[node].holds(res.family_members[f][node], g - offset[node]);
    }
  res.object = std::move(obj);

  for (int i = 0; i < n; ++i) {
    Infomorphism can;
    can.source_id = d.nodes[i].id;
    can.target_id = res.object.id;
    for (std::size_t a = 0; a < d.nodes[i].types.size(); ++a)
      can.type_map[d.nodes[i].types[a]] = class_names[res.type_class[i][a]];
    for (std::size_t f = 0; f < res.family_members.size(); ++f)
      can.token_map[res.object.tokens[f]] =
          d.nodes[i].tokens[res.family_members[f][i]];
    res.cocone.push_back(std::move(can));
  }
  return res;
}

LimitResult limit(const ClassifierDiagram& d) {
  d.validate_edges();
  auto edges = resolve_edges(d);
  int n = static_cast<int>(d.nodes.size());

  // Glue tokens: (j, b) ~ (i, kmap[b]) for every edge i -> j.
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i)
    offset[i + 1] = offset[i] + static_cast<int>(d.nodes[i].tokens.size());
  UnionFind uf(offset[n]);
  for (const auto& e : edges)
    for (std::size_t b = 0; b < e.kmap.size(); ++b)
      uf.unite(offset[e.tgt] + static_cast<int>(b), offset[e.src] + e.kmap[b]);

  std::map<int, int> class_of_root;
  for (int g = 0; g < offset[n]; ++g) {
    int r = uf.find(g);
    if (!class_of_root.count(r)) {
      int next = static_cast<int>(class_of_root.size());
      class_of_root[r] = next;
    }
  }
  std::vector<int> root_of_class(class_of_root.size());
  for (const auto& [root, cls] : class_of_root) root_of_class[cls] = root;
  std::sort(root_of_class.begin(), root_of_class.end());
  for (std::size_t c = 0; c < root_of_class.size(); ++c)
    class_of_root[root_of_class[c]] = static_cast<int>(c);

  LimitResult res;
  res.token_class.resize(n);
  for (int i = 0; i < n; ++i) {
    res.token_class[i].resize(d.nodes[i].tokens.size());
    for (std::size_t b = 0; b < d.nodes[i].tokens.size(); ++b)
      res.token_class[i][b] =
          class_of_root.at(uf.find(offset[i] + static_cast<int>(b)));
  }

  std::set<std::string> used;
  std::vector<std::string> class_names(root_of_class.size());
  for (std::size_t c = 0; c < root_of_class.size(); ++c) {
    int g = root_of_class[c];
    int node = static_cast<int>(std::upper_bound(offset.begin(), offset.end(),
                                                 g) -
                                offset.begin()) -
               1;
    class_names[c] = unique_name(
        d.nodes[node].id + "." + d.nodes[node].tokens[g - offset[node]], used);
  }

  // Types: edge-compatible families, pick[tgt] == tmap[pick[src]], i.e. the
  // later-constrained form pick[j] = tmap[pick[i]] for an edge i -> j.  The
  // shared enumerator wants constraints as pick[x] == map[pick[y]]; here
  // x = tgt, y = src with the forward map inverted per element, so instead
  // supply the constraint through a reversed lookup table when invertible is
  // not guaranteed: enumerate with a direct check instead.
  std::vector<int> sizes;
  for (const auto& nd : d.nodes)
    sizes.push_back(static_cast<int>(nd.types.size()));
  std::uint64_t product = 1;
  for (int s : sizes) {
    product *= static_cast<std::uint64_t>(std::max(s, 1));
    if (product > 5000000)
      throw CapError("family enumeration exceeds cap of 5000000 candidates");
  }
  std::vector<std::vector<int>> families;
  if (n == 0) {
    families.push_back({});
  } else {
    std::vector<std::vector<int>> by_node(n);
    for (std::size_t e = 0; e < edges.size(); ++e)
      by_node[std::max(edges[e].src, edges[e].tgt)].push_back(
          static_cast<int>(e));
    std::vector<int> pick(n, 0), choice(n, -1);
    int depth = 0;
    while (depth >= 0) {
      if (depth == n) {
        families.push_back(pick);
        --depth;
        continue;
      }
      int next = choice[depth] + 1;
      if (sizes[depth] == 0 || next >= sizes[depth]) {
        choice[depth] = -1;
        --depth;
        continue;
      }
      choice[depth] = next;
      pick[depth] = next;
      bool ok = true;
      for (int ei : by_node[depth]) {
        const auto& e = edges[ei];
        if (pick[e.tgt] != e.tmap[pick[e.src]]) {
          ok = false;
          break;
        }
      }
      if (ok) ++depth;
    }
  }
  res.family_members = families;

  Classification obj;
  obj.id = "lim(" + joined_ids(d) + ")";
  obj.tokens = class_names;
  std::set<std::string> typ_used;
  for (const auto& fam : res.family_members) {
    std::string name;
    for (int i = 0; i < n; ++i) {
      if (!name.empty()) name += "|";
      name += d.nodes[i].id + "=" + d.nodes[i].types[fam[i]];
    }
    if (n == 0) name = "()";
    obj.types.push_back(unique_name(name, typ_used));
  }
  obj.incidence.assign(obj.tokens.size(),
                       std::vector<bool>(obj.types.size(), false));
  for (std::size_t c = 0; c < root_of_class.size(); ++c) {
    int g = root_of_class[c];
    int node = static_cast<int>(std::upper_bound(offset.begin(), offset.end(),
                                                 g) -
                                offset.begin()) -
               1;
    for (std::size_t f = 0; f < res.family_members.size(); ++f)
      obj.incidence[c][f] =
          d.nodes[node].holds(g - offset[node], res.family_members[f][node]);
  }
  res.object = std::move(obj);

  for (int i = 0; i < n; ++i) {
    Infomorphism pr;  // limit -> nodes[i]
    pr.source_id = res.object.id;
    pr.target_id = d.nodes[i].id;
    for (std::size_t f = 0; f < res.family_members.size(); ++f)
      pr.type_map[res.object.types[f]] =
          d.nodes[i].types[res.family_members[f][i]];
    for (std::size_t b = 0; b < d.nodes[i].tokens.size(); ++b)
      pr.token_map[d.nodes[i].tokens[b]] =
          res.object.tokens[res.token_class[i][b]];
    res.cone.push_back(std::move(pr));
  }
  return res;
}

std::optional<Infomorphism> mediate_from_colimit(
    const ClassifierDiagram& d, const ColimitResult& col,
    const Classification& other,
    const std::vector<Infomorphism>& other_cocone) {
  int n = static_cast<int>(d.nodes.size());
  if (static_cast<int>(other_cocone.size()) != n)
    throw ValidationError("", "cocone must have one arrow per diagram node");
  for (int i = 0; i < n; ++i)
    if (other_cocone[i].source_id != d.nodes[i].id ||
        other_cocone[i].target_id != other.id)
      throw ValidationError("/cocone/" + std::to_string(i),
                            "arrow endpoints do not match the diagram");

  int ct = static_cast<int>(col.object.types.size());
  std::vector<int> tmap(ct, -1);  // colim type -> other type
  for (int i = 0; i < n; ++i)
    for (std::size_t a = 0; a < d.nodes[i].types.size(); ++a) {
      auto it = other_cocone[i].type_map.find(d.nodes[i].types[a]);
      if (it == other_cocone[i].type_map.end()) return std::nullopt;
      int img = other.type_index(it->second);
      if (img < 0) return std::nullopt;
      int cls = col.type_class[i][a];
      if (tmap[cls] < 0) tmap[cls] = img;
      else if (tmap[cls] != img) return std::nullopt;  // cocone incoherent
    }
  for (int x : tmap)
    if (x < 0) return std::nullopt;

  Infomorphism m;
  m.source_id = col.object.id;
  m.target_id = other.id;
  for (int c = 0; c < ct; ++c)
    m.type_map[col.object.types[c]] = other.types[tmap[c]];
  for (std::size_t t = 0; t < other.tokens.size(); ++t) {
    std::vector<int> fam(n);
    for (int i = 0; i < n; ++i) {
      auto it = other_cocone[i].token_map.find(other.tokens[t]);
      if (it == other_cocone[i].token_map.end()) return std::nullopt;
      int tok = d.nodes[i].token_index(it->second);
      if (tok < 0) return std::nullopt;
      fam[i] = tok;
    }
    auto pos = std::find(col.family_members.begin(), col.family_members.end(),
                         fam);
    if (pos == col.family_members.end()) return std::nullopt;
    m.token_map[other.tokens[t]] =
        col.object
            .tokens[static_cast<std::size_t>(pos - col.family_members.begin())];
  }
  if (!validate_infomorphism(col.object, other, m).valid) return std::nullopt;
  return m;
}

std::optional<Infomorphism> mediate_into_limit(
    const ClassifierDiagram& d, const LimitResult& lim,
    const Classification& other, const std::vector<Infomorphism>& other_cone) {
  int n = static_cast<int>(d.nodes.size());
  if (static_cast<int>(other_cone.size()) != n)
    throw ValidationError("", "cone must have one arrow per diagram node");
  for (int i = 0; i < n; ++i)
    if (other_cone[i].source_id != other.id ||
        other_cone[i].target_id != d.nodes[i].id)
      throw ValidationError("/cone/" + std::to_string(i),
                            "arrow endpoints do not match the diagram");

  Infomorphism m;
  m.source_id = other.id;
  m.target_id = lim.object.id;
  for (std::size_t t = 0; t < other.types.size(); ++t) {
    std::vector<int> fam(n);
    for (int i = 0; i < n; ++i) {
      auto it = other_cone[i].type_map.find(other.types[t]);
      if (it == other_cone[i].type_map.end()) return std::nullopt;
      int typ = d.nodes[i].type_index(it->second);
      if (typ < 0) return std::nullopt;
      fam[i] = typ;
    }
    auto pos = std::find(lim.family_members.begin(), lim.family_members.end(),
                         fam);
    if (pos == lim.family_members.end()) return std::nullopt;
    m.type_map[other.types[t]] =
        lim.object
            .types[static_cast<std::size_t>(pos - lim.family_members.begin())];
  }
  int cl = static_cast<int>(lim.object.tokens.size());
  std::vector<int> kmap(cl, -1);  // lim token -> other token
  for (int i = 0; i < n; ++i)
    for (std::size_t b = 0; b < d.nodes[i].tokens.size(); ++b) {
      auto it = other_cone[i].token_map.find(d.nodes[i].tokens[b]);
      if (it == other_cone[i].token_map.end()) return std::nullopt;
      int img = other.token_index(it->second);
      if (img < 0) return std::nullopt;
      int cls = lim.token_class[i][b];
      if (kmap[cls] < 0) kmap[cls] = img;
      else if (kmap[cls] != img) return std::nullopt;  // cone incoherent
    }
  for (int x : kmap)
    if (x < 0) return std::nullopt;
  for (int c = 0; c < cl; ++c)
    m.token_map[lim.object.tokens[c]] = other.tokens[kmap[c]];
  if (!validate_infomorphism(other, lim.object, m).valid) return std::nullopt;
  return m;
}

}  // namespace qframe::classifier
