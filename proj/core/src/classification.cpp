#include <algorithm>
#include <set>

#include "qframe/classifier.hpp"

namespace qframe::classifier {

int Classification::token_index(const std::string& tok) const {
  auto it = std::find(tokens.begin(), tokens.end(), tok);
  return it == tokens.end() ? -1 : static_cast<int>(it - tokens.begin());
}

int Classification::type_index(const std::string& typ) const {
  auto it = std::find(types.begin(), types.end(), typ);
  return it == types.end() ? -1 : static_cast<int>(it - types.begin());
}

void Classification::validate() const {
  std::vector<Violation> v;
  if (id.empty()) v.push_back({"/id", "classification id must be nonempty"});
  std::set<std::string> seen;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (!seen.insert(tokens[i]).second)
      v.push_back({"/tokens/" + std::to_string(i),
                   "duplicate token id '" + tokens[i] + "'"});
  seen.clear();
  for (std::size_t i = 0; i < types.size(); ++i)
    if (!seen.insert(types[i]).second)
      v.push_back({"/types/" + std::to_string(i),
                   "duplicate type id '" + types[i] + "'"});
  if (incidence.size() != tokens.size())
    v.push_back({"/incidence", "expected " + std::to_string(tokens.size()) +
                                   " rows, got " +
                                   std::to_string(incidence.size())});
  for (std::size_t i = 0; i < incidence.size(); ++i)
    if (incidence[i].size() != types.size())
      v.push_back({"/incidence/" + std::to_string(i),
                   "expected " + std::to_string(types.size()) +
                       " columns, got " + std::to_string(incidence[i].size())});
  if (!v.empty()) throw ValidationError(std::move(v));
}

namespace {

// Resolves f's maps to index arrays, appending a violation per structural
// defect.  Returns nullopt if anything dangles.
struct ResolvedMaps {
  std::vector<int> type_map;   // src type -> tgt type
  std::vector<int> token_map;  // tgt token -> src token
};

std::optional<ResolvedMaps> resolve(const Classification& src,
                                    const Classification& tgt,
                                    const Infomorphism& f,
                                    std::vector<Violation>& v) {
  if (f.source_id != src.id)
    v.push_back({"/source", "morphism source '" + f.source_id +
                                "' does not match classification '" + src.id +
                                "'"});
  if (f.target_id != tgt.id)
    v.push_back({"/target", "morphism target '" + f.target_id +
                                "' does not match classification '" + tgt.id +
                                "'"});
  ResolvedMaps r;
  r.type_map.assign(src.types.size(), -1);
  r.token_map.assign(tgt.tokens.size(), -1);
  for (const auto& [a, b] : f.type_map) {
    int ia = src.type_index(a);
    if (ia < 0) {
      v.push_back({"/typeMap/" + a, "unknown source type '" + a + "'"});
      continue;
    }
    int ib = tgt.type_index(b);
    if (ib < 0) {
      v.push_back({"/typeMap/" + a, "image '" + b + "' is not a target type"});
      continue;
    }
    r.type_map[ia] = ib;
  }
  for (std::size_t i = 0; i < src.types.size(); ++i)
    if (r.type_map[i] < 0 && !f.type_map.count(src.types[i]))
      v.push_back({"/typeMap", "missing entry for source type '" +
                                   src.types[i] + "'"});
  for (const auto& [b, a] : f.token_map) {
    int ib = tgt.token_index(b);
    if (ib < 0) {
      v.push_back({"/tokenMap/" + b, "unknown target token '" + b + "'"});
      continue;
    }
    int ia = src.token_index(a);
    if (ia < 0) {
      v.push_back(
          {"/tokenMap/" + b, "image '" + a + "' is not a source token"});
      continue;
    }
    r.token_map[ib] = ia;
  }
  for (std::size_t i = 0; i < tgt.tokens.size(); ++i)
    if (r.token_map[i] < 0 && !f.token_map.count(tgt.tokens[i]))
      v.push_back({"/tokenMap", "missing entry for target token '" +
                                    tgt.tokens[i] + "'"});
  for (int x : r.type_map)
    if (x < 0) return std::nullopt;
  for (int x : r.token_map)
    if (x < 0) return std::nullopt;
  if (!v.empty()) return std::nullopt;
  return r;
}

}  // namespace

InfomorphismReport validate_infomorphism(const Classification& source,
                                         const Classification& target,
                                         const Infomorphism& f) {
  source.validate();
  target.validate();
  std::vector<Violation> v;
  auto maps = resolve(source, target, f, v);
  if (!maps) throw ValidationError(std::move(v));

  InfomorphismReport rep;
  for (std::size_t b = 0; b < target.tokens.size(); ++b) {
    for (std::size_t a = 0; a < source.types.size(); ++a) {
      bool lhs = source.holds(maps->token_map[b], static_cast<int>(a));
      bool rhs = target.holds(static_cast<int>(b), maps->type_map[a]);
      if (lhs != rhs)
        rep.violations.push_back(
            {target.tokens[b], source.types[a], lhs, rhs});
    }
  }
  rep.valid = rep.violations.empty();
  return rep;
}

Infomorphism compose(const Infomorphism& f, const Infomorphism& g) {
  if (f.target_id != g.source_id)
    throw ValidationError("", "cannot compose: '" + f.source_id + "->" +
                                  f.target_id + "' then '" + g.source_id +
                                  "->" + g.target_id + "'");
  Infomorphism h;
  h.source_id = f.source_id;
  h.target_id = g.target_id;
  std::vector<Violation> v;
  for (const auto& [a, b] : f.type_map) {
    auto it = g.type_map.find(b);
    if (it == g.type_map.end())
      v.push_back({"/typeMap/" + a,
                   "intermediate type '" + b + "' has no image under g"});
    else
      h.type_map[a] = it->second;
  }
  for (const auto& [c, b] : g.token_map) {
    auto it = f.token_map.find(b);
    if (it == f.token_map.end())
      v.push_back({"/tokenMap/" + c,
                   "intermediate token '" + b + "' has no image under f"});
    else
      h.token_map[c] = it->second;
  }
  if (!v.empty()) throw ValidationError(std::move(v));
  return h;
}

Infomorphism identity_infomorphism(const Classification& a) {
  Infomorphism f;
  f.source_id = a.id;
  f.target_id = a.id;
  for (const auto& t : a.types) f.type_map[t] = t;
  for (const auto& t : a.tokens) f.token_map[t] = t;
  return f;
}

}  // namespace qframe::classifier
