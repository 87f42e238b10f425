#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qframe/errors.hpp"

namespace qframe::classifier {

// Finite classification: tokens classified by types through a boolean
// incidence relation.  incidence[i][j] says whether tokens[i] satisfies
// types[j].  Token and type identifiers are unique within one classification.
struct Classification {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> types;
  std::vector<std::vector<bool>> incidence;

  int token_index(const std::string& tok) const;
  int type_index(const std::string& typ) const;
  bool holds(int token, int type) const { return incidence[token][type]; }

  // Throws ValidationError listing every structural defect (duplicate ids,
  // ragged or mis-sized incidence).
  void validate() const;
};

// Infomorphism f : A -> B.  Types map covariantly (A to B), tokens map
// contravariantly (B to A).  The defining condition, checked exhaustively by
// validate_infomorphism, is
//     token_map(b) |=_A  a   <=>   b |=_B type_map(a)
// for every token b of B and type a of A.
struct Infomorphism {
  std::string source_id;
  std::string target_id;
  std::map<std::string, std::string> type_map;   // Typ(A) -> Typ(B)
  std::map<std::string, std::string> token_map;  // Tok(B) -> Tok(A)
};

// One counterexample to the infomorphism condition.
struct InfomorphismViolation {
  std::string token;  // token of the target
  std::string type;   // type of the source
  bool source_holds;
  bool target_holds;
};

struct InfomorphismReport {
  bool valid = false;
  std::vector<InfomorphismViolation> violations;  // every failing (b, a) pair
};

// Exhaustive check of the infomorphism condition.  Structural problems
// (dangling identifiers, partial maps, id mismatch) throw ValidationError;
// semantic failures are returned in the report.
InfomorphismReport validate_infomorphism(const Classification& source,
                                         const Classification& target,
                                         const Infomorphism& f);

// Composition g . f for f : A -> B, g : B -> C (types forward, tokens
// backward).  Throws ValidationError if the middle ids disagree or a map
// entry dangles.
Infomorphism compose(const Infomorphism& f, const Infomorphism& g);

Infomorphism identity_infomorphism(const Classification& a);

// Directed multigraph of classifications and infomorphisms.
struct DiagramEdge {
  std::string id;
  int source;  // node indices
  int target;
  Infomorphism morphism;
};

struct ClassifierDiagram {
  std::vector<Classification> nodes;
  std::vector<DiagramEdge> edges;

  int node_index(const std::string& id) const;
  // Structural validation: node ids unique, edge endpoints resolve, each
  // edge's maps are total on the right sets.  Does not check the
  // infomorphism condition itself.
  void validate() const;
  // Full validation: structure plus the infomorphism condition on each edge.
  void validate_edges() const;
};

// Witness that two parallel composite paths disagree.
struct CommutationWitness {
  std::vector<std::string> path_a;  // edge ids
  std::vector<std::string> path_b;
  std::string element;  // the type or token where the composites differ
  std::string kind;     // "type" or "token"
  std::string image_a;
  std::string image_b;
};

struct CommutationReport {
  bool commutes = false;
  std::optional<CommutationWitness> witness;
};

// Checks that all parallel composite paths between any two nodes agree,
// comparing composed type and token maps.  Deduplicates composites, so
// termination does not depend on the quiver being acyclic.
CommutationReport check_commutes(const ClassifierDiagram& d);

// Colimit of a diagram: types are glued along the edge type maps
// (union-find), tokens are the edge-compatible families, incidence is
// inherited through any class representative.  Canonical injections
// node -> colimit come back in node order.
struct ColimitResult {
  Classification object;
  std::vector<Infomorphism> cocone;  // cocone[i] : nodes[i] -> object
  // bookkeeping for mediating-map construction
  std::vector<std::vector<int>> type_class;      // [node][type] -> colim type
  std::vector<std::vector<int>> family_members;  // [colim token][node] -> tok
};

ColimitResult colimit(const ClassifierDiagram& d);

// Limit (dual construction): types are the edge-compatible families, tokens
// are glued along edge token maps.  Canonical projections limit -> node.
struct LimitResult {
  Classification object;
  std::vector<Infomorphism> cone;  // cone[i] : object -> nodes[i]
  std::vector<std::vector<int>> token_class;     // [node][token] -> lim token
  std::vector<std::vector<int>> family_members;  // [lim type][node] -> type
};

LimitResult limit(const ClassifierDiagram& d);

// Mediating infomorphism from the colimit to another cocone (object `other`,
// arrows other_cocone[i] : nodes[i] -> other).  Returns nullopt when no
// infomorphism commutes with both cocones; on success the returned morphism
// is the unique one and has been validated.
std::optional<Infomorphism> mediate_from_colimit(
    const ClassifierDiagram& d, const ColimitResult& col,
    const Classification& other, const std::vector<Infomorphism>& other_cocone);

// Dual: mediating infomorphism from another cone into the limit.
std::optional<Infomorphism> mediate_into_limit(
    const ClassifierDiagram& d, const LimitResult& lim,
    const Classification& other, const std::vector<Infomorphism>& other_cone);

// Candidate cognitive-core structure over a base diagram: one added core
// node, incoming arrows nodes[i] -> core and outgoing arrows core ->
// nodes[i], both aligned with base.nodes.
struct CccdCandidate {
  ClassifierDiagram base;
  Classification core;
  std::vector<Infomorphism> incoming;
  std::vector<Infomorphism> outgoing;
};

struct CccdReport {
  bool verdict = false;
  bool arrows_valid = false;
  bool full_diagram_commutes = false;
  bool core_is_colimit = false;
  bool core_is_limit = false;
  std::vector<std::string> details;
};

// Verifies the defining property: the full diagram (base + core arrows)
// commutes, and the core is simultaneously a colimit of the incoming arrows
// and a limit of the outgoing ones (checked through mediating isomorphisms).
// Shape problems throw ValidationError; semantic failures land in the
// report with one detail line each.
CccdReport verify_cccd(const CccdCandidate& c);

// Builds the canonical core over a base whose colimit admits a compatible
// cone back onto the nodes (each colimit class restricting to exactly one
// type per node, each node token extending to exactly one family).  Returns
// nullopt when no such core exists; on success verify_cccd accepts the
// result.
std::optional<CccdCandidate> complete_cccd_strict(const ClassifierDiagram& base);

// Bounded deterministic search for outgoing arrows core -> nodes[i] that are
// valid infomorphisms, given the colimit core.  Search order is fixed
// (token maps enumerated lexicographically), so results are reproducible.
// Throws CapError when the budget is exhausted.
std::optional<std::vector<Infomorphism>> search_outgoing_arrows(
    const ClassifierDiagram& base, const ColimitResult& col,
    std::uint64_t budget = 2000000);

struct MergeResult {
  bool merged = false;
  std::string error;  // empty on success
  std::optional<CommutationWitness> witness;
  std::optional<CccdCandidate> combined;
  bool strict = false;  // combined candidate passes full verify_cccd
};

// Merges two verified cores: forms the union of the base diagrams
// (deduplicating nodes by id; identically-named nodes must be structurally
// equal), rejects with a witness if the combined base does not commute, and
// otherwise rebuilds the core as the colimit of the union with outgoing
// arrows recovered by strict completion or bounded search.
MergeResult merge_cores(const CccdCandidate& a, const CccdCandidate& b);

}  // namespace qframe::classifier
