// Forbidden hypergraphs of multisorted unit patterns, H-freeness checks on
// instances, the surjective-minor closure, and the desk-scale Turan search.

#ifndef NRD_HYPERGRAPH_HPP
#define NRD_HYPERGRAPH_HPP

#include <optional>

#include "nrd/pattern.hpp"

namespace nrd {

struct PartiteHypergraph {
    std::vector<std::vector<std::string>> parts;  // vertex names per part
    std::vector<Tuple> edges;                     // edge[i] indexes parts[i]

    PartiteHypergraph() = default;
    PartiteHypergraph(std::vector<std::vector<std::string>> parts_, std::vector<Tuple> edges_);

    int n_parts() const { return static_cast<int>(parts.size()); }
};

struct UnitPattern {
    MultisortedPattern pattern;  // every component holds exactly one identity

    explicit UnitPattern(MultisortedPattern p);
    bool is_partial_projection() const;
};

// One unit pattern per choice of a single identity from each component.
std::vector<UnitPattern> unit_decompose(const MultisortedPattern& p);

// H(P): part i holds the variables of P_i, edges are the argument columns
// plus the output edge.  Throws for partial projections (no forbidden
// structure).
PartiteHypergraph hypergraph_of(const UnitPattern& p);

// Part-respecting isomorphism via minimal edge-list encoding over per-part
// vertex permutations; adequate at the tiny sizes of H(Q).
std::vector<Tuple> canonical_encoding(const PartiteHypergraph& h);
bool hyper_isomorphic(const PartiteHypergraph& a, const PartiteHypergraph& b);

// Hypergraphs of all non-trivial unit subpatterns of all surjective minors,
// deduplicated up to part-respecting isomorphism.
std::vector<PartiteHypergraph> hq_closure(const std::vector<MultisortedPattern>& q);

// Multipartite instance viewed as a partite hypergraph.
PartiteHypergraph to_hypergraph(const Instance& inst);

enum class EmbedStatus { Found, None, Unknown };

struct EmbedResult {
    EmbedStatus status = EmbedStatus::Unknown;
    // vertex_map[i][v] = host vertex of pattern vertex v in part i
    std::vector<std::vector<int>> vertex_map;
};

// Part-respecting injective edge embedding of `pattern` into `host`.
EmbedResult hfree_check(const PartiteHypergraph& host, const PartiteHypergraph& pattern,
                        std::uint64_t node_cap = 50'000'000);

// Reads the unit pattern off a minimal redundant
// instance and assert it preserves (S, T~).
UnitPattern minimal_redundant_to_pattern(const Instance& inst, const RelationPair& pair,
                                         const SearchCaps& caps = {});

// Exhaustive maximum H-free r-partite hypergraph on n labeled vertices.
// Doubly exponential; hard-capped at n <= 7.
int ex_r_search(int n, int r, const std::vector<PartiteHypergraph>& forbidden);

Json to_json(const PartiteHypergraph& h);
PartiteHypergraph hypergraph_from_json(const Json& j);

}  // namespace nrd

#endif
