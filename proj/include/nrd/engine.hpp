// Decides (conditional) non-redundancy by complete backtracking witness
// search, and computes exact NRD values at desk scale by branch and bound
// over clause sets.
//
// Every search is deterministic: variables most-constrained-first with ties
// by index, values ascending, clause sets in canonical order.  Resource caps
// yield an explicit "unknown", never a silent wrong answer.

#ifndef NRD_ENGINE_HPP
#define NRD_ENGINE_HPP

#include <cstdint>
#include <optional>

#include "nrd/relation.hpp"

namespace nrd {

enum class Mode { Plain, Conditional };

struct SearchCaps {
    std::uint64_t node_limit = 50'000'000;
};

struct WitnessCertificate {
    int clause_index = -1;
    Assignment assignment;
    Tuple violated_value;  // sigma(y); in S\R for conditional mode, outside R for plain
};

enum class SearchStatus { Found, None, Unknown };

struct WitnessResult {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<WitnessCertificate> certificate;
};

// Complete search for an assignment satisfying every clause except
// clause_index.  Plain mode reads only pair.s; conditional mode additionally
// requires the violated clause to land in T\S.
WitnessResult find_witness(const Instance& inst, const RelationPair& pair, int clause_index,
                           Mode mode, const SearchCaps& caps = {});

// Search-free re-check of a certificate.
bool verify_witness(const Instance& inst, const RelationPair& pair, Mode mode,
                    const WitnessCertificate& cert);

struct ClauseReport {
    SearchStatus status = SearchStatus::Unknown;
    std::optional<WitnessCertificate> certificate;
};

struct NrdReport {
    Mode mode = Mode::Plain;
    std::vector<ClauseReport> per_clause;
    int value = 0;  // clause count of the instance
    bool nonredundant = false;
    bool unknown = false;  // some clause hit the cap and none was redundant
};

NrdReport check_nonredundant(const Instance& inst, const RelationPair& pair, Mode mode,
                             const SearchCaps& caps = {}, int jobs = 1);

struct ExactNrdOptions {
    bool multipartite = false;
    SearchCaps caps;
};

struct ExactNrdResult {
    int value = 0;
    bool exact = true;  // false: cap exceeded, value is "unknown >= best_found"
};

// Maximum clause count of a (conditionally) non-redundant instance on n
// variables.  Unused variables are allowed.  Branch and bound exploits that
// non-redundancy is closed under clause subsets.
ExactNrdResult exact_nrd(const RelationPair& pair, int n, Mode mode,
                         const ExactNrdOptions& opts = {});
ExactNrdResult exact_nrd(const Relation& rel, int n, const ExactNrdOptions& opts = {});

struct TriangleReport {
    int lhs = 0;   // NRD(R|T, n)
    int rhs1 = 0;  // NRD(R|S, n)
    int rhs2 = 0;  // NRD(S|T, n)
    bool exact = true;
    bool holds = false;
};

// Triangle inequality: NRD(R|T,n) <= NRD(R|S,n) + NRD(S|T,n) for
// R strictsubset S strictsubset T.
TriangleReport triangle_check(const Relation& r, const Relation& s, const Relation& t, int n,
                              const ExactNrdOptions& opts = {});

struct ViolationGroup {
    Tuple value;  // element of S\R used by the witnesses
    std::vector<int> clause_indices;
    Instance sub_instance;
};

// Groups the clauses of a conditionally non-redundant instance by the tuple
// of T\S their witness assigns to them.
std::vector<ViolationGroup> partition_by_violation(const Instance& inst, const RelationPair& pair,
                                                   const SearchCaps& caps = {});

}  // namespace nrd

#endif
