// Polymorphism patterns: identities (argument tuple -> output variable),
// interpretations as partial functions, minors, powers, cube patterns,
// preservation tests with re-checkable certificates, CNF export, and the
// instance transformations along fgppp building blocks.

#ifndef NRD_PATTERN_HPP
#define NRD_PATTERN_HPP

#include <map>
#include <optional>

#include "nrd/engine.hpp"
#include "nrd/json_io.hpp"
#include "nrd/relation.hpp"

namespace nrd {

struct PatternIdentity {
    std::vector<int> args;  // variable ids, length = pattern arity
    int out = 0;

    auto operator<=>(const PatternIdentity&) const = default;
};

struct Pattern {
    int arity = 0;
    std::vector<PatternIdentity> identities;

    int n_variables() const;
    bool operator==(const Pattern& o) const = default;
};

// Renames variables to first-use order and picks the lexicographically
// minimal identity ordering, so equality of canonical patterns is syntactic.
Pattern canonicalize(const Pattern& p);

Pattern maltsev_pattern();   // {((x,x,y),y), ((y,x,x),y)}
Pattern majority_pattern();  // {((x,x,y),x), ((x,y,x),x), ((y,x,x),x)}

// The k-cube pattern U_k: arity 2^k-1, identity i has x at position j
// exactly when the i-th most significant bit of j is 0, output x.
Pattern cube_pattern(int k);

// Function-minor semantics: result(x_1..x_m) corresponds to
// f(x_{h[0]},...,x_{h[n-1]}); variables forced equal by shared images are
// unified, images outside h get fresh variables.
Pattern minor(const Pattern& p, const std::vector<int>& h, int new_arity);
Pattern subpattern(const Pattern& p, const std::vector<int>& keep);

// c-th power: one identity per ascending c-subset of p's identities,
// variables are c-tuples of p's variables renamed by first occurrence.
Pattern power(const Pattern& p, int c);

struct MultisortedPattern {
    std::vector<Pattern> components;  // equal arity

    MultisortedPattern() = default;
    explicit MultisortedPattern(std::vector<Pattern> comps);
    int sorts() const { return static_cast<int>(components.size()); }
    int arity() const { return components.empty() ? 0 : components[0].arity; }
};

// Unisorted pattern applied identically on every coordinate.
MultisortedPattern promote(const Pattern& p, int sorts);

struct PartialFn {
    Domain domain;
    int arity = 0;
    std::map<Tuple, int> table;  // absence = undefined

    std::optional<int> eval(const Tuple& args) const;
};

// The set I_D(P).  Empty iff inconsistent; one function unless an identity
// has an output variable absent from its arguments, in which case that
// identity contributes |D| functions (one shared value per identity).
std::vector<PartialFn> interpret(const Pattern& p, const Domain& d);

struct ViolationCertificate {
    MultisortedPattern pattern;
    std::vector<Tuple> columns;  // n argument tuples from pair.s
    Tuple output;                // outside pair.t
};

enum class PreservesStatus { Preserved, Violated, Unknown };

struct PreservesResult {
    PreservesStatus status = PreservesStatus::Unknown;
    std::optional<ViolationCertificate> certificate;
};

struct PreserveCaps {
    int max_arity = 15;
    std::size_t max_tuples = 32;
    std::uint64_t node_limit = 400'000'000;
};

// Complete check whether every application of the pattern's interpretations
// maps columns from pair.s to a tuple of pair.t.  For conditional
// non-redundancy pass (S, T~); for a plain relation pass (R, R).
PreservesResult preserves(const MultisortedPattern& p, const RelationPair& pair,
                          const PreserveCaps& caps = {});
PreservesResult preserves(const Pattern& p, const RelationPair& pair,
                          const PreserveCaps& caps = {});

// Re-evaluates a certificate through interpret(); independent of the search.
bool verify_violation(const ViolationCertificate& cert, const RelationPair& pair);

struct CubePowerReport {
    PreservesStatus status = PreservesStatus::Unknown;
    double exponent = 0.0;  // k/c when violated
    std::optional<ViolationCertificate> certificate;
};

// Runs preserves(U_k^c, (R,R)); a violation implies NRD(R,n) = Omega(n^{k/c}).
CubePowerReport cube_power_lower_bound(const Relation& r, int k, int c,
                                       const PreserveCaps& caps = {});

// ---- DIMACS export ----

struct Cnf {
    int n_vars = 0;
    std::vector<std::vector<int>> clauses;  // DIMACS literals
    std::vector<std::string> comments;
};

std::string to_dimacs(const Cnf& cnf);

// Satisfiable iff some application of the pattern (unique interpretation
// required) maps pair.s columns to a tuple outside pair.t.
Cnf export_cnf_violation(const Pattern& p, const RelationPair& pair);

// ---- pattern application inside instances ----

struct RedundancyDerivation {
    std::vector<int> argument_clauses;  // indices into the instance, length n
    int redundant_clause = -1;
};

// Searches for clauses y^(1..n), y with (p_1..p_r)(y^(1..n)) = y and
// y distinct from the arguments; requires the pair preserved by the pattern.
std::optional<RedundancyDerivation> pattern_witness_redundancy(const Instance& inst,
                                                               const MultisortedPattern& p,
                                                               const RelationPair& pair,
                                                               const PreserveCaps& caps = {});

// ---- fgppp instance transformations ----

struct TransformResult {
    Instance instance;
    RelationPair pair;  // the target pair
    int dropped_clauses = 0;
};

// S1 <= S2 and T2~ <= T1~: the instance transfers unchanged.
TransformResult strict_relax(const Instance& inst, const RelationPair& from,
                             const RelationPair& to);

// S1 = S2 /\ (x_i = x_j) and T1~ = T2~ /\ (x_i = x_j): drops the clauses
// whose witness separates x_i from x_j (at most n-1 of them).
TransformResult equality_elim(const Instance& inst, const RelationPair& from,
                              const RelationPair& to, int i, int j, const SearchCaps& caps = {});

// S1(x) = S2(x_g) /\ S2(x_f) (same shape on the tilde side): each clause is
// replaced by the representative its witness violates.
TransformResult conjunction_split(const Instance& inst, const RelationPair& from,
                                  const RelationPair& to, const std::vector<int>& f,
                                  const std::vector<int>& g, const SearchCaps& caps = {});

// S1(x) = S2(g_1(x_{h(1,*)}), ..., g_{r2}(x_{h(r2,*)})) with c-ary guards:
// produces the instance on X^c x [r2].
struct Guard {
    std::map<Tuple, int> table;  // D1^c -> D2 (total)
};
TransformResult functional_guard_lift(const Instance& inst, const RelationPair& from,
                                      const RelationPair& to,
                                      const std::vector<std::vector<int>>& h,
                                      const std::vector<Guard>& guards, int c);

// ---- JSON ----

Json to_json(const Pattern& p);
Json to_json(const MultisortedPattern& p);
Pattern pattern_from_json(const Json& j);
MultisortedPattern multisorted_from_json(const Json& j);

}  // namespace nrd

#endif
