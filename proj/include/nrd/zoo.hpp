// Constructors for the named predicate families and generators for the
// explicit extremal instances used throughout the suite.

#ifndef NRD_ZOO_HPP
#define NRD_ZOO_HPP

#include <map>
#include <random>
#include <string>

#include "nrd/relation.hpp"

namespace nrd {

// ---- small exact rationals (weights of is_regular) ----

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    Rational(long long n) : num(n), den(1) {}

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool negative() const { return num < 0; }
    bool zero() const { return num == 0; }
};

// ---- basic Boolean relations ----

Relation build_or(int p);   // {0,1}^p minus the all-zero tuple
Relation build_cut();       // {(0,1),(1,0)}
Relation build_eq();        // {(0,0),(1,1)}
Relation build_one_in_three();
Relation build_3lin();      // x+y+z = 0 over Z/3
Relation build_3lin_star();  // 3LIN minus (0,0,0)

// ---- OR-DP family ----

// Pair (OR-DP_{p,q}, DP_{p,q}) over the domain {0,1} + {(b) : b in {0,1}^q},
// arity p + p^q.  idx is the lexicographic bijection [p^q] -> [p]^q.
RelationPair build_or_dp(int p, int q, int arity_cap = 64);

// i-th q-tuple over [p] (0-based everywhere), lexicographic.
std::vector<int> idx_pq(int p, int q, int i);

struct SetFamily {
    int p = 0;  // ground set [p], members are ordered q-tuples of distinct coordinates
    int q = 0;
    std::vector<std::vector<int>> sets;

    SetFamily() = default;
    SetFamily(int p_, int q_, std::vector<std::vector<int>> sets_);
};

SetFamily shoelace_family();  // p=3, q=2, {(0,1),(1,2),(2,0)}

// Punctured pair (OR-DP_F, DP_F) over domain {0,1}^q, arity |F|.
// Requires every coordinate of [p] covered by some member.
RelationPair build_or_dp_family(const SetFamily& f);

struct RegularityReport {
    bool regular = false;
    std::vector<Rational> weights;  // distribution over the members when regular
};

// Exact test for q/p-regularity: a distribution over the members whose
// coordinate marginals are all q/p.  Tries the uniform distribution first,
// then enumerates basic feasible solutions of the marginal system.
RegularityReport is_regular(const SetFamily& f);

// ---- cycle predicates ----

struct CycleRelations {
    Relation c;            // C_2k ("shoelace" bipartite cycle representation)
    Relation c_star;       // C_2k minus (0,0)
    Relation c_tilde;      // staircase representation
    Relation c_tilde_star;
};

CycleRelations build_cycles(int k);           // k >= 2
RelationPair build_r_s(int k);                // (R_2k, S_2k), S = C_2k x {0,1}
struct CycPair {
    Relation cyc;
    Relation cyc_star;
};
CycPair build_cyc(int m);                     // m odd >= 3
Relation build_bck();                         // = CYC*_3
Relation build_pauli();                       // 6-ary over {x,y,z}, 5 tuples

// ---- graphs ----

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

// Thrown when an operation requires girth >= 2k but the graph has a shorter
// cycle; carries one offending cycle as a vertex list.
struct GirthViolation : std::runtime_error {
    std::vector<int> cycle;
    GirthViolation(std::string msg, std::vector<int> cyc)
        : std::runtime_error(std::move(msg)), cycle(std::move(cyc)) {}
};

constexpr int kInfiniteGirth = 1 << 30;

int graph_girth(const Graph& g);                    // kInfiniteGirth when acyclic
std::vector<int> shortest_cycle(const Graph& g);    // empty when acyclic
std::optional<std::vector<int>> bipartition(const Graph& g);  // 2-coloring or nullopt

const std::map<std::string, Graph>& builtin_graphs();
Graph random_bipartite_graph(std::mt19937& rng, int max_side, double edge_prob = 0.4);

// Bipartite graph as a 2-partite instance over (C*_2k | C_2k): variables are
// the vertices, clauses the edges oriented (left, right).
Instance gen_girth_instance(const Graph& g);

// The distance coloring f_e(v) = min(d_e(v), k-1): a homomorphism mapping exactly the
// chosen edge to (0,0); requires girth >= 2k.
Assignment girth_witness_coloring(const Graph& g, int edge_index, int k);

// ---- instance generators ----

struct GeneratedInstance {
    Instance instance;
    RelationPair pair;
};

// OR-DP lower-bound instance: the binom(n,p)-clause OR_p instance lifted with
// padding variables, conditionally non-redundant against DP_{p,q}.
GeneratedInstance gen_or_dp_lower(int p, int q, int n);

// Shoelace instance: 3t^2 variables, t^3 clauses over
// (OR-DP_F | DP_F) with the triangle family.
GeneratedInstance gen_shoelace_lower(int t);

// Punctured-family generalization: |F| t^q variables, t^p clauses.
GeneratedInstance gen_or_family_lower(const SetFamily& f, int t);

// Tripartite lift of a bipartite core: clause set E x A_3 over
// (R_2k | S_2k).
GeneratedInstance gen_r2k_lower(int k, const Graph& core, int n3);

// ---- registry for the CLI ----

struct ZooParams {
    int p = 0, q = 0, k = 0, m = 0;
};

struct ZooEntry {
    std::string name;
    std::string params;  // human-readable parameter list
    bool is_pair = false;
};

const std::vector<ZooEntry>& zoo_entries();
// Returns a relation or pair depending on the entry; throws on bad params.
Relation zoo_relation(const std::string& name, const ZooParams& params);
RelationPair zoo_pair(const std::string& name, const ZooParams& params);

}  // namespace nrd

#endif
