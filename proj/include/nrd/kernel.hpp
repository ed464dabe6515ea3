// The SAT-DP_{p,q} language (OR-DP plus CUT), the CNF-p-SAT reduction, and
// the two-phase polynomial-time kernelization: spanning forest on the CUT
// graph, then padding-driven variable identification to fixpoint.

#ifndef NRD_KERNEL_HPP
#define NRD_KERNEL_HPP

#include <random>

#include "nrd/json_io.hpp"
#include "nrd/relation.hpp"

namespace nrd {

struct SatDpInstance {
    int p = 0;
    int q = 0;
    std::vector<std::string> variables;
    std::vector<std::pair<int, int>> cut_clauses;
    std::vector<Tuple> ordp_clauses;  // p + p^q variable indices each

    int n_variables() const { return static_cast<int>(variables.size()); }
    int pad_positions() const;  // p^q
};

enum class VarType { Unused, Boolean, Padding, Conflict };

// Boolean: occurs in a CUT clause or one of the first p OR-DP positions;
// padding: occurs after position p.  Pre-kernel instances may conflict.
std::vector<VarType> infer_types(const SatDpInstance& inst);

struct KernelStep {
    std::string action;  // forest-drop | unsat-detected | identify-boolean | identify-padding
    Json detail;
};

struct KernelTrace {
    std::vector<KernelStep> steps;
    int vars_before = 0, vars_after = 0;
    int cut_before = 0, cut_after = 0;
    int ordp_before = 0, ordp_after = 0;
    std::string verdict;  // "reduced" | "unsat"
};

struct KernelResult {
    SatDpInstance instance;
    KernelTrace trace;
    // original variable index -> surviving original representative
    std::vector<int> class_rep;
};

// Deterministic rule order by default; a generator switches to a random
// applicable rule each round (used by the confluence battery).
KernelResult kernelize(const SatDpInstance& inst, std::mt19937* shuffle = nullptr);

// The fixed constant-size unsatisfiable output: a CUT triangle.
SatDpInstance canonical_unsat(int p, int q);

// Mechanically re-applies a trace; no rule search involved.
SatDpInstance replay_trace(const SatDpInstance& inst, const KernelTrace& trace);

enum class SatVerdict { Sat, Unsat };

// Complete backtracking satisfiability over the typed domains.  Throws when
// the instance exceeds the effective-variable cap.
SatVerdict satdp_solve(const SatDpInstance& inst, int effective_var_cap = 20);

bool equisat_oracle(const SatDpInstance& a, const SatDpInstance& b, int effective_var_cap = 20);

// ---- CNF reduction ----

struct CnfFormula {
    int n_vars = 0;
    std::vector<std::vector<int>> clauses;  // DIMACS literals
};

CnfFormula parse_dimacs(const std::string& text);

// CNF-p-SAT reduction; every clause must have exactly p literals.  Output has
// 2n + (2n)^q variables, n CUT clauses and one OR-DP clause per CNF clause.
SatDpInstance cnf_to_satdp(const CnfFormula& cnf, int p, int q);

// ---- size accounting ----

// All q-subsets of the members of a p-uniform family.
std::vector<std::vector<int>> q_shadow(const std::vector<std::vector<int>>& family, int q);

struct SizeReport {
    int vars_before = 0, vars_after = 0;
    int cut_before = 0, cut_after = 0;
    int ordp_before = 0, ordp_after = 0;
    double c_pq = 0.0;          // max binom(m,p)/binom(m,q)^{p/q} over m <= 1e4
    double clause_bound = 0.0;  // 2p * c_pq * n^{p/q}
    bool within_bound = false;
    std::size_t boolean_sets = 0;  // |A|
    std::size_t shadow_size = 0;   // |B|
    std::size_t padding_vars = 0;
};

SizeReport size_report(const SatDpInstance& before, const SatDpInstance& after);

// Seeded random instances for the battery; at most max_vars variables.
SatDpInstance random_satdp(std::mt19937& rng, int p, int q, int max_vars,
                           double conflict_prob = 0.05);

Json to_json(const SatDpInstance& inst);
SatDpInstance satdp_from_json(const Json& j);
Json to_json(const KernelTrace& trace);
KernelTrace trace_from_json(const Json& j);

}  // namespace nrd

#endif
