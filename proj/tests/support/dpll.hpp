// Minimal DPLL decision procedure for the DIMACS exports; test-only oracle.

#ifndef NRD_TESTS_DPLL_HPP
#define NRD_TESTS_DPLL_HPP

#include <optional>
#include <vector>

#include "nrd/pattern.hpp"

namespace nrd::brute {

inline bool clause_satisfied(const std::vector<int>& clause, const std::vector<int>& assign) {
    for (int lit : clause) {
        int v = std::abs(lit);
        if (assign[v] == (lit > 0 ? 1 : 0)) return true;
    }
    return false;
}

inline bool dpll(const Cnf& cnf, std::vector<int>& assign) {
    // Unit propagation.
    while (true) {
        bool changed = false;
        for (const auto& cl : cnf.clauses) {
            int unassigned = 0, last = 0;
            bool sat = false;
            for (int lit : cl) {
                int v = std::abs(lit);
                if (assign[v] == -1) {
                    ++unassigned;
                    last = lit;
                } else if (assign[v] == (lit > 0 ? 1 : 0)) {
                    sat = true;
                    break;
                }
            }
            if (sat) continue;
            if (unassigned == 0) return false;
            if (unassigned == 1) {
                assign[std::abs(last)] = last > 0 ? 1 : 0;
                changed = true;
            }
        }
        if (!changed) break;
    }
    int branch = -1;
    for (int v = 1; v <= cnf.n_vars; ++v)
        if (assign[v] == -1) { branch = v; break; }
    if (branch == -1) return true;
    for (int val : {0, 1}) {
        std::vector<int> saved = assign;
        assign[branch] = val;
        if (dpll(cnf, assign)) return true;
        assign = saved;
    }
    return false;
}

inline std::optional<std::vector<int>> solve(const Cnf& cnf) {
    std::vector<int> assign(cnf.n_vars + 1, -1);
    if (dpll(cnf, assign)) return assign;
    return std::nullopt;
}

inline bool satisfies(const Cnf& cnf, const std::vector<int>& assign) {
    for (const auto& cl : cnf.clauses)
        if (!clause_satisfied(cl, assign)) return false;
    return true;
}

}  // namespace nrd::brute

#endif
