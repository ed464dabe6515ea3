#include "nrd/engine.hpp"

#include <cmath>
#include <map>
#include <thread>

namespace nrd {

namespace {

// One clause's target during witness search: the clause tuple must end up
// inside `allowed` (required=true) or outside it (required=false).
struct ClauseConstraint {
    const Tuple* positions;
    const std::vector<Tuple>* allowed;
    bool required;
};

// True while the partial assignment can still be extended to meet the
// constraint.  `partial` uses -1 for unassigned.
bool extensible(const ClauseConstraint& c, const Assignment& partial, int dsize) {
    int unassigned = 0;
    long long matching = 0;
    for (const Tuple& t : *c.allowed) {
        bool m = true;
        for (std::size_t i = 0; i < c.positions->size(); ++i) {
            int a = partial[(*c.positions)[i]];
            if (a != -1 && a != t[i]) { m = false; break; }
        }
        if (m) ++matching;
    }
    if (c.required) return matching > 0;
    for (int p : *c.positions)
        if (partial[p] == -1) ++unassigned;
    // Each completion hits at most one allowed tuple, so some completion
    // escapes iff the matching tuples do not cover all |D|^unassigned.
    double completions = std::pow(static_cast<double>(dsize), unassigned);
    return static_cast<double>(matching) < completions;
}

struct Searcher {
    const Instance& inst;
    std::vector<ClauseConstraint> constraints;
    std::vector<std::vector<int>> clauses_of_var;
    int dsize;
    std::uint64_t nodes = 0;
    std::uint64_t node_limit;
    bool capped = false;

    Searcher(const Instance& i, int d, std::uint64_t limit)
        : inst(i), clauses_of_var(i.n_variables()), dsize(d), node_limit(limit) {}

    bool value_feasible(Assignment& partial, int var, int val) {
        partial[var] = val;
        bool ok = true;
        for (int ci : clauses_of_var[var])
            if (!extensible(constraints[ci], partial, dsize)) { ok = false; break; }
        partial[var] = -1;
        return ok;
    }

    // Complete DFS; returns true when `partial` has been completed into a
    // full solution.  Sets `capped` when the node budget runs out.
    bool solve(Assignment& partial) {
        if (++nodes > node_limit) { capped = true; return false; }
        int best_var = -1, best_count = -1;
        std::vector<int> best_values;
        for (int v = 0; v < inst.n_variables(); ++v) {
            if (partial[v] != -1 || clauses_of_var[v].empty()) continue;
            std::vector<int> vals;
            for (int d = 0; d < dsize; ++d)
                if (value_feasible(partial, v, d)) vals.push_back(d);
            if (best_var == -1 || static_cast<int>(vals.size()) < best_count) {
                best_var = v;
                best_count = static_cast<int>(vals.size());
                best_values = std::move(vals);
                if (best_count == 0) break;
            }
        }
        if (best_var == -1) return true;  // every constrained variable assigned
        for (int d : best_values) {
            partial[best_var] = d;
            if (solve(partial)) return true;
            if (capped) break;
        }
        partial[best_var] = -1;
        return false;
    }
};

}  // namespace

WitnessResult find_witness(const Instance& inst, const RelationPair& pair, int clause_index,
                           Mode mode, const SearchCaps& caps) {
    if (clause_index < 0 || clause_index >= inst.n_clauses())
        throw std::invalid_argument("clause index out of range");
    for (const auto& c : inst.clauses)
        if (static_cast<int>(c.size()) != pair.s.arity)
            throw std::invalid_argument("clause arity does not match relation");

    // In conditional mode the violated clause must land in T\S.
    std::vector<Tuple> t_minus_s;
    if (mode == Mode::Conditional) {
        for (const auto& t : pair.t.tuples)
            if (!pair.s.contains(t)) t_minus_s.push_back(t);
        if (t_minus_s.empty()) return {SearchStatus::None, std::nullopt};
    }

    Searcher sr(inst, pair.s.domain.size(), caps.node_limit);
    for (int ci = 0; ci < inst.n_clauses(); ++ci) {
        ClauseConstraint cc;
        cc.positions = &inst.clauses[ci];
        if (ci == clause_index) {
            if (mode == Mode::Conditional) {
                cc.allowed = &t_minus_s;
                cc.required = true;
            } else {
                cc.allowed = &pair.s.tuples;
                cc.required = false;
            }
        } else {
            cc.allowed = &pair.s.tuples;
            cc.required = true;
        }
        sr.constraints.push_back(cc);
        for (int v : inst.clauses[ci]) sr.clauses_of_var[v].push_back(ci);
    }
    // Deduplicate clause lists for variables appearing twice in a clause.
    for (auto& l : sr.clauses_of_var) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }

    Assignment partial(inst.n_variables(), -1);
    if (!sr.solve(partial)) {
        if (sr.capped) return {SearchStatus::Unknown, std::nullopt};
        return {SearchStatus::None, std::nullopt};
    }
    for (auto& v : partial)
        if (v == -1) v = 0;  // variables outside every clause
    WitnessCertificate cert;
    cert.clause_index = clause_index;
    cert.assignment = partial;
    const Tuple& cl = inst.clauses[clause_index];
    cert.violated_value.reserve(cl.size());
    for (int p : cl) cert.violated_value.push_back(partial[p]);
    return {SearchStatus::Found, std::move(cert)};
}

bool verify_witness(const Instance& inst, const RelationPair& pair, Mode mode,
                    const WitnessCertificate& cert) {
    if (cert.clause_index < 0 || cert.clause_index >= inst.n_clauses()) return false;
    if (static_cast<int>(cert.assignment.size()) != inst.n_variables()) return false;
    for (int ci = 0; ci < inst.n_clauses(); ++ci) {
        Tuple val;
        for (int p : inst.clauses[ci]) val.push_back(cert.assignment[p]);
        if (ci == cert.clause_index) {
            if (val != cert.violated_value) return false;
            if (pair.s.contains(val)) return false;
            if (mode == Mode::Conditional && !pair.t.contains(val)) return false;
        } else {
            if (!pair.s.contains(val)) return false;
        }
    }
    return true;
}

NrdReport check_nonredundant(const Instance& inst, const RelationPair& pair, Mode mode,
                             const SearchCaps& caps, int jobs) {
    NrdReport rep;
    rep.mode = mode;
    rep.value = inst.n_clauses();
    rep.per_clause.resize(inst.n_clauses());

    auto run_range = [&](int from, int to) {
        for (int ci = from; ci < to; ++ci) {
            WitnessResult r = find_witness(inst, pair, ci, mode, caps);
            rep.per_clause[ci].status = r.status;
            rep.per_clause[ci].certificate = std::move(r.certificate);
        }
    };
    if (jobs <= 1 || inst.n_clauses() <= 1) {
        run_range(0, inst.n_clauses());
    } else {
        int workers = std::min(jobs, inst.n_clauses());
        std::vector<std::thread> pool;
        int chunk = (inst.n_clauses() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int from = w * chunk, to = std::min(inst.n_clauses(), from + chunk);
            if (from < to) pool.emplace_back(run_range, from, to);
        }
        for (auto& th : pool) th.join();
    }

    rep.nonredundant = true;
    for (const auto& pc : rep.per_clause) {
        if (pc.status == SearchStatus::None) {
            rep.nonredundant = false;
            rep.unknown = false;
            return rep;
        }
        if (pc.status == SearchStatus::Unknown) rep.unknown = true;
    }
    if (rep.unknown) rep.nonredundant = false;
    return rep;
}

namespace {

std::vector<std::string> fresh_variables(int n) {
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("v" + std::to_string(i));
    return vars;
}

struct ClauseSetSearch {
    const RelationPair& pair;
    Mode mode;
    const SearchCaps& caps;
    std::vector<std::string> vars;
    std::optional<std::vector<std::vector<int>>> partition;
    std::vector<Tuple> universe;
    int best = 0;
    bool exact = true;

    void dfs(std::vector<Tuple>& current, std::size_t next) {
        best = std::max(best, static_cast<int>(current.size()));
        for (std::size_t j = next; j < universe.size(); ++j) {
            if (static_cast<int>(current.size() + (universe.size() - j)) <= best) return;
            current.push_back(universe[j]);
            Instance cand(vars, partition, current);
            NrdReport rep = check_nonredundant(cand, pair, mode, caps);
            if (rep.unknown) exact = false;
            if (rep.nonredundant) dfs(current, j + 1);
            current.pop_back();
        }
    }
};

void enumerate_tuples(int n, int r, std::vector<Tuple>& out) {
    Tuple t(r, 0);
    while (true) {
        out.push_back(t);
        int i = r - 1;
        while (i >= 0 && t[i] == n - 1) t[i--] = 0;
        if (i < 0) return;
        ++t[i];
    }
}

}  // namespace

ExactNrdResult exact_nrd(const RelationPair& pair, int n, Mode mode, const ExactNrdOptions& opts) {
    int r = pair.s.arity;
    ExactNrdResult result;
    if (!opts.multipartite) {
        ClauseSetSearch search{pair, mode, opts.caps};
        search.vars = fresh_variables(n);
        enumerate_tuples(n, r, search.universe);
        std::vector<Tuple> cur;
        search.dfs(cur, 0);
        result.value = search.best;
        result.exact = search.exact;
        return result;
    }
    // Multipartite: maximize over assignments of the n variables to the r
    // blocks; clause position i draws from block i.
    std::vector<int> block(n, 0);
    bool exact = true;
    int best = 0;
    while (true) {
        std::vector<std::vector<int>> blocks(r);
        for (int v = 0; v < n; ++v) blocks[block[v]].push_back(v);
        bool nonempty = true;
        for (const auto& b : blocks) nonempty = nonempty && !b.empty();
        if (nonempty || n < r) {
            ClauseSetSearch search{pair, mode, opts.caps};
            search.vars = fresh_variables(n);
            search.partition = blocks;
            Tuple idx(r, 0);
            std::vector<std::size_t> sizes(r);
            bool any = true;
            for (int i = 0; i < r; ++i) {
                sizes[i] = blocks[i].size();
                if (sizes[i] == 0) any = false;
            }
            if (any) {
                while (true) {
                    Tuple cl(r);
                    for (int i = 0; i < r; ++i) cl[i] = blocks[i][idx[i]];
                    search.universe.push_back(cl);
                    int i = r - 1;
                    while (i >= 0 && idx[i] + 1 == static_cast<int>(sizes[i])) idx[i--] = 0;
                    if (i < 0) break;
                    ++idx[i];
                }
            }
            std::vector<Tuple> cur;
            search.dfs(cur, 0);
            best = std::max(best, search.best);
            exact = exact && search.exact;
        }
        int v = n - 1;
        while (v >= 0 && block[v] == r - 1) block[v--] = 0;
        if (v < 0) break;
        ++block[v];
    }
    result.value = best;
    result.exact = exact;
    return result;
}

ExactNrdResult exact_nrd(const Relation& rel, int n, const ExactNrdOptions& opts) {
    RelationPair pair(rel, full_relation(rel.domain, rel.arity));
    return exact_nrd(pair, n, Mode::Plain, opts);
}

TriangleReport triangle_check(const Relation& r, const Relation& s, const Relation& t, int n,
                              const ExactNrdOptions& opts) {
    auto strict_subset = [](const Relation& a, const Relation& b) {
        if (a.tuples.size() >= b.tuples.size()) return false;
        for (const auto& tup : a.tuples)
            if (!b.contains(tup)) return false;
        return true;
    };
    if (!strict_subset(r, s) || !strict_subset(s, t))
        throw std::invalid_argument("triangle_check needs R strictsubset S strictsubset T");
    TriangleReport rep;
    ExactNrdResult rt = exact_nrd(RelationPair(r, t), n, Mode::Conditional, opts);
    ExactNrdResult rs = exact_nrd(RelationPair(r, s), n, Mode::Conditional, opts);
    ExactNrdResult st = exact_nrd(RelationPair(s, t), n, Mode::Conditional, opts);
    rep.lhs = rt.value;
    rep.rhs1 = rs.value;
    rep.rhs2 = st.value;
    rep.exact = rt.exact && rs.exact && st.exact;
    rep.holds = rep.lhs <= rep.rhs1 + rep.rhs2;
    return rep;
}

std::vector<ViolationGroup> partition_by_violation(const Instance& inst, const RelationPair& pair,
                                                   const SearchCaps& caps) {
    NrdReport rep = check_nonredundant(inst, pair, Mode::Conditional, caps);
    if (rep.unknown) throw std::runtime_error("partition_by_violation: witness search hit the cap");
    if (!rep.nonredundant)
        throw std::invalid_argument("partition_by_violation needs a conditionally non-redundant instance");
    std::map<Tuple, std::vector<int>> groups;
    for (int ci = 0; ci < inst.n_clauses(); ++ci)
        groups[rep.per_clause[ci].certificate->violated_value].push_back(ci);
    std::vector<ViolationGroup> out;
    for (auto& [val, indices] : groups) {
        std::vector<Tuple> clauses;
        for (int ci : indices) clauses.push_back(inst.clauses[ci]);
        out.push_back({val, indices, Instance(inst.variables, inst.partition, std::move(clauses))});
    }
    return out;
}

}  // namespace nrd
