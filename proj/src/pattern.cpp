#include "nrd/pattern.hpp"

#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace nrd {

int Pattern::n_variables() const {
    int mx = -1;
    for (const auto& id : identities) {
        for (int v : id.args) mx = std::max(mx, v);
        mx = std::max(mx, id.out);
    }
    return mx + 1;
}

namespace {

// Rename variables by first occurrence scanning the identities in the given
// order (arguments first, then the output).
std::vector<PatternIdentity> rename_first_occurrence(const std::vector<PatternIdentity>& ids) {
    std::map<int, int> renaming;
    auto fresh = [&](int v) {
        auto it = renaming.find(v);
        if (it != renaming.end()) return it->second;
        int nv = static_cast<int>(renaming.size());
        renaming[v] = nv;
        return nv;
    };
    std::vector<PatternIdentity> out;
    for (const auto& id : ids) {
        PatternIdentity ni;
        for (int v : id.args) ni.args.push_back(fresh(v));
        ni.out = fresh(id.out);
        out.push_back(std::move(ni));
    }
    return out;
}

}  // namespace

Pattern canonicalize(const Pattern& p) {
    const std::vector<PatternIdentity>& ids = p.identities;
    auto encode = [&](const std::vector<int>& order) {
        std::vector<PatternIdentity> perm;
        for (int i : order) perm.push_back(ids[i]);
        std::vector<PatternIdentity> renamed = rename_first_occurrence(perm);
        std::sort(renamed.begin(), renamed.end());
        renamed.erase(std::unique(renamed.begin(), renamed.end()), renamed.end());
        return renamed;
    };
    int k = static_cast<int>(ids.size());
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::optional<std::vector<PatternIdentity>> best;
    if (k <= 8) {
        do {
            std::vector<PatternIdentity> cand = encode(order);
            if (!best || cand < *best) best = std::move(cand);
        } while (std::next_permutation(order.begin(), order.end()));
    } else {
        best = encode(order);  // large patterns: single deterministic pass
    }
    Pattern out;
    out.arity = p.arity;
    if (best) out.identities = std::move(*best);
    return out;
}

Pattern maltsev_pattern() {
    Pattern p;
    p.arity = 3;
    p.identities = {{{0, 0, 1}, 1}, {{1, 0, 0}, 1}};
    return canonicalize(p);
}

Pattern majority_pattern() {
    Pattern p;
    p.arity = 3;
    p.identities = {{{0, 0, 1}, 0}, {{0, 1, 0}, 0}, {{1, 0, 0}, 0}};
    return canonicalize(p);
}

Pattern cube_pattern(int k) {
    if (k < 2) throw std::invalid_argument("cube_pattern needs k >= 2");
    Pattern p;
    p.arity = (1 << k) - 1;
    for (int i = 1; i <= k; ++i) {
        PatternIdentity id;
        for (int j = 1; j <= p.arity; ++j) {
            int bit = (j >> (k - i)) & 1;
            id.args.push_back(bit == 0 ? 0 : 1);  // x where the bit is 0
        }
        id.out = 0;
        p.identities.push_back(std::move(id));
    }
    return p;
}

Pattern minor(const Pattern& p, const std::vector<int>& h, int new_arity) {
    if (static_cast<int>(h.size()) != p.arity)
        throw std::invalid_argument("minor map must be total on the pattern arity");
    for (int img : h)
        if (img < 0 || img >= new_arity) throw std::invalid_argument("minor map image out of range");
    Pattern out;
    out.arity = new_arity;
    int nvars = p.n_variables();
    for (const auto& id : p.identities) {
        // Variables sharing a new position unify.
        std::vector<int> parent(nvars);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        std::vector<int> rep(new_arity, -1);
        for (int j = 0; j < p.arity; ++j) {
            int pos = h[j];
            if (rep[pos] == -1) {
                rep[pos] = id.args[j];
            } else {
                int a = find(rep[pos]), b = find(id.args[j]);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        }
        PatternIdentity ni;
        int fresh = nvars;
        for (int pos = 0; pos < new_arity; ++pos)
            ni.args.push_back(rep[pos] == -1 ? fresh++ : find(rep[pos]));
        ni.out = find(id.out);
        out.identities.push_back(std::move(ni));
    }
    return canonicalize(out);
}

Pattern subpattern(const Pattern& p, const std::vector<int>& keep) {
    Pattern out;
    out.arity = p.arity;
    for (int i : keep) out.identities.push_back(p.identities.at(i));
    return canonicalize(out);
}

Pattern power(const Pattern& p, int c) {
    int k = static_cast<int>(p.identities.size());
    if (c < 1 || c > k) throw std::invalid_argument("power index out of range");
    Pattern out;
    out.arity = p.arity;
    std::map<std::vector<int>, int> tuple_var;
    auto var_of = [&](const std::vector<int>& t) {
        auto it = tuple_var.find(t);
        if (it != tuple_var.end()) return it->second;
        int v = static_cast<int>(tuple_var.size());
        tuple_var[t] = v;
        return v;
    };
    std::vector<int> pick(c);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        PatternIdentity ni;
        for (int pos = 0; pos < p.arity; ++pos) {
            std::vector<int> t;
            for (int s : pick) t.push_back(p.identities[s].args[pos]);
            ni.args.push_back(var_of(t));
        }
        std::vector<int> t;
        for (int s : pick) t.push_back(p.identities[s].out);
        ni.out = var_of(t);
        out.identities.push_back(std::move(ni));

        int i = c - 1;
        while (i >= 0 && pick[i] == k - c + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < c; ++j) pick[j] = pick[j - 1] + 1;
    }
    return out;
}

MultisortedPattern::MultisortedPattern(std::vector<Pattern> comps) : components(std::move(comps)) {
    for (const auto& c : components)
        if (c.arity != components[0].arity)
            throw std::invalid_argument("multisorted components must share one arity");
}

MultisortedPattern promote(const Pattern& p, int sorts) {
    return MultisortedPattern(std::vector<Pattern>(sorts, p));
}

std::optional<int> PartialFn::eval(const Tuple& args) const {
    auto it = table.find(args);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

namespace {

template <typename F>
void for_each_var_assignment(const std::vector<int>& vars, int dsize, F&& f) {
    std::map<int, int> g;
    std::vector<int> val(vars.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = val[i];
        f(g);
        int i = static_cast<int>(vars.size()) - 1;
        while (i >= 0 && val[i] == dsize - 1) val[i--] = 0;
        if (i < 0) return;
        ++val[i];
    }
}

std::vector<int> argument_vars(const PatternIdentity& id) {
    std::set<int> vs(id.args.begin(), id.args.end());
    return std::vector<int>(vs.begin(), vs.end());
}

bool out_in_args(const PatternIdentity& id) {
    return std::find(id.args.begin(), id.args.end(), id.out) != id.args.end();
}

}  // namespace

std::vector<PartialFn> interpret(const Pattern& p, const Domain& d) {
    std::map<Tuple, int> forced;
    bool consistent = true;
    std::vector<std::vector<Tuple>> free_rows;  // per identity with free output

    for (const auto& id : p.identities) {
        bool constrained = out_in_args(id);
        std::vector<Tuple> rows_here;
        for_each_var_assignment(argument_vars(id), d.size(), [&](const std::map<int, int>& g) {
            Tuple row;
            for (int v : id.args) row.push_back(g.at(v));
            if (constrained) {
                int val = g.at(id.out);
                auto it = forced.find(row);
                if (it == forced.end())
                    forced[row] = val;
                else if (it->second != val)
                    consistent = false;
            } else {
                rows_here.push_back(row);
            }
        });
        if (!constrained) free_rows.push_back(std::move(rows_here));
    }
    if (!consistent) return {};

    std::vector<PartialFn> out;
    std::vector<int> choice(free_rows.size(), 0);
    while (true) {
        PartialFn f;
        f.domain = d;
        f.arity = p.arity;
        f.table = forced;
        bool ok = true;
        for (std::size_t i = 0; i < free_rows.size() && ok; ++i)
            for (const Tuple& row : free_rows[i]) {
                auto [it, inserted] = f.table.insert({row, choice[i]});
                if (!inserted && it->second != choice[i] && !forced.count(row)) {
                    ok = false;  // two free identities disagree on a shared row
                    break;
                }
            }
        if (ok) out.push_back(std::move(f));
        if (free_rows.empty()) break;
        int i = static_cast<int>(free_rows.size()) - 1;
        while (i >= 0 && choice[i] == d.size() - 1) choice[i--] = 0;
        if (i < 0) break;
        ++choice[i];
    }
    return out;
}

// ---- preservation search ----

namespace {

struct SortView {
    struct IdentityView {
        std::vector<int> class_of_pos;  // equal-variable classes of the arguments
        int n_classes = 0;
        int out_class = -1;  // -1 when the output variable is not an argument
    };
    std::vector<IdentityView> ids;
};

SortView make_view(const Pattern& p) {
    SortView v;
    for (const auto& id : p.identities) {
        SortView::IdentityView iv;
        std::map<int, int> cls;
        for (int var : id.args) {
            auto it = cls.find(var);
            if (it == cls.end()) cls[var] = iv.n_classes++;
            iv.class_of_pos.push_back(cls[var]);
        }
        auto it = cls.find(id.out);
        iv.out_class = it == cls.end() ? -1 : it->second;
        v.ids.push_back(std::move(iv));
    }
    return v;
}

// Forced output value of a concrete row: scan every identity whose output
// occurs among its arguments.
std::optional<int> forced_output(const Pattern& p, const Tuple& row) {
    for (const auto& id : p.identities) {
        if (!out_in_args(id)) continue;
        std::map<int, int> g;
        bool match = true;
        for (std::size_t j = 0; j < id.args.size() && match; ++j) {
            auto [it, inserted] = g.insert({id.args[j], row[j]});
            if (!inserted && it->second != row[j]) match = false;
        }
        if (match) return g.at(id.out);
    }
    return std::nullopt;
}

struct PreserveSearch {
    const MultisortedPattern& pat;
    const RelationPair& pair;
    bool shared;  // one function interpreted across all coordinates
    std::uint64_t node_limit;
    std::uint64_t nodes = 0;
    bool capped = false;

    int r, n;
    std::vector<SortView> views;
    std::vector<int> combo;
    std::vector<std::vector<int>> class_val;
    std::vector<int> columns;
    std::optional<ViolationCertificate> found;

    PreserveSearch(const MultisortedPattern& p, const RelationPair& pr, bool sh,
                   std::uint64_t limit)
        : pat(p), pair(pr), shared(sh), node_limit(limit) {
        r = pair.s.arity;
        n = pat.arity();
        for (const auto& c : pat.components) views.push_back(make_view(c));
    }

    void record(const Tuple& output) {
        ViolationCertificate cert;
        cert.pattern = pat;
        for (int j = 0; j < n; ++j) cert.columns.push_back(pair.s.tuples[columns[j]]);
        cert.output = output;
        found = std::move(cert);
    }

    void try_outputs() {
        std::vector<Tuple> rows(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < n; ++j) rows[i].push_back(pair.s.tuples[columns[j]][i]);

        Tuple output(r, -1);
        std::vector<int> free_coords;
        for (int i = 0; i < r; ++i) {
            const auto& iv = views[i].ids[combo[i]];
            if (iv.out_class != -1) {
                output[i] = class_val[i][iv.out_class];
            } else if (auto forced = forced_output(pat.components[i], rows[i])) {
                output[i] = *forced;
            } else {
                free_coords.push_back(i);
            }
        }
        if (free_coords.empty()) {
            if (!pair.t.contains(output)) record(output);
            return;
        }
        // Free coordinates take one value per identity (and shared rows agree)
        // when the coordinates share a function.
        int fc = static_cast<int>(free_coords.size());
        std::vector<int> group(fc);
        std::iota(group.begin(), group.end(), 0);
        std::function<int(int)> find = [&](int a) {
            while (group[a] != a) a = group[a] = group[group[a]];
            return a;
        };
        if (shared) {
            for (int a = 0; a < fc; ++a)
                for (int b = a + 1; b < fc; ++b) {
                    int ia = free_coords[a], ib = free_coords[b];
                    if (combo[ia] == combo[ib] || rows[ia] == rows[ib]) group[find(a)] = find(b);
                }
        }
        std::vector<int> reps;
        for (int a = 0; a < fc; ++a)
            if (find(a) == a) reps.push_back(a);
        int dsize = pair.s.domain.size();
        std::vector<int> choice(reps.size(), 0);
        while (true) {
            for (int a = 0; a < fc; ++a) {
                int rep = find(a);
                int idx = static_cast<int>(std::find(reps.begin(), reps.end(), rep) - reps.begin());
                output[free_coords[a]] = choice[idx];
            }
            if (!pair.t.contains(output)) { record(output); return; }
            int i = static_cast<int>(reps.size()) - 1;
            while (i >= 0 && choice[i] == dsize - 1) choice[i--] = 0;
            if (i < 0) return;
            ++choice[i];
        }
    }

    void column_dfs(int j) {
        if (found || capped) return;
        if (++nodes > node_limit) { capped = true; return; }
        if (j == n) { try_outputs(); return; }
        for (std::size_t ti = 0; ti < pair.s.tuples.size(); ++ti) {
            const Tuple& t = pair.s.tuples[ti];
            std::vector<std::pair<int, int>> undo;
            bool ok = true;
            for (int i = 0; i < r && ok; ++i) {
                int cls = views[i].ids[combo[i]].class_of_pos[j];
                int& slot = class_val[i][cls];
                if (slot == -1) {
                    slot = t[i];
                    undo.push_back({i, cls});
                } else if (slot != t[i]) {
                    ok = false;
                }
            }
            if (ok) {
                columns[j] = static_cast<int>(ti);
                column_dfs(j + 1);
            }
            for (auto [i, cls] : undo) class_val[i][cls] = -1;
            if (found || capped) return;
        }
    }

    PreservesResult run() {
        if (pair.s.tuples.empty()) return {PreservesStatus::Preserved, std::nullopt};
        for (const auto& c : pat.components)
            if (interpret(c, pair.s.domain).empty())
                return {PreservesStatus::Preserved, std::nullopt};  // vacuous
        combo.assign(r, 0);
        columns.assign(n, -1);
        while (true) {
            class_val.clear();
            for (int i = 0; i < r; ++i)
                class_val.push_back(std::vector<int>(views[i].ids[combo[i]].n_classes, -1));
            column_dfs(0);
            if (found) return {PreservesStatus::Violated, std::move(found)};
            if (capped) return {PreservesStatus::Unknown, std::nullopt};
            int i = r - 1;
            while (i >= 0 && combo[i] + 1 == static_cast<int>(views[i].ids.size())) combo[i--] = 0;
            if (i < 0) break;
            ++combo[i];
        }
        return {PreservesStatus::Preserved, std::nullopt};
    }
};

}  // namespace

PreservesResult preserves(const MultisortedPattern& p, const RelationPair& pair,
                          const PreserveCaps& caps) {
    if (p.sorts() != pair.s.arity)
        throw std::invalid_argument("pattern sorts must match the pair arity");
    if (p.arity() > caps.max_arity || pair.s.tuples.size() > caps.max_tuples)
        return {PreservesStatus::Unknown, std::nullopt};
    PreserveSearch search(p, pair, false, caps.node_limit);
    return search.run();
}

PreservesResult preserves(const Pattern& p, const RelationPair& pair, const PreserveCaps& caps) {
    if (p.arity > caps.max_arity || pair.s.tuples.size() > caps.max_tuples)
        return {PreservesStatus::Unknown, std::nullopt};
    MultisortedPattern mp = promote(p, pair.s.arity);
    PreserveSearch search(mp, pair, true, caps.node_limit);
    return search.run();
}

bool verify_violation(const ViolationCertificate& cert, const RelationPair& pair) {
    int r = pair.s.arity;
    if (cert.pattern.sorts() != r) return false;
    int n = cert.pattern.arity();
    if (static_cast<int>(cert.columns.size()) != n) return false;
    for (const auto& col : cert.columns)
        if (!pair.s.contains(col)) return false;
    if (pair.t.contains(cert.output)) return false;

    for (int i = 0; i < r; ++i) {
        Tuple row;
        for (int j = 0; j < n; ++j) row.push_back(cert.columns[j][i]);
        bool ok = false;
        for (const PartialFn& f : interpret(cert.pattern.components[i], pair.s.domain)) {
            auto v = f.eval(row);
            if (v && *v == cert.output[i]) { ok = true; break; }
        }
        if (!ok) return false;
    }
    return true;
}

CubePowerReport cube_power_lower_bound(const Relation& r, int k, int c, const PreserveCaps& caps) {
    if (k <= c || c < 1) throw std::invalid_argument("cube_power_lower_bound needs k > c >= 1");
    Pattern ukc = power(cube_pattern(k), c);
    PreservesResult res = preserves(ukc, RelationPair(r, r), caps);
    CubePowerReport rep;
    rep.status = res.status;
    if (res.status == PreservesStatus::Violated) {
        rep.exponent = static_cast<double>(k) / c;
        rep.certificate = std::move(res.certificate);
    }
    return rep;
}

// ---- DIMACS ----

std::string to_dimacs(const Cnf& cnf) {
    std::ostringstream out;
    for (const auto& c : cnf.comments) out << "c " << c << "\n";
    out << "p cnf " << cnf.n_vars << " " << cnf.clauses.size() << "\n";
    for (const auto& cl : cnf.clauses) {
        for (int lit : cl) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

Cnf export_cnf_violation(const Pattern& p, const RelationPair& pair) {
    std::vector<PartialFn> interp = interpret(p, pair.s.domain);
    if (interp.size() != 1)
        throw std::invalid_argument("export_cnf_violation needs a pattern with unique interpretation");

    Cnf cnf;
    cnf.comments.push_back("violating application of the pattern onto the relation pair");
    if (pair.s.tuples.empty()) {
        cnf.comments.push_back("source relation empty: trivially unsatisfiable core");
        cnf.n_vars = 1;
        cnf.clauses = {{1}, {-1}};
        return cnf;
    }

    int n = p.arity;
    int r = pair.s.arity;
    int k = static_cast<int>(p.identities.size());
    int m = static_cast<int>(pair.s.tuples.size());
    int dsize = pair.s.domain.size();

    int next_var = 1;
    auto alloc = [&](int count) {
        int base = next_var;
        next_var += count;
        return base;
    };
    int s_base = alloc(n * m);  // column j uses source tuple t
    auto s_var = [&](int j, int t) { return s_base + j * m + t; };
    int c_base = alloc(r * k);  // coordinate i matched by identity I
    auto c_var = [&](int i, int I) { return c_base + i * k + I; };
    int nvars_pat = p.n_variables();
    int a_base = alloc(r * k * nvars_pat * dsize);  // pattern variable values
    auto a_var = [&](int i, int I, int v, int d) {
        return a_base + ((i * k + I) * nvars_pat + v) * dsize + d;
    };
    int o_base = alloc(r * dsize);  // output values
    auto o_var = [&](int i, int d) { return o_base + i * dsize + d; };
    cnf.n_vars = next_var - 1;

    cnf.comments.push_back("vars " + std::to_string(s_base) + ".. column tuple selectors");
    cnf.comments.push_back("vars " + std::to_string(c_base) + ".. identity selectors");
    cnf.comments.push_back("vars " + std::to_string(a_base) + ".. pattern variable values");
    cnf.comments.push_back("vars " + std::to_string(o_base) + ".. output values");

    auto exactly_one = [&](const std::vector<int>& lits) {
        cnf.clauses.push_back(lits);
        for (std::size_t a = 0; a < lits.size(); ++a)
            for (std::size_t b = a + 1; b < lits.size(); ++b)
                cnf.clauses.push_back({-lits[a], -lits[b]});
    };

    for (int j = 0; j < n; ++j) {
        std::vector<int> lits;
        for (int t = 0; t < m; ++t) lits.push_back(s_var(j, t));
        exactly_one(lits);
    }
    for (int i = 0; i < r; ++i) {
        std::vector<int> lits;
        for (int I = 0; I < k; ++I) lits.push_back(c_var(i, I));
        exactly_one(lits);
    }
    for (int i = 0; i < r; ++i)
        for (int I = 0; I < k; ++I)
            for (int v = 0; v < nvars_pat; ++v) {
                std::vector<int> lits;
                for (int d = 0; d < dsize; ++d) lits.push_back(a_var(i, I, v, d));
                exactly_one(lits);
            }
    for (int i = 0; i < r; ++i) {
        std::vector<int> lits;
        for (int d = 0; d < dsize; ++d) lits.push_back(o_var(i, d));
        exactly_one(lits);
    }

    // The chosen identity must match the realized row.
    for (int i = 0; i < r; ++i)
        for (int I = 0; I < k; ++I)
            for (int j = 0; j < n; ++j)
                for (int t = 0; t < m; ++t) {
                    int v = p.identities[I].args[j];
                    int d = pair.s.tuples[t][i];
                    cnf.clauses.push_back({-c_var(i, I), -s_var(j, t), a_var(i, I, v, d)});
                }
    // The output follows the chosen identity's output variable.
    for (int i = 0; i < r; ++i)
        for (int I = 0; I < k; ++I)
            for (int d = 0; d < dsize; ++d)
                cnf.clauses.push_back({-c_var(i, I), -a_var(i, I, p.identities[I].out, d), o_var(i, d)});
    // Forbid outputs inside the target relation.
    for (const Tuple& t : pair.t.tuples) {
        std::vector<int> cl;
        for (int i = 0; i < r; ++i) cl.push_back(-o_var(i, t[i]));
        cnf.clauses.push_back(cl);
    }
    return cnf;
}

// ---- redundancy witness inside an instance ----

std::optional<RedundancyDerivation> pattern_witness_redundancy(const Instance& inst,
                                                               const MultisortedPattern& p,
                                                               const RelationPair& pair,
                                                               const PreserveCaps& caps) {
    int r = pair.s.arity;
    if (p.sorts() != r) throw std::invalid_argument("pattern sorts must match the pair arity");
    if (!inst.partition || static_cast<int>(inst.partition->size()) != r)
        throw std::invalid_argument("pattern_witness_redundancy needs an r-partite instance");
    RelationPair cond(pair.s, complement_tilde(pair));
    PreservesResult pres = preserves(p, cond, caps);
    if (pres.status != PreservesStatus::Preserved)
        throw std::invalid_argument("pattern does not preserve (S, T~)");

    int n = p.arity();
    std::vector<SortView> views;
    for (const auto& c : p.components) views.push_back(make_view(c));

    std::vector<int> combo(r, 0);
    std::uint64_t nodes = 0;
    while (true) {
        std::vector<std::vector<int>> class_val;
        for (int i = 0; i < r; ++i)
            class_val.push_back(std::vector<int>(views[i].ids[combo[i]].n_classes, -1));
        std::vector<int> chosen(n, -1);
        std::optional<RedundancyDerivation> found;

        std::function<void(int)> dfs = [&](int j) {
            if (found || ++nodes > caps.node_limit) return;
            if (j == n) {
                Tuple out(r, -1);  // variable indices; -1 = free coordinate
                for (int i = 0; i < r; ++i) {
                    int oc = views[i].ids[combo[i]].out_class;
                    if (oc != -1) out[i] = class_val[i][oc];
                }
                for (int ci = 0; ci < inst.n_clauses(); ++ci) {
                    bool match = true;
                    for (int i = 0; i < r && match; ++i)
                        if (out[i] != -1 && inst.clauses[ci][i] != out[i]) match = false;
                    if (!match) continue;
                    bool is_argument = false;
                    for (int j2 = 0; j2 < n; ++j2)
                        if (chosen[j2] == ci) is_argument = true;
                    if (is_argument) continue;
                    found = RedundancyDerivation{chosen, ci};
                    return;
                }
                return;
            }
            for (int ci = 0; ci < inst.n_clauses(); ++ci) {
                std::vector<std::pair<int, int>> undo;
                bool ok = true;
                for (int i = 0; i < r && ok; ++i) {
                    int cls = views[i].ids[combo[i]].class_of_pos[j];
                    int& slot = class_val[i][cls];
                    if (slot == -1) {
                        slot = inst.clauses[ci][i];
                        undo.push_back({i, cls});
                    } else if (slot != inst.clauses[ci][i]) {
                        ok = false;
                    }
                }
                if (ok) {
                    chosen[j] = ci;
                    dfs(j + 1);
                    chosen[j] = -1;
                }
                for (auto [i, cls] : undo) class_val[i][cls] = -1;
                if (found) return;
            }
        };
        dfs(0);
        if (found) return found;
        if (nodes > caps.node_limit)
            throw std::runtime_error("pattern_witness_redundancy hit the node cap");
        int i = r - 1;
        while (i >= 0 && combo[i] + 1 == static_cast<int>(views[i].ids.size())) combo[i--] = 0;
        if (i < 0) break;
        ++combo[i];
    }
    return std::nullopt;
}

// ---- fgppp transforms ----

namespace {

void require_same_frame(const RelationPair& a, const RelationPair& b) {
    if (!(a.s.domain == b.s.domain))
        throw std::invalid_argument("transform pairs must share a domain");
}

std::vector<Tuple> difference(const Relation& t, const Relation& s) {
    std::vector<Tuple> out;
    for (const auto& tup : t.tuples)
        if (!s.contains(tup)) out.push_back(tup);
    return out;
}

}  // namespace

TransformResult strict_relax(const Instance& inst, const RelationPair& from,
                             const RelationPair& to) {
    require_same_frame(from, to);
    if (from.s.arity != to.s.arity) throw std::invalid_argument("strict_relax arity mismatch");
    for (const auto& t : from.s.tuples)
        if (!to.s.contains(t)) throw std::invalid_argument("strict_relax: S1 not contained in S2");
    // T2~ subseteq T1~  <=>  T1 \ S1 subseteq T2 \ S2.
    for (const auto& t : difference(from.t, from.s))
        if (!to.t.contains(t) || to.s.contains(t))
            throw std::invalid_argument("strict_relax: T2~ not contained in T1~");
    return {inst, to, 0};
}

TransformResult equality_elim(const Instance& inst, const RelationPair& from,
                              const RelationPair& to, int i, int j, const SearchCaps& caps) {
    require_same_frame(from, to);
    int r = from.s.arity;
    if (to.s.arity != r || i == j || i < 0 || j < 0 || i >= r || j >= r)
        throw std::invalid_argument("equality_elim indices invalid");
    Relation tilde_from = complement_tilde(from);
    Relation tilde_to = complement_tilde(to);
    for (const auto& t : full_relation(from.s.domain, r).tuples) {
        bool eq = t[i] == t[j];
        if (from.s.contains(t) != (to.s.contains(t) && eq))
            throw std::invalid_argument("equality_elim: S1 != S2 /\\ eq");
        if (tilde_from.contains(t) != (tilde_to.contains(t) && eq))
            throw std::invalid_argument("equality_elim: T1~ != T2~ /\\ eq");
    }
    NrdReport rep = check_nonredundant(inst, from, Mode::Conditional, caps);
    if (!rep.nonredundant)
        throw std::invalid_argument("equality_elim input must be conditionally non-redundant");
    std::vector<Tuple> kept;
    int dropped = 0;
    for (int ci = 0; ci < inst.n_clauses(); ++ci) {
        const auto& cert = *rep.per_clause[ci].certificate;
        if (cert.assignment[inst.clauses[ci][i]] != cert.assignment[inst.clauses[ci][j]])
            ++dropped;
        else
            kept.push_back(inst.clauses[ci]);
    }
    if (dropped > inst.n_variables() - 1)
        throw std::runtime_error("equality_elim dropped more than n-1 clauses");
    return {Instance(inst.variables, inst.partition, std::move(kept)), to, dropped};
}

TransformResult conjunction_split(const Instance& inst, const RelationPair& from,
                                  const RelationPair& to, const std::vector<int>& f,
                                  const std::vector<int>& g, const SearchCaps& caps) {
    require_same_frame(from, to);
    int r1 = from.s.arity;
    int r2 = to.s.arity;
    if (static_cast<int>(f.size()) != r2 || static_cast<int>(g.size()) != r2)
        throw std::invalid_argument("conjunction_split maps must have the target arity");
    Relation tilde_from = complement_tilde(from);
    Relation tilde_to = complement_tilde(to);
    auto project = [&](const Tuple& t, const std::vector<int>& map) {
        Tuple out;
        for (int pos : map) out.push_back(t.at(pos));
        return out;
    };
    for (const auto& t : full_relation(from.s.domain, r1).tuples) {
        bool s_rhs = to.s.contains(project(t, g)) && to.s.contains(project(t, f));
        if (from.s.contains(t) != s_rhs)
            throw std::invalid_argument("conjunction_split: S1 != S2(g) /\\ S2(f)");
        bool t_rhs = tilde_to.contains(project(t, g)) && tilde_to.contains(project(t, f));
        if (tilde_from.contains(t) != t_rhs)
            throw std::invalid_argument("conjunction_split: T1~ != T2~(g) /\\ T2~(f)");
    }
    NrdReport rep = check_nonredundant(inst, from, Mode::Conditional, caps);
    if (!rep.nonredundant)
        throw std::invalid_argument("conjunction_split input must be conditionally non-redundant");
    std::vector<Tuple> clauses;
    for (int ci = 0; ci < inst.n_clauses(); ++ci) {
        const auto& cert = *rep.per_clause[ci].certificate;
        Tuple vg = project(cert.violated_value, g);
        bool g_violates = to.t.contains(vg) && !to.s.contains(vg);
        clauses.push_back(project(inst.clauses[ci], g_violates ? g : f));
    }
    return {Instance(inst.variables, std::nullopt, std::move(clauses)), to, 0};
}

TransformResult functional_guard_lift(const Instance& inst, const RelationPair& from,
                                      const RelationPair& to,
                                      const std::vector<std::vector<int>>& h,
                                      const std::vector<Guard>& guards, int c) {
    int r1 = from.s.arity;
    int r2 = to.s.arity;
    if (static_cast<int>(h.size()) != r2 || static_cast<int>(guards.size()) != r2)
        throw std::invalid_argument("functional_guard_lift needs one scope and guard per position");
    for (const auto& scope : h) {
        if (static_cast<int>(scope.size()) != c)
            throw std::invalid_argument("functional_guard_lift scope of wrong arity");
        for (int pos : scope)
            if (pos < 0 || pos >= r1) throw std::invalid_argument("functional_guard_lift scope invalid");
    }
    Relation tilde_from = complement_tilde(from);
    Relation tilde_to = complement_tilde(to);
    auto image = [&](const Tuple& t) {
        Tuple out(r2);
        for (int i = 0; i < r2; ++i) {
            Tuple args;
            for (int pos : h[i]) args.push_back(t[pos]);
            auto it = guards[i].table.find(args);
            if (it == guards[i].table.end())
                throw std::invalid_argument("guard function not total");
            out[i] = it->second;
        }
        return out;
    };
    for (const auto& t : full_relation(from.s.domain, r1).tuples) {
        if (from.s.contains(t) != to.s.contains(image(t)))
            throw std::invalid_argument("functional_guard_lift: S equivalence fails");
        if (tilde_from.contains(t) != tilde_to.contains(image(t)))
            throw std::invalid_argument("functional_guard_lift: T~ equivalence fails");
    }

    // X+ := X^c x [r2].
    int nv = inst.n_variables();
    long long n_pow = 1;
    for (int j = 0; j < c; ++j) n_pow *= nv;
    if (n_pow * r2 > 200000) throw std::invalid_argument("functional_guard_lift output too large");
    std::vector<std::string> vars;
    vars.reserve(n_pow * r2);
    for (int i = 0; i < r2; ++i)
        for (long long w = 0; w < n_pow; ++w) {
            long long rest = w;
            std::vector<int> tuple_idx(c);
            for (int j = c - 1; j >= 0; --j) {
                tuple_idx[j] = static_cast<int>(rest % nv);
                rest /= nv;
            }
            std::string nm = "(";
            for (int j = 0; j < c; ++j) nm += (j ? "," : "") + inst.variables[tuple_idx[j]];
            nm += ")#" + std::to_string(i + 1);
            vars.push_back(nm);
        }
    auto plus_var = [&](const std::vector<int>& xs, int i) {
        long long w = 0;
        for (int x : xs) w = w * nv + x;
        return static_cast<int>(i * n_pow + w);
    };
    std::vector<Tuple> clauses;
    for (const auto& y : inst.clauses) {
        Tuple yp(r2);
        for (int i = 0; i < r2; ++i) {
            std::vector<int> xs;
            for (int pos : h[i]) xs.push_back(y[pos]);
            yp[i] = plus_var(xs, i);
        }
        clauses.push_back(yp);
    }
    std::vector<std::vector<int>> blocks(r2);
    for (int i = 0; i < r2; ++i)
        for (long long w = 0; w < n_pow; ++w) blocks[i].push_back(static_cast<int>(i * n_pow + w));
    return {Instance(std::move(vars), std::move(blocks), std::move(clauses)), to, 0};
}

// ---- JSON ----

namespace {

std::string var_name(int v) {
    static const char* base[] = {"x", "y", "z"};
    if (v < 3) return base[v];
    return "v" + std::to_string(v);
}

Json identities_to_json(const Pattern& p) {
    Json ids = Json::array();
    for (const auto& id : p.identities) {
        Json ji;
        Json args = Json::array();
        for (int v : id.args) args.push_back(var_name(v));
        ji["args"] = std::move(args);
        ji["out"] = var_name(id.out);
        ids.push_back(std::move(ji));
    }
    return ids;
}

Pattern identities_from_json(const Json& ids, int arity) {
    Pattern p;
    p.arity = arity;
    std::map<std::string, int> vars;
    auto var_of = [&](const std::string& nm) {
        auto it = vars.find(nm);
        if (it != vars.end()) return it->second;
        int v = static_cast<int>(vars.size());
        vars[nm] = v;
        return v;
    };
    for (const auto& ji : ids) {
        PatternIdentity id;
        for (const auto& a : ji.at("args")) id.args.push_back(var_of(a.get<std::string>()));
        if (static_cast<int>(id.args.size()) != arity)
            throw std::runtime_error("parse error: identity arity mismatch");
        id.out = var_of(ji.at("out").get<std::string>());
        p.identities.push_back(std::move(id));
    }
    return p;
}

}  // namespace

Json to_json(const Pattern& p) {
    Json j;
    j["arity"] = p.arity;
    j["identities"] = identities_to_json(p);
    return j;
}

Json to_json(const MultisortedPattern& p) {
    Json j;
    j["sorts"] = p.sorts();
    j["arity"] = p.arity();
    Json comps = Json::array();
    for (const auto& c : p.components) comps.push_back(identities_to_json(c));
    j["components"] = std::move(comps);
    return j;
}

Pattern pattern_from_json(const Json& j) {
    return identities_from_json(j.at("identities"), j.at("arity").get<int>());
}

MultisortedPattern multisorted_from_json(const Json& j) {
    int arity = j.at("arity").get<int>();
    std::vector<Pattern> comps;
    for (const auto& c : j.at("components")) comps.push_back(identities_from_json(c, arity));
    return MultisortedPattern(std::move(comps));
}

}  // namespace nrd
