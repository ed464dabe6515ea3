#include "nrd/kernel.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "nrd/zoo.hpp"

namespace nrd {

int SatDpInstance::pad_positions() const {
    int pads = 1;
    for (int j = 0; j < q; ++j) pads *= p;
    return pads;
}

std::vector<VarType> infer_types(const SatDpInstance& inst) {
    std::vector<VarType> types(inst.variables.size(), VarType::Unused);
    auto mark = [&](int v, VarType t) {
        if (types[v] == VarType::Unused)
            types[v] = t;
        else if (types[v] != t)
            types[v] = VarType::Conflict;
    };
    for (auto [a, b] : inst.cut_clauses) {
        mark(a, VarType::Boolean);
        mark(b, VarType::Boolean);
    }
    for (const auto& cl : inst.ordp_clauses)
        for (std::size_t pos = 0; pos < cl.size(); ++pos)
            mark(cl[pos], pos < static_cast<std::size_t>(inst.p) ? VarType::Boolean
                                                                 : VarType::Padding);
    return types;
}

SatDpInstance canonical_unsat(int p, int q) {
    SatDpInstance out;
    out.p = p;
    out.q = q;
    out.variables = {"u0", "u1", "u2"};
    out.cut_clauses = {{0, 1}, {0, 2}, {1, 2}};
    return out;
}

namespace {

struct Working {
    SatDpInstance inst;
    std::vector<std::string> original_names;
    std::vector<bool> alive;
    KernelTrace trace;
    bool unsat = false;

    explicit Working(const SatDpInstance& in) : inst(in) {
        original_names = in.variables;
        alive.assign(in.variables.size(), true);
        // CUT pairs are unordered; normalize for stable deduplication.
        for (auto& [a, b] : inst.cut_clauses)
            if (a > b) std::swap(a, b);
    }

    void declare_unsat(const std::string& reason) {
        trace.steps.push_back({"unsat-detected", Json{{"reason", reason}}});
        trace.verdict = "unsat";
        unsat = true;
    }

    void dedupe() {
        std::set<std::pair<int, int>> cut_seen;
        std::vector<std::pair<int, int>> cuts;
        for (auto c : inst.cut_clauses)
            if (cut_seen.insert(c).second) cuts.push_back(c);
        inst.cut_clauses = std::move(cuts);
        std::set<Tuple> ordp_seen;
        std::vector<Tuple> ordps;
        for (const auto& c : inst.ordp_clauses)
            if (ordp_seen.insert(c).second) ordps.push_back(c);
        inst.ordp_clauses = std::move(ordps);
    }

    // Replace every occurrence of `from` by `to` and retire `from`.
    void identify(int from, int to, const char* action) {
        trace.steps.push_back(
            {action, Json{{"from", original_names[from]}, {"to", original_names[to]}}});
        for (auto& [a, b] : inst.cut_clauses) {
            if (a == from) a = to;
            if (b == from) b = to;
            if (a > b) std::swap(a, b);
        }
        for (auto& cl : inst.ordp_clauses)
            for (int& v : cl)
                if (v == from) v = to;
        alive[from] = false;
        dedupe();
        for (auto [a, b] : inst.cut_clauses)
            if (a == b) {
                declare_unsat("CUT self-loop after identification");
                return;
            }
    }

    SatDpInstance finish() {
        if (unsat) return canonical_unsat(inst.p, inst.q);
        SatDpInstance out;
        out.p = inst.p;
        out.q = inst.q;
        std::vector<int> remap(original_names.size(), -1);
        for (std::size_t v = 0; v < original_names.size(); ++v)
            if (alive[v]) {
                remap[v] = out.n_variables();
                out.variables.push_back(original_names[v]);
            }
        for (auto [a, b] : inst.cut_clauses) out.cut_clauses.push_back({remap[a], remap[b]});
        for (const auto& cl : inst.ordp_clauses) {
            Tuple t;
            for (int v : cl) t.push_back(remap[v]);
            out.ordp_clauses.push_back(std::move(t));
        }
        return out;
    }
};

struct RuleApplication {
    int from = 0, to = 0;
    bool padding = false;
};

// All currently applicable identifications, deterministic order: rule 1
// applications first, then rule 2.
std::vector<RuleApplication> applicable_rules(const SatDpInstance& inst) {
    std::vector<RuleApplication> apps;
    int p = inst.p;
    int pads = inst.pad_positions();
    auto governed = [&](const Tuple& cl, int i) {
        std::vector<int> sel = idx_pq(p, inst.q, i);
        Tuple t;
        for (int j : sel) t.push_back(cl[j]);
        return t;
    };
    int n_cl = static_cast<int>(inst.ordp_clauses.size());
    // Rule 1: same padding variable governing different Boolean tuples.
    for (int y = 0; y < n_cl; ++y)
        for (int y2 = y; y2 < n_cl; ++y2)
            for (int i = 0; i < pads; ++i)
                for (int i2 = (y == y2 ? i + 1 : 0); i2 < pads; ++i2) {
                    const Tuple& cy = inst.ordp_clauses[y];
                    const Tuple& cy2 = inst.ordp_clauses[y2];
                    if (cy[p + i] != cy2[p + i2]) continue;
                    Tuple ta = governed(cy, i), tb = governed(cy2, i2);
                    for (int j = 0; j < inst.q; ++j)
                        if (ta[j] != tb[j]) {
                            apps.push_back({std::max(ta[j], tb[j]), std::min(ta[j], tb[j]), false});
                            break;
                        }
                }
    // Rule 2: same Boolean tuple at one padding index, distinct padding vars.
    for (int y = 0; y < n_cl; ++y)
        for (int y2 = y + 1; y2 < n_cl; ++y2)
            for (int i = 0; i < pads; ++i) {
                const Tuple& cy = inst.ordp_clauses[y];
                const Tuple& cy2 = inst.ordp_clauses[y2];
                if (cy[p + i] == cy2[p + i]) continue;
                if (governed(cy, i) == governed(cy2, i))
                    apps.push_back(
                        {std::max(cy[p + i], cy2[p + i]), std::min(cy[p + i], cy2[p + i]), true});
            }
    return apps;
}

}  // namespace

KernelResult kernelize(const SatDpInstance& in, std::mt19937* shuffle) {
    Working w(in);
    w.trace.vars_before = in.n_variables();
    w.trace.cut_before = static_cast<int>(in.cut_clauses.size());
    w.trace.ordp_before = static_cast<int>(in.ordp_clauses.size());
    w.trace.verdict = "reduced";

    std::vector<int> rep(in.n_variables());
    std::iota(rep.begin(), rep.end(), 0);
    std::function<int(int)> find = [&](int v) {
        while (rep[v] != v) v = rep[v] = rep[rep[v]];
        return v;
    };

    // Phase 1: spanning forest of the CUT graph with parity (odd cycle =>
    // unsatisfiable).
    {
        std::vector<int> parent(in.n_variables());
        std::vector<int> parity(in.n_variables(), 0);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::pair<int, int>(int)> root = [&](int v) -> std::pair<int, int> {
            int par = 0;
            while (parent[v] != v) {
                par ^= parity[v];
                v = parent[v];
            }
            return {v, par};
        };
        std::vector<std::pair<int, int>> kept;
        for (auto [a, b] : w.inst.cut_clauses) {
            if (a == b) {
                w.declare_unsat("CUT self-loop");
                break;
            }
            auto [ra, pa] = root(a);
            auto [rb, pb] = root(b);
            if (ra == rb) {
                if (pa == pb) {
                    w.declare_unsat("odd CUT cycle");
                    break;
                }
                w.trace.steps.push_back(
                    {"forest-drop",
                     Json{{"clause", Json::array({w.original_names[a], w.original_names[b]})}}});
            } else {
                parent[ra] = rb;
                parity[ra] = pa ^ pb ^ 1;
                kept.push_back({a, b});
            }
        }
        if (!w.unsat) w.inst.cut_clauses = std::move(kept);
    }

    // Phase 2: type split, then identification rules to fixpoint.
    if (!w.unsat) {
        std::vector<VarType> types = infer_types(w.inst);
        for (std::size_t v = 0; v < types.size(); ++v)
            if (types[v] == VarType::Conflict) {
                w.declare_unsat("variable '" + w.original_names[v] +
                                "' used as both Boolean and padding");
                break;
            }
    }
    while (!w.unsat) {
        std::vector<RuleApplication> apps = applicable_rules(w.inst);
        if (apps.empty()) break;
        RuleApplication pick = apps[0];
        if (shuffle) pick = apps[(*shuffle)() % apps.size()];
        rep[find(pick.from)] = find(pick.to);
        w.identify(pick.from, pick.to, pick.padding ? "identify-padding" : "identify-boolean");
    }

    KernelResult result;
    result.instance = w.finish();
    w.trace.vars_after = result.instance.n_variables();
    w.trace.cut_after = static_cast<int>(result.instance.cut_clauses.size());
    w.trace.ordp_after = static_cast<int>(result.instance.ordp_clauses.size());
    result.trace = std::move(w.trace);
    result.class_rep.resize(in.n_variables());
    for (int v = 0; v < in.n_variables(); ++v) result.class_rep[v] = find(v);
    return result;
}

SatDpInstance replay_trace(const SatDpInstance& in, const KernelTrace& trace) {
    Working w(in);
    for (const auto& step : trace.steps) {
        if (step.action == "unsat-detected") {
            w.unsat = true;
        } else if (step.action == "forest-drop") {
            int a = -1, b = -1;
            for (int v = 0; v < static_cast<int>(w.original_names.size()); ++v) {
                if (w.original_names[v] == step.detail.at("clause")[0].get<std::string>()) a = v;
                if (w.original_names[v] == step.detail.at("clause")[1].get<std::string>()) b = v;
            }
            if (a > b) std::swap(a, b);
            auto it = std::find(w.inst.cut_clauses.begin(), w.inst.cut_clauses.end(),
                                std::make_pair(a, b));
            if (it == w.inst.cut_clauses.end())
                throw std::runtime_error("trace replay: dropped clause not present");
            w.inst.cut_clauses.erase(it);
        } else if (step.action == "identify-boolean" || step.action == "identify-padding") {
            int from = -1, to = -1;
            for (int v = 0; v < static_cast<int>(w.original_names.size()); ++v) {
                if (w.original_names[v] == step.detail.at("from").get<std::string>()) from = v;
                if (w.original_names[v] == step.detail.at("to").get<std::string>()) to = v;
            }
            if (from < 0 || to < 0) throw std::runtime_error("trace replay: unknown variable");
            // identify() records a step; drop it afterwards to keep replay pure.
            std::size_t before = w.trace.steps.size();
            w.identify(from, to, step.action.c_str());
            w.trace.steps.resize(before);
        } else {
            throw std::runtime_error("trace replay: unknown action '" + step.action + "'");
        }
    }
    return w.finish();
}

// ---- satisfiability oracle ----

namespace {

const RelationPair& ordp_pair(int p, int q) {
    static std::map<std::pair<int, int>, RelationPair> cache;
    auto it = cache.find({p, q});
    if (it == cache.end()) it = cache.insert({{p, q}, build_or_dp(p, q)}).first;
    return it->second;
}

}  // namespace

SatVerdict satdp_solve(const SatDpInstance& inst, int effective_var_cap) {
    std::vector<VarType> types = infer_types(inst);
    for (std::size_t v = 0; v < types.size(); ++v)
        if (types[v] == VarType::Conflict) return SatVerdict::Unsat;

    std::vector<int> active;  // variables to branch on
    for (std::size_t v = 0; v < types.size(); ++v)
        if (types[v] == VarType::Boolean || types[v] == VarType::Padding)
            active.push_back(static_cast<int>(v));
    if (static_cast<int>(active.size()) > effective_var_cap)
        throw std::runtime_error("satdp_solve: instance above the effective-variable cap");

    const RelationPair& pair = ordp_pair(inst.p, inst.q);
    int p = inst.p;
    int pad_card = 1 << inst.q;
    std::vector<int> assign(types.size(), -1);

    // Does some OR-DP tuple match the partial assignment of this clause?
    auto ordp_alive = [&](const Tuple& cl) {
        for (const Tuple& t : pair.s.tuples) {
            bool ok = true;
            for (std::size_t pos = 0; pos < cl.size() && ok; ++pos) {
                int a = assign[cl[pos]];
                if (a == -1) continue;
                int want = pos < static_cast<std::size_t>(p) ? a : 2 + a;
                if (t[pos] != want) ok = false;
            }
            if (ok) return true;
        }
        return false;
    };
    auto cut_alive = [&](std::pair<int, int> c) {
        int a = assign[c.first], b = assign[c.second];
        if (a != -1 && b != -1) return a != b;
        return true;
    };
    auto all_alive = [&]() {
        for (const auto& c : inst.cut_clauses)
            if (!cut_alive(c)) return false;
        for (const auto& cl : inst.ordp_clauses)
            if (!ordp_alive(cl)) return false;
        return true;
    };

    std::function<bool(std::size_t)> dfs = [&](std::size_t k) -> bool {
        if (!all_alive()) return false;
        if (k == active.size()) return true;
        int v = active[k];
        int card = types[v] == VarType::Boolean ? 2 : pad_card;
        for (int val = 0; val < card; ++val) {
            assign[v] = val;
            if (dfs(k + 1)) return true;
        }
        assign[v] = -1;
        return false;
    };
    return dfs(0) ? SatVerdict::Sat : SatVerdict::Unsat;
}

bool equisat_oracle(const SatDpInstance& a, const SatDpInstance& b, int effective_var_cap) {
    return satdp_solve(a, effective_var_cap) == satdp_solve(b, effective_var_cap);
}

// ---- CNF ----

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula cnf;
    std::istringstream in(text);
    std::string line;
    std::vector<int> current;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, fmt;
            int nc;
            if (!(ls >> p >> fmt >> cnf.n_vars >> nc) || fmt != "cnf")
                throw std::runtime_error("parse error: bad DIMACS header");
            have_header = true;
            continue;
        }
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > cnf.n_vars)
                    throw std::runtime_error("parse error: literal out of range");
                current.push_back(lit);
            }
        }
    }
    if (!have_header) throw std::runtime_error("parse error: missing DIMACS header");
    if (!current.empty()) cnf.clauses.push_back(current);
    return cnf;
}

SatDpInstance cnf_to_satdp(const CnfFormula& cnf, int p, int q) {
    for (std::size_t ci = 0; ci < cnf.clauses.size(); ++ci)
        if (static_cast<int>(cnf.clauses[ci].size()) != p)
            throw std::invalid_argument("clause " + std::to_string(ci) + " does not have exactly " +
                                        std::to_string(p) + " literals");
    SatDpInstance out;
    out.p = p;
    out.q = q;
    int n = cnf.n_vars;
    int lits = 2 * n;
    for (int i = 1; i <= n; ++i) out.variables.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) out.variables.push_back("nx" + std::to_string(i));
    long long pad_count = 1;
    for (int j = 0; j < q; ++j) pad_count *= lits;
    for (long long w = 0; w < pad_count; ++w) {
        std::vector<int> sel = idx_pq(lits, q, static_cast<int>(w));
        std::string nm = "pad(";
        for (int j = 0; j < q; ++j) nm += (j ? "," : "") + out.variables[sel[j]];
        nm += ")";
        out.variables.push_back(nm);
    }
    auto lit_var = [&](int lit) { return lit > 0 ? lit - 1 : n + (-lit) - 1; };
    auto pad_var = [&](const std::vector<int>& w) {
        long long code = 0;
        for (int v : w) code = code * lits + v;
        return lits + static_cast<int>(code);
    };
    for (int i = 0; i < n; ++i) out.cut_clauses.push_back({i, n + i});
    int pads = out.pad_positions();
    for (const auto& clause : cnf.clauses) {
        Tuple t(p + pads);
        for (int j = 0; j < p; ++j) t[j] = lit_var(clause[j]);
        for (int i = 0; i < pads; ++i) {
            std::vector<int> sel = idx_pq(p, q, i);
            std::vector<int> w(q);
            for (int j = 0; j < q; ++j) w[j] = lit_var(clause[sel[j]]);
            t[p + i] = pad_var(w);
        }
        out.ordp_clauses.push_back(std::move(t));
    }
    return out;
}

// ---- size accounting ----

std::vector<std::vector<int>> q_shadow(const std::vector<std::vector<int>>& family, int q) {
    std::set<std::vector<int>> shadow;
    for (const auto& member : family) {
        std::vector<int> sorted = member;
        std::sort(sorted.begin(), sorted.end());
        int p = static_cast<int>(sorted.size());
        if (q > p) throw std::invalid_argument("shadow parameter exceeds the uniformity");
        std::vector<int> pick(q);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<int> sub;
            for (int i : pick) sub.push_back(sorted[i]);
            shadow.insert(sub);
            int i = q - 1;
            while (i >= 0 && pick[i] == p - q + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < q; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return std::vector<std::vector<int>>(shadow.begin(), shadow.end());
}

SizeReport size_report(const SatDpInstance& before, const SatDpInstance& after) {
    SizeReport rep;
    rep.vars_before = before.n_variables();
    rep.vars_after = after.n_variables();
    rep.cut_before = static_cast<int>(before.cut_clauses.size());
    rep.cut_after = static_cast<int>(after.cut_clauses.size());
    rep.ordp_before = static_cast<int>(before.ordp_clauses.size());
    rep.ordp_after = static_cast<int>(after.ordp_clauses.size());

    int p = before.p, q = before.q;
    auto binom = [](int m, int k) {
        double v = 1.0;
        for (int i = 0; i < k; ++i) v = v * (m - i) / (i + 1);
        return v;
    };
    for (int m = p; m <= 10000; ++m) {
        double ratio = binom(m, p) / std::pow(binom(m, q), static_cast<double>(p) / q);
        rep.c_pq = std::max(rep.c_pq, ratio);
    }
    rep.clause_bound =
        2.0 * p * rep.c_pq * std::pow(static_cast<double>(rep.vars_before), static_cast<double>(p) / q);
    rep.within_bound = rep.ordp_after <= rep.clause_bound;

    // Shadow statistics of the reduced instance's Boolean p-sets.
    std::vector<std::vector<int>> family;
    std::set<std::vector<int>> distinct;
    for (const auto& cl : after.ordp_clauses) {
        std::vector<int> a;
        for (int j = 0; j < p; ++j) a.push_back(cl[j] * p + j);  // (variable, position)
        if (distinct.insert(a).second) family.push_back(a);
    }
    rep.boolean_sets = family.size();
    rep.shadow_size = q_shadow(family, q).size();
    std::vector<VarType> types = infer_types(after);
    for (VarType t : types)
        if (t == VarType::Padding) ++rep.padding_vars;
    return rep;
}

SatDpInstance random_satdp(std::mt19937& rng, int p, int q, int max_vars, double conflict_prob) {
    SatDpInstance out;
    out.p = p;
    out.q = q;
    int nb = 2 + static_cast<int>(rng() % std::min(4, max_vars - 4));
    int np = 2 + static_cast<int>(rng() % std::max(1, std::min(5, max_vars - nb - 1)));
    for (int i = 0; i < nb; ++i) out.variables.push_back("b" + std::to_string(i));
    for (int i = 0; i < np; ++i) out.variables.push_back("t" + std::to_string(i));
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    int n_cut = static_cast<int>(rng() % 4);
    for (int c = 0; c < n_cut; ++c) {
        int a = static_cast<int>(rng() % nb), b = static_cast<int>(rng() % nb);
        if (a != b) out.cut_clauses.push_back({a, b});
    }
    int pads = out.pad_positions();
    int n_ordp = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < n_ordp; ++c) {
        Tuple t(p + pads);
        for (int j = 0; j < p; ++j) t[j] = static_cast<int>(rng() % nb);
        for (int i = 0; i < pads; ++i) {
            if (coin(rng) < conflict_prob)
                t[p + i] = static_cast<int>(rng() % nb);  // deliberate type conflict
            else
                t[p + i] = nb + static_cast<int>(rng() % np);
        }
        out.ordp_clauses.push_back(std::move(t));
    }
    // Constructor-style sanity: deduplicate clause lists.
    std::set<std::pair<int, int>> cs(out.cut_clauses.begin(), out.cut_clauses.end());
    out.cut_clauses.assign(cs.begin(), cs.end());
    std::set<Tuple> os(out.ordp_clauses.begin(), out.ordp_clauses.end());
    out.ordp_clauses.assign(os.begin(), os.end());
    return out;
}

// ---- JSON ----

Json to_json(const SatDpInstance& inst) {
    Json j;
    j["p"] = inst.p;
    j["q"] = inst.q;
    j["variables"] = inst.variables;
    Json cuts = Json::array();
    for (auto [a, b] : inst.cut_clauses)
        cuts.push_back(Json::array({inst.variables[a], inst.variables[b]}));
    j["cut_clauses"] = std::move(cuts);
    Json ordps = Json::array();
    for (const auto& cl : inst.ordp_clauses) {
        Json row = Json::array();
        for (int v : cl) row.push_back(inst.variables[v]);
        ordps.push_back(std::move(row));
    }
    j["ordp_clauses"] = std::move(ordps);
    return j;
}

SatDpInstance satdp_from_json(const Json& j) {
    SatDpInstance out;
    out.p = j.at("p").get<int>();
    out.q = j.at("q").get<int>();
    for (const auto& v : j.at("variables")) out.variables.push_back(v.get<std::string>());
    auto var_index = [&](const std::string& nm) {
        for (int v = 0; v < out.n_variables(); ++v)
            if (out.variables[v] == nm) return v;
        throw std::runtime_error("parse error: unknown variable '" + nm + "'");
    };
    for (const auto& c : j.at("cut_clauses")) {
        if (c.size() != 2) throw std::runtime_error("parse error: CUT clause must be binary");
        out.cut_clauses.push_back({var_index(c[0].get<std::string>()),
                                   var_index(c[1].get<std::string>())});
    }
    int want = out.p + out.pad_positions();
    for (const auto& row : j.at("ordp_clauses")) {
        if (static_cast<int>(row.size()) != want)
            throw std::runtime_error("parse error: OR-DP clause must have arity " +
                                     std::to_string(want));
        Tuple t;
        for (const auto& v : row) t.push_back(var_index(v.get<std::string>()));
        out.ordp_clauses.push_back(std::move(t));
    }
    return out;
}

Json to_json(const KernelTrace& trace) {
    Json j;
    j["type"] = "kernel-trace";
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        Json one;
        one["action"] = s.action;
        one["detail"] = s.detail;
        steps.push_back(std::move(one));
    }
    j["steps"] = std::move(steps);
    j["vars_before"] = trace.vars_before;
    j["vars_after"] = trace.vars_after;
    j["cut_before"] = trace.cut_before;
    j["cut_after"] = trace.cut_after;
    j["ordp_before"] = trace.ordp_before;
    j["ordp_after"] = trace.ordp_after;
    j["verdict"] = trace.verdict;
    return j;
}

KernelTrace trace_from_json(const Json& j) {
    KernelTrace trace;
    for (const auto& s : j.at("steps"))
        trace.steps.push_back({s.at("action").get<std::string>(), s.at("detail")});
    trace.vars_before = j.at("vars_before").get<int>();
    trace.vars_after = j.at("vars_after").get<int>();
    trace.cut_before = j.at("cut_before").get<int>();
    trace.cut_after = j.at("cut_after").get<int>();
    trace.ordp_before = j.at("ordp_before").get<int>();
    trace.ordp_after = j.at("ordp_after").get<int>();
    trace.verdict = j.at("verdict").get<std::string>();
    return trace;
}

}  // namespace nrd
