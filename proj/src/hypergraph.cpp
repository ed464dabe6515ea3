#include "nrd/hypergraph.hpp"

#include <functional>
#include <numeric>
#include <set>

namespace nrd {

PartiteHypergraph::PartiteHypergraph(std::vector<std::vector<std::string>> parts_,
                                     std::vector<Tuple> edges_)
    : parts(std::move(parts_)), edges(std::move(edges_)) {
    std::set<Tuple> seen;
    for (const auto& e : edges) {
        if (e.size() != parts.size()) throw std::invalid_argument("edge arity mismatch");
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] < 0 || e[i] >= static_cast<int>(parts[i].size()))
                throw std::invalid_argument("edge vertex out of part");
        if (!seen.insert(e).second) throw std::invalid_argument("duplicate hyperedge");
    }
}

UnitPattern::UnitPattern(MultisortedPattern p) : pattern(std::move(p)) {
    for (const auto& c : pattern.components)
        if (c.identities.size() != 1)
            throw std::invalid_argument("unit pattern components must hold exactly one identity");
}

bool UnitPattern::is_partial_projection() const {
    int n = pattern.arity();
    for (int j = 0; j < n; ++j) {
        bool all = true;
        for (const auto& c : pattern.components)
            if (c.identities[0].out != c.identities[0].args[j]) { all = false; break; }
        if (all) return true;
    }
    return false;
}

std::vector<UnitPattern> unit_decompose(const MultisortedPattern& p) {
    for (const auto& c : p.components)
        if (c.identities.empty()) return {};
    std::vector<UnitPattern> out;
    std::vector<std::size_t> pick(p.components.size(), 0);
    while (true) {
        std::vector<Pattern> comps;
        for (std::size_t i = 0; i < p.components.size(); ++i) {
            Pattern one;
            one.arity = p.arity();
            one.identities = {p.components[i].identities[pick[i]]};
            comps.push_back(std::move(one));
        }
        out.push_back(UnitPattern(MultisortedPattern(std::move(comps))));
        int i = static_cast<int>(pick.size()) - 1;
        while (i >= 0 && pick[i] + 1 == p.components[i].identities.size()) pick[i--] = 0;
        if (i < 0) break;
        ++pick[i];
    }
    return out;
}

PartiteHypergraph hypergraph_of(const UnitPattern& p) {
    if (p.is_partial_projection())
        throw std::invalid_argument("partial projection patterns have no forbidden hypergraph");
    int r = p.pattern.sorts();
    int n = p.pattern.arity();
    std::vector<std::vector<std::string>> parts(r);
    std::vector<std::map<int, int>> vertex_of(r);
    auto vertex = [&](int part, int var) {
        auto it = vertex_of[part].find(var);
        if (it != vertex_of[part].end()) return it->second;
        int v = static_cast<int>(parts[part].size());
        vertex_of[part][var] = v;
        parts[part].push_back("s" + std::to_string(part + 1) + ":v" + std::to_string(var));
        return v;
    };
    std::vector<Tuple> edges;
    std::set<Tuple> seen;
    for (int j = 0; j < n; ++j) {
        Tuple e(r);
        for (int i = 0; i < r; ++i) e[i] = vertex(i, p.pattern.components[i].identities[0].args[j]);
        if (seen.insert(e).second) edges.push_back(e);
    }
    Tuple out_edge(r);
    for (int i = 0; i < r; ++i) out_edge[i] = vertex(i, p.pattern.components[i].identities[0].out);
    if (seen.insert(out_edge).second) edges.push_back(out_edge);
    return PartiteHypergraph(std::move(parts), std::move(edges));
}

std::vector<Tuple> canonical_encoding(const PartiteHypergraph& h) {
    int r = h.n_parts();
    std::vector<std::vector<int>> perms(r);
    for (int i = 0; i < r; ++i) {
        perms[i].resize(h.parts[i].size());
        std::iota(perms[i].begin(), perms[i].end(), 0);
        if (h.parts[i].size() > 7) throw std::invalid_argument("canonical_encoding part too large");
    }
    std::optional<std::vector<Tuple>> best;
    std::function<void(int)> rec = [&](int part) {
        if (part == r) {
            std::vector<Tuple> enc;
            for (const auto& e : h.edges) {
                Tuple t(r);
                for (int i = 0; i < r; ++i) t[i] = perms[i][e[i]];
                enc.push_back(std::move(t));
            }
            std::sort(enc.begin(), enc.end());
            if (!best || enc < *best) best = std::move(enc);
            return;
        }
        std::sort(perms[part].begin(), perms[part].end());
        do rec(part + 1);
        while (std::next_permutation(perms[part].begin(), perms[part].end()));
    };
    rec(0);
    return *best;
}

bool hyper_isomorphic(const PartiteHypergraph& a, const PartiteHypergraph& b) {
    if (a.n_parts() != b.n_parts()) return false;
    for (int i = 0; i < a.n_parts(); ++i)
        if (a.parts[i].size() != b.parts[i].size()) return false;
    if (a.edges.size() != b.edges.size()) return false;
    return canonical_encoding(a) == canonical_encoding(b);
}

namespace {

// Pushforward of one identity through a surjective position map; nullopt
// when the arguments are not constant on some fiber.
std::optional<PatternIdentity> pushforward(const PatternIdentity& id, const std::vector<int>& h,
                                           int new_arity) {
    PatternIdentity out;
    out.args.assign(new_arity, -1);
    for (std::size_t j = 0; j < h.size(); ++j) {
        int pos = h[j];
        if (out.args[pos] == -1)
            out.args[pos] = id.args[j];
        else if (out.args[pos] != id.args[j])
            return std::nullopt;
    }
    out.out = id.out;
    return out;
}

}  // namespace

std::vector<PartiteHypergraph> hq_closure(const std::vector<MultisortedPattern>& q) {
    std::vector<PartiteHypergraph> result;
    std::vector<std::vector<Tuple>> encodings;
    auto add = [&](const PartiteHypergraph& h) {
        std::vector<Tuple> enc = canonical_encoding(h);
        // Compare only against hypergraphs of the same shape.
        for (std::size_t i = 0; i < result.size(); ++i) {
            if (result[i].edges.size() != h.edges.size()) continue;
            bool same_shape = result[i].n_parts() == h.n_parts();
            for (int p = 0; same_shape && p < h.n_parts(); ++p)
                same_shape = result[i].parts[p].size() == h.parts[p].size();
            if (same_shape && encodings[i] == enc) return;
        }
        result.push_back(h);
        encodings.push_back(std::move(enc));
    };

    for (const MultisortedPattern& p : q) {
        int n = p.arity();
        for (int n2 = 1; n2 <= n; ++n2) {
            std::vector<int> h(n, 0);
            while (true) {
                bool surjective = true;
                std::vector<bool> hit(n2, false);
                for (int img : h) hit[img] = true;
                for (bool b : hit) surjective = surjective && b;
                if (surjective) {
                    // Pullback identity sets per component.
                    std::vector<std::vector<PatternIdentity>> pulled(p.sorts());
                    bool nonempty = true;
                    for (int i = 0; i < p.sorts() && nonempty; ++i) {
                        for (const auto& id : p.components[i].identities)
                            if (auto pf = pushforward(id, h, n2)) pulled[i].push_back(*pf);
                        nonempty = !pulled[i].empty();
                    }
                    if (nonempty) {
                        std::vector<Pattern> comps(p.sorts());
                        for (int i = 0; i < p.sorts(); ++i) {
                            comps[i].arity = n2;
                            comps[i].identities = pulled[i];
                        }
                        for (const UnitPattern& u : unit_decompose(MultisortedPattern(comps)))
                            if (!u.is_partial_projection()) add(hypergraph_of(u));
                    }
                }
                int i = n - 1;
                while (i >= 0 && h[i] == n2 - 1) h[i--] = 0;
                if (i < 0) break;
                ++h[i];
            }
        }
    }
    return result;
}

PartiteHypergraph to_hypergraph(const Instance& inst) {
    if (!inst.partition) throw std::invalid_argument("to_hypergraph needs a multipartite instance");
    int r = static_cast<int>(inst.partition->size());
    std::vector<std::vector<std::string>> parts(r);
    std::vector<int> local(inst.n_variables(), -1);
    for (int i = 0; i < r; ++i)
        for (int v : (*inst.partition)[i]) {
            local[v] = static_cast<int>(parts[i].size());
            parts[i].push_back(inst.variables[v]);
        }
    std::vector<Tuple> edges;
    for (const auto& c : inst.clauses) {
        Tuple e(r);
        for (int i = 0; i < r; ++i) e[i] = local[c[i]];
        edges.push_back(e);
    }
    return PartiteHypergraph(std::move(parts), std::move(edges));
}

EmbedResult hfree_check(const PartiteHypergraph& host, const PartiteHypergraph& pattern,
                        std::uint64_t node_cap) {
    if (host.n_parts() != pattern.n_parts())
        throw std::invalid_argument("hfree_check needs matching part counts");
    int r = host.n_parts();
    std::set<Tuple> host_edges(host.edges.begin(), host.edges.end());

    std::vector<std::vector<int>> vmap(r);
    std::vector<std::set<int>> used(r);
    for (int i = 0; i < r; ++i) vmap[i].assign(pattern.parts[i].size(), -1);

    std::uint64_t nodes = 0;
    bool capped = false;
    std::function<bool(std::size_t)> dfs = [&](std::size_t edge_idx) -> bool {
        if (++nodes > node_cap) { capped = true; return false; }
        if (edge_idx == pattern.edges.size()) return true;
        const Tuple& pe = pattern.edges[edge_idx];
        for (const Tuple& he : host.edges) {
            bool ok = true;
            std::vector<int> assigned;
            for (int i = 0; i < r && ok; ++i) {
                int pv = pe[i], hv = he[i];
                if (vmap[i][pv] == -1) {
                    if (used[i].count(hv)) { ok = false; break; }
                    vmap[i][pv] = hv;
                    used[i].insert(hv);
                    assigned.push_back(i);
                } else if (vmap[i][pv] != hv) {
                    ok = false;
                }
            }
            if (ok && dfs(edge_idx + 1)) return true;
            for (int i : assigned) {
                used[i].erase(vmap[i][pe[i]]);
                vmap[i][pe[i]] = -1;
            }
            if (capped) return false;
        }
        return false;
    };
    EmbedResult res;
    if (dfs(0)) {
        res.status = EmbedStatus::Found;
        res.vertex_map = vmap;
    } else {
        res.status = capped ? EmbedStatus::Unknown : EmbedStatus::None;
    }
    return res;
}

UnitPattern minimal_redundant_to_pattern(const Instance& inst, const RelationPair& pair,
                                         const SearchCaps& caps) {
    if (!inst.partition) throw std::invalid_argument("minimal redundant instances must be multipartite");
    NrdReport rep = check_nonredundant(inst, pair, Mode::Conditional, caps);
    if (rep.unknown) throw std::runtime_error("witness search hit the cap");
    int redundant = -1;
    for (int ci = 0; ci < inst.n_clauses(); ++ci)
        if (rep.per_clause[ci].status == SearchStatus::None) { redundant = ci; break; }
    if (redundant == -1)
        throw std::invalid_argument("instance is conditionally non-redundant, not minimal redundant");
    for (int drop = 0; drop < inst.n_clauses(); ++drop) {
        std::vector<Tuple> rest;
        for (int ci = 0; ci < inst.n_clauses(); ++ci)
            if (ci != drop) rest.push_back(inst.clauses[ci]);
        Instance sub(inst.variables, inst.partition, std::move(rest));
        if (!check_nonredundant(sub, pair, Mode::Conditional, caps).nonredundant)
            throw std::invalid_argument("a proper sub-instance is already redundant");
    }

    int r = pair.s.arity;
    std::vector<Pattern> comps(r);
    for (int i = 0; i < r; ++i) {
        PatternIdentity id;
        for (int ci = 0; ci < inst.n_clauses(); ++ci)
            if (ci != redundant) id.args.push_back(inst.clauses[ci][i]);
        id.out = inst.clauses[redundant][i];
        comps[i].arity = inst.n_clauses() - 1;
        comps[i].identities = {id};
    }
    UnitPattern unit = UnitPattern(MultisortedPattern(std::move(comps)));
    RelationPair cond(pair.s, complement_tilde(pair));
    if (preserves(unit.pattern, cond).status != PreservesStatus::Preserved)
        throw std::logic_error("extracted pattern does not preserve (S, T~)");
    return unit;
}

int ex_r_search(int n, int r, const std::vector<PartiteHypergraph>& forbidden) {
    if (n > 7) throw std::invalid_argument("ex_r_search is capped at n <= 7");
    int best = 0;
    // All ways to split n labeled vertices into r ordered parts.
    std::vector<int> part_of(n, 0);
    while (true) {
        std::vector<std::vector<std::string>> parts(r);
        std::vector<int> local(n);
        for (int v = 0; v < n; ++v) {
            local[v] = static_cast<int>(parts[part_of[v]].size());
            parts[part_of[v]].push_back("v" + std::to_string(v));
        }
        std::vector<Tuple> universe;
        {
            std::vector<std::size_t> sizes(r);
            bool any = true;
            for (int i = 0; i < r; ++i) {
                sizes[i] = parts[i].size();
                if (!sizes[i]) any = false;
            }
            if (any) {
                Tuple idx(r, 0);
                while (true) {
                    universe.push_back(idx);
                    int i = r - 1;
                    while (i >= 0 && idx[i] + 1 == static_cast<int>(sizes[i])) idx[i--] = 0;
                    if (i < 0) break;
                    ++idx[i];
                }
            }
        }
        std::vector<Tuple> current;
        std::function<void(std::size_t)> dfs = [&](std::size_t next) {
            best = std::max(best, static_cast<int>(current.size()));
            for (std::size_t j = next; j < universe.size(); ++j) {
                if (static_cast<int>(current.size() + universe.size() - j) <= best) return;
                current.push_back(universe[j]);
                PartiteHypergraph h(parts, current);
                bool free = true;
                for (const auto& f : forbidden)
                    if (hfree_check(h, f).status == EmbedStatus::Found) { free = false; break; }
                if (free) dfs(j + 1);
                current.pop_back();
            }
        };
        dfs(0);
        int v = n - 1;
        while (v >= 0 && part_of[v] == r - 1) part_of[v--] = 0;
        if (v < 0) break;
        ++part_of[v];
    }
    return best;
}

Json to_json(const PartiteHypergraph& h) {
    Json j;
    Json parts = Json::array();
    std::vector<std::string> all;
    for (const auto& p : h.parts) {
        Json part = Json::array();
        for (const auto& v : p) part.push_back(v);
        parts.push_back(std::move(part));
        for (const auto& v : p) all.push_back(v);
    }
    j["variables"] = all;
    j["parts"] = std::move(parts);
    Json edges = Json::array();
    for (const auto& e : h.edges) {
        Json row = Json::array();
        for (std::size_t i = 0; i < e.size(); ++i) row.push_back(h.parts[i][e[i]]);
        edges.push_back(std::move(row));
    }
    j["edges"] = std::move(edges);
    return j;
}

PartiteHypergraph hypergraph_from_json(const Json& j) {
    if (!j.contains("parts")) throw std::runtime_error("parse error: hypergraph needs 'parts'");
    std::vector<std::vector<std::string>> parts;
    for (const auto& p : j.at("parts")) {
        std::vector<std::string> part;
        for (const auto& v : p) part.push_back(v.get<std::string>());
        parts.push_back(std::move(part));
    }
    auto find_vertex = [&](std::size_t part, const std::string& nm) {
        for (std::size_t v = 0; v < parts[part].size(); ++v)
            if (parts[part][v] == nm) return static_cast<int>(v);
        throw std::runtime_error("parse error: unknown vertex '" + nm + "'");
    };
    std::vector<Tuple> edges;
    for (const auto& e : j.at("edges")) {
        Tuple edge;
        for (std::size_t i = 0; i < e.size(); ++i)
            edge.push_back(find_vertex(i, e[i].get<std::string>()));
        edges.push_back(std::move(edge));
    }
    return PartiteHypergraph(std::move(parts), std::move(edges));
}

}  // namespace nrd
