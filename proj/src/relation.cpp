#include "nrd/relation.hpp"

#include <set>
#include <unordered_set>

namespace nrd {

Domain::Domain(std::vector<std::string> elems) : elements(std::move(elems)) {
    std::unordered_set<std::string> seen;
    for (const auto& e : elements)
        if (!seen.insert(e).second)
            throw std::invalid_argument("domain element '" + e + "' repeated");
}

int Domain::index(const std::string& nm) const {
    for (int i = 0; i < size(); ++i)
        if (elements[i] == nm) return i;
    throw std::invalid_argument("'" + nm + "' is not a domain element");
}

Domain numeric_domain(int n) {
    std::vector<std::string> es;
    es.reserve(n);
    for (int i = 0; i < n; ++i) es.push_back(std::to_string(i));
    return Domain(std::move(es));
}

Relation::Relation(Domain d, int r, std::vector<Tuple> ts)
    : domain(std::move(d)), arity(r), tuples(std::move(ts)) {
    if (arity < 1) throw std::invalid_argument("relation arity must be positive");
    for (const auto& t : tuples) {
        if (static_cast<int>(t.size()) != arity)
            throw std::invalid_argument("relation tuple of wrong arity");
        for (int v : t)
            if (v < 0 || v >= domain.size())
                throw std::invalid_argument("relation tuple entry out of domain");
    }
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
}

namespace {

// Calls f on every tuple of D^r in lexicographic order.
template <typename F>
void for_each_tuple(int dsize, int r, F&& f) {
    Tuple t(r, 0);
    while (true) {
        f(t);
        int i = r - 1;
        while (i >= 0 && t[i] == dsize - 1) t[i--] = 0;
        if (i < 0) return;
        ++t[i];
    }
}

}  // namespace

Relation Relation::complement() const {
    std::vector<Tuple> out;
    for_each_tuple(domain.size(), arity, [&](const Tuple& t) {
        if (!contains(t)) out.push_back(t);
    });
    return Relation(domain, arity, std::move(out));
}

Relation full_relation(const Domain& d, int r) {
    std::vector<Tuple> out;
    for_each_tuple(d.size(), r, [&](const Tuple& t) { out.push_back(t); });
    return Relation(d, r, std::move(out));
}

RelationPair::RelationPair(Relation s_, Relation t_) : s(std::move(s_)), t(std::move(t_)) {
    if (!(s.domain == t.domain)) throw std::invalid_argument("pair relations over different domains");
    if (s.arity != t.arity) throw std::invalid_argument("pair relations of different arities");
    for (const auto& tup : s.tuples)
        if (!t.contains(tup))
            throw std::invalid_argument("pair violates S subseteq T");
}

Relation complement_tilde(const RelationPair& pair) {
    std::vector<Tuple> out;
    for_each_tuple(pair.s.domain.size(), pair.s.arity, [&](const Tuple& t) {
        if (pair.s.contains(t) || !pair.t.contains(t)) out.push_back(t);
    });
    return Relation(pair.s.domain, pair.s.arity, std::move(out));
}

Instance::Instance(std::vector<std::string> vars,
                   std::optional<std::vector<std::vector<int>>> part,
                   std::vector<Tuple> cls)
    : variables(std::move(vars)), partition(std::move(part)), clauses(std::move(cls)) {
    std::unordered_set<std::string> seen;
    for (const auto& v : variables)
        if (!seen.insert(v).second)
            throw std::invalid_argument("variable '" + v + "' repeated");
    std::set<Tuple> cl_seen;
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
        const auto& c = clauses[ci];
        for (int v : c)
            if (v < 0 || v >= n_variables())
                throw std::invalid_argument("clause " + std::to_string(ci) +
                                            " references unknown variable");
        if (!cl_seen.insert(c).second)
            throw std::invalid_argument("clause " + std::to_string(ci) + " duplicated");
    }
    if (partition) {
        std::vector<int> block_of(variables.size(), -1);
        for (std::size_t b = 0; b < partition->size(); ++b)
            for (int v : (*partition)[b]) {
                if (v < 0 || v >= n_variables() || block_of[v] != -1)
                    throw std::invalid_argument("partition blocks not disjoint");
                block_of[v] = static_cast<int>(b);
            }
        for (const auto& c : clauses) {
            if (c.size() != partition->size())
                throw std::invalid_argument("clause arity does not match partition");
            for (std::size_t i = 0; i < c.size(); ++i)
                if (block_of[c[i]] != static_cast<int>(i))
                    throw std::invalid_argument("clause position drawn from wrong block");
        }
    }
}

int Instance::variable_index(const std::string& nm) const {
    for (int i = 0; i < n_variables(); ++i)
        if (variables[i] == nm) return i;
    throw std::invalid_argument("'" + nm + "' is not a variable");
}

Instance multipartite_lift(const Instance& inst, int arity) {
    for (const auto& c : inst.clauses)
        if (static_cast<int>(c.size()) != arity)
            throw std::invalid_argument("clause arity mismatch in multipartite_lift");
    int n = inst.n_variables();
    std::vector<std::string> vars;
    vars.reserve(static_cast<std::size_t>(n) * arity);
    std::vector<std::vector<int>> blocks(arity);
    for (int i = 0; i < arity; ++i)
        for (int x = 0; x < n; ++x) {
            blocks[i].push_back(static_cast<int>(vars.size()));
            vars.push_back(inst.variables[x] + "@" + std::to_string(i + 1));
        }
    std::vector<Tuple> clauses;
    clauses.reserve(inst.clauses.size());
    for (const auto& c : inst.clauses) {
        Tuple lifted(arity);
        for (int i = 0; i < arity; ++i) lifted[i] = i * n + c[i];
        clauses.push_back(std::move(lifted));
    }
    return Instance(std::move(vars), std::move(blocks), std::move(clauses));
}

Relation tensor(const Relation& a, const Relation& b) {
    if (a.arity != b.arity) throw std::invalid_argument("tensor arity mismatch");
    std::vector<std::string> elems;
    for (const auto& x : a.domain.elements)
        for (const auto& y : b.domain.elements) elems.push_back(x + "|" + y);
    Domain prod(std::move(elems));
    auto code = [&](int x, int y) { return x * b.domain.size() + y; };
    std::vector<Tuple> ts;
    ts.reserve(a.tuples.size() * b.tuples.size());
    for (const auto& ta : a.tuples)
        for (const auto& tb : b.tuples) {
            Tuple t(a.arity);
            for (int i = 0; i < a.arity; ++i) t[i] = code(ta[i], tb[i]);
            ts.push_back(std::move(t));
        }
    return Relation(std::move(prod), a.arity, std::move(ts));
}

RelationPair tensor(const RelationPair& a, const RelationPair& b) {
    return RelationPair(tensor(a.s, b.s), tensor(a.t, b.t));
}

}  // namespace nrd
