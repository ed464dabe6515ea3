#include "nrd/zoo.hpp"

#include <numeric>
#include <queue>
#include <set>

namespace nrd {

// ---- rationals ----

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("rational division by zero");
    return Rational(num * o.den, den * o.num);
}

// ---- basic Boolean relations ----

Relation build_or(int p) {
    if (p < 1) throw std::invalid_argument("OR arity must be positive");
    Domain d = numeric_domain(2);
    std::vector<Tuple> ts;
    for (int mask = 1; mask < (1 << p); ++mask) {
        Tuple t(p);
        for (int i = 0; i < p; ++i) t[i] = (mask >> (p - 1 - i)) & 1;
        ts.push_back(std::move(t));
    }
    return Relation(d, p, std::move(ts));
}

Relation build_cut() { return Relation(numeric_domain(2), 2, {{0, 1}, {1, 0}}); }
Relation build_eq() { return Relation(numeric_domain(2), 2, {{0, 0}, {1, 1}}); }

Relation build_one_in_three() {
    return Relation(numeric_domain(2), 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

Relation build_3lin() {
    std::vector<Tuple> ts;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) ts.push_back({x, y, (6 - x - y) % 3});
    return Relation(numeric_domain(3), 3, std::move(ts));
}

Relation build_3lin_star() {
    Relation r = build_3lin();
    std::vector<Tuple> ts;
    for (const auto& t : r.tuples)
        if (t != Tuple{0, 0, 0}) ts.push_back(t);
    return Relation(r.domain, 3, std::move(ts));
}

// ---- OR-DP ----

std::vector<int> idx_pq(int p, int q, int i) {
    std::vector<int> t(q);
    for (int j = q - 1; j >= 0; --j) {
        t[j] = i % p;
        i /= p;
    }
    return t;
}

RelationPair build_or_dp(int p, int q, int arity_cap) {
    if (q < 1 || p < q) throw std::invalid_argument("build_or_dp needs p >= q >= 1");
    int pads = 1;
    for (int j = 0; j < q; ++j) {
        pads *= p;
        if (p + pads > arity_cap) throw std::invalid_argument("build_or_dp arity exceeds cap");
    }
    int arity = p + pads;

    std::vector<std::string> elems = {"0", "1"};
    for (int b = 0; b < (1 << q); ++b) {
        std::string nm = "(";
        for (int j = q - 1; j >= 0; --j) nm += char('0' + ((b >> j) & 1));
        nm += ")";
        elems.push_back(nm);
    }
    Domain dom(std::move(elems));
    auto pad_value = [&](int bits) { return 2 + bits; };

    std::vector<Tuple> dp, ordp;
    for (int mask = 0; mask < (1 << p); ++mask) {
        Tuple t(arity);
        for (int i = 0; i < p; ++i) t[i] = (mask >> (p - 1 - i)) & 1;
        for (int i = 0; i < pads; ++i) {
            std::vector<int> sel = idx_pq(p, q, i);
            int bits = 0;
            for (int j = 0; j < q; ++j) bits = (bits << 1) | t[sel[j]];
            t[p + i] = pad_value(bits);
        }
        dp.push_back(t);
        if (mask != 0) ordp.push_back(t);
    }
    return RelationPair(Relation(dom, arity, std::move(ordp)), Relation(dom, arity, std::move(dp)));
}

SetFamily::SetFamily(int p_, int q_, std::vector<std::vector<int>> sets_)
    : p(p_), q(q_), sets(std::move(sets_)) {
    std::set<std::set<int>> seen;
    for (const auto& s : sets) {
        if (static_cast<int>(s.size()) != q)
            throw std::invalid_argument("family member of wrong size");
        std::set<int> key(s.begin(), s.end());
        if (static_cast<int>(key.size()) != q)
            throw std::invalid_argument("family member has repeated coordinates");
        for (int i : s)
            if (i < 0 || i >= p) throw std::invalid_argument("family member out of range");
        if (!seen.insert(key).second) throw std::invalid_argument("family members must be distinct");
    }
}

SetFamily shoelace_family() { return SetFamily(3, 2, {{0, 1}, {1, 2}, {2, 0}}); }

RelationPair build_or_dp_family(const SetFamily& f) {
    std::vector<bool> covered(f.p, false);
    for (const auto& s : f.sets)
        for (int i : s) covered[i] = true;
    for (int i = 0; i < f.p; ++i)
        if (!covered[i])
            throw std::invalid_argument("coordinate " + std::to_string(i) + " not covered by family");

    std::vector<std::string> elems;
    for (int b = 0; b < (1 << f.q); ++b) {
        std::string nm;
        for (int j = f.q - 1; j >= 0; --j) nm += char('0' + ((b >> j) & 1));
        elems.push_back(nm);
    }
    Domain dom(std::move(elems));
    int arity = static_cast<int>(f.sets.size());

    std::vector<Tuple> dp, ordp;
    for (int mask = 0; mask < (1 << f.p); ++mask) {
        Tuple t(arity);
        for (int si = 0; si < arity; ++si) {
            int bits = 0;
            for (int j = 0; j < f.q; ++j) bits = (bits << 1) | ((mask >> (f.p - 1 - f.sets[si][j])) & 1);
            t[si] = bits;
        }
        dp.push_back(t);
        if (mask != 0) ordp.push_back(t);
    }
    return RelationPair(Relation(dom, arity, std::move(ordp)), Relation(dom, arity, std::move(dp)));
}

namespace {

// Exact Gaussian elimination; returns the unique solution of M x = rhs using
// exactly the given columns, or nullopt when the columns are dependent or the
// system inconsistent.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> rhs) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<int> pivot_row_of_col(cols, -1);
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int r = row; r < rows; ++r)
            if (!m[r][col].zero()) { pr = r; break; }
        if (pr == -1) return std::nullopt;  // dependent columns
        std::swap(m[pr], m[row]);
        std::swap(rhs[pr], rhs[row]);
        Rational inv = Rational(1) / m[row][col];
        for (int c = col; c < cols; ++c) m[row][c] = m[row][c] * inv;
        rhs[row] = rhs[row] * inv;
        for (int r = 0; r < rows; ++r) {
            if (r == row || m[r][col].zero()) continue;
            Rational factor = m[r][col];
            for (int c = col; c < cols; ++c) m[r][c] = m[r][c] - factor * m[row][c];
            rhs[r] = rhs[r] - factor * rhs[row];
        }
        pivot_row_of_col[col] = row;
        ++row;
    }
    if (row < cols) return std::nullopt;
    for (int r = row; r < rows; ++r)
        if (!rhs[r].zero()) return std::nullopt;  // inconsistent
    std::vector<Rational> x(cols);
    for (int c = 0; c < cols; ++c) x[c] = rhs[pivot_row_of_col[c]];
    return x;
}

}  // namespace

RegularityReport is_regular(const SetFamily& f) {
    int m = static_cast<int>(f.sets.size());
    Rational target(f.q, f.p);

    // Fast path: uniform weights.
    {
        bool ok = true;
        for (int i = 0; i < f.p && ok; ++i) {
            int deg = 0;
            for (const auto& s : f.sets)
                if (std::find(s.begin(), s.end(), i) != s.end()) ++deg;
            ok = Rational(deg, m) == target;
        }
        if (ok) return {true, std::vector<Rational>(m, Rational(1, m))};
    }

    // Vertex enumeration of {pi >= 0, sum pi = 1, marginals = q/p}.
    int rows = f.p + 1;
    auto column = [&](int si) {
        std::vector<Rational> col(rows, Rational(0));
        col[0] = Rational(1);
        for (int j : f.sets[si]) col[1 + j] = Rational(1);
        return col;
    };
    std::vector<Rational> rhs(rows, target);
    rhs[0] = Rational(1);

    int max_support = std::min(m, rows);
    for (int size = 1; size <= max_support; ++size) {
        std::vector<int> pick(size);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(size));
            for (int c = 0; c < size; ++c) {
                auto col = column(pick[c]);
                for (int r = 0; r < rows; ++r) mat[r][c] = col[r];
            }
            if (auto x = solve_exact(mat, rhs)) {
                bool nonneg = true;
                for (const auto& v : *x) nonneg = nonneg && !v.negative();
                if (nonneg) {
                    std::vector<Rational> weights(m, Rational(0));
                    for (int c = 0; c < size; ++c) weights[pick[c]] = (*x)[c];
                    return {true, std::move(weights)};
                }
            }
            int i = size - 1;
            while (i >= 0 && pick[i] == m - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return {false, {}};
}

// ---- cycle predicates ----

CycleRelations build_cycles(int k) {
    if (k < 2) throw std::invalid_argument("build_cycles needs k >= 2");
    Domain d = numeric_domain(k);
    std::vector<Tuple> c = {{0, 0}, {k - 1, k - 1}};
    for (int i = 0; i + 1 < k; ++i) {
        c.push_back({i, i + 1});
        c.push_back({i + 1, i});
    }
    std::vector<Tuple> ct;
    for (int i = 0; i < k; ++i) ct.push_back({i, i});
    for (int i = 0; i + 1 < k; ++i) ct.push_back({i, i + 1});
    ct.push_back({k - 1, 0});

    auto minus00 = [&](std::vector<Tuple> ts) {
        std::vector<Tuple> out;
        for (auto& t : ts)
            if (t != Tuple{0, 0}) out.push_back(t);
        return out;
    };
    CycleRelations out;
    out.c = Relation(d, 2, c);
    out.c_star = Relation(d, 2, minus00(c));
    out.c_tilde = Relation(d, 2, ct);
    out.c_tilde_star = Relation(d, 2, minus00(ct));
    return out;
}

RelationPair build_r_s(int k) {
    CycleRelations cyc = build_cycles(k);
    std::vector<Tuple> s, r;
    for (const auto& t : cyc.c.tuples)
        for (int b = 0; b < 2; ++b) {
            Tuple u = {t[0], t[1], b};
            s.push_back(u);
            if (u != Tuple{0, 0, 0}) r.push_back(u);
        }
    Domain d = numeric_domain(k);
    return RelationPair(Relation(d, 3, std::move(r)), Relation(d, 3, std::move(s)));
}

CycPair build_cyc(int m) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("build_cyc needs odd m >= 3");
    Domain d = numeric_domain(m);
    std::vector<Tuple> cyc;
    for (int x = 0; x < m; ++x)
        for (int dy = 0; dy <= 1; ++dy) {
            int y = (x + dy) % m;
            int z = ((m - x) + (m - y)) % m;
            cyc.push_back({x, y, z});
        }
    std::vector<Tuple> star;
    for (const auto& t : cyc)
        if (t != Tuple{0, 0, 0}) star.push_back(t);
    CycPair out;
    out.cyc = Relation(d, 3, std::move(cyc));
    out.cyc_star = Relation(d, 3, std::move(star));
    return out;
}

Relation build_bck() { return build_cyc(3).cyc_star; }

Relation build_pauli() {
    Domain d({"x", "y", "z"});
    // Columns of the 6x5 letter matrix; rows are the five arity-5 identities.
    const char* rows[6] = {"xxyyz", "xxzyy", "zxxyy", "xyyxz", "zxyyx", "xyzxy"};
    std::vector<Tuple> ts;
    for (int col = 0; col < 5; ++col) {
        Tuple t(6);
        for (int r = 0; r < 6; ++r) t[r] = d.index(std::string(1, rows[r][col]));
        ts.push_back(std::move(t));
    }
    return Relation(d, 6, std::move(ts));
}

// ---- graphs ----

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const Graph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        auto [a, b] = g.edges[e];
        if (a < 0 || b < 0 || a >= g.n || b >= g.n || a == b)
            throw std::invalid_argument("bad graph edge");
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    return adj;
}

}  // namespace

int graph_girth(const Graph& g) {
    auto adj = adjacency(g);
    int best = kInfiniteGirth;
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> dist(g.n, -1), via_edge(g.n, -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[u]) {
                if (e == via_edge[u]) continue;
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    via_edge[v] = e;
                    q.push(v);
                } else {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    return best;
}

std::vector<int> shortest_cycle(const Graph& g) {
    auto adj = adjacency(g);
    int best = kInfiniteGirth;
    std::vector<int> best_cycle;
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> dist(g.n, -1), parent(g.n, -1), via_edge(g.n, -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[u]) {
                if (e == via_edge[u]) continue;
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    via_edge[v] = e;
                    q.push(v);
                } else if (dist[u] + dist[v] + 1 < best) {
                    // Join the parent paths of u and v at their first common vertex.
                    std::vector<int> pu, pv;
                    for (int w = u; w != -1; w = parent[w]) pu.push_back(w);
                    for (int w = v; w != -1; w = parent[w]) pv.push_back(w);
                    std::vector<char> on_pu(g.n, 0);
                    for (int w : pu) on_pu[w] = 1;
                    int join = -1;
                    for (int w : pv)
                        if (on_pu[w]) { join = w; break; }
                    std::vector<int> cycle;
                    for (int w : pu) {
                        cycle.push_back(w);
                        if (w == join) break;
                    }
                    std::vector<int> side;
                    for (int w : pv) {
                        if (w == join) break;
                        side.push_back(w);
                    }
                    std::reverse(side.begin(), side.end());
                    for (int w : side) cycle.push_back(w);
                    best = static_cast<int>(cycle.size());
                    best_cycle = std::move(cycle);
                }
            }
        }
    }
    return best_cycle;
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
    auto adj = adjacency(g);
    std::vector<int> color(g.n, -1);
    for (int s = 0; s < g.n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, e] : adj[u]) {
                (void)e;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

const std::map<std::string, Graph>& builtin_graphs() {
    static const std::map<std::string, Graph> graphs = [] {
        std::map<std::string, Graph> m;
        auto cycle = [](int len) {
            Graph g;
            g.n = len;
            for (int i = 0; i < len; ++i) g.edges.push_back({i, (i + 1) % len});
            return g;
        };
        m["cycle4"] = cycle(4);
        m["cycle6"] = cycle(6);
        m["cycle8"] = cycle(8);
        {
            Graph heawood;
            heawood.n = 14;
            for (int i = 0; i < 14; ++i) heawood.edges.push_back({i, (i + 1) % 14});
            for (int i = 1; i < 14; i += 2) heawood.edges.push_back({i, (i + 5) % 14});
            m["heawood"] = heawood;
        }
        {
            Graph path4;  // a tree
            path4.n = 5;
            for (int i = 0; i < 4; ++i) path4.edges.push_back({i, i + 1});
            m["path4"] = path4;
        }
        {
            Graph star5;  // a tree
            star5.n = 6;
            for (int i = 1; i < 6; ++i) star5.edges.push_back({0, i});
            m["star5"] = star5;
        }
        {
            Graph k33;
            k33.n = 6;
            for (int a = 0; a < 3; ++a)
                for (int b = 3; b < 6; ++b) k33.edges.push_back({a, b});
            m["k33"] = k33;
        }
        {
            Graph cube;  // 3-cube, girth 4
            cube.n = 8;
            for (int v = 0; v < 8; ++v)
                for (int b = 0; b < 3; ++b)
                    if (v < (v ^ (1 << b))) cube.edges.push_back({v, v ^ (1 << b)});
            m["cube"] = cube;
        }
        return m;
    }();
    return graphs;
}

Graph random_bipartite_graph(std::mt19937& rng, int max_side, double edge_prob) {
    std::uniform_int_distribution<int> side(1, max_side);
    int left = side(rng), right = side(rng);
    Graph g;
    g.n = left + right;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int a = 0; a < left; ++a)
        for (int b = 0; b < right; ++b)
            if (coin(rng) < edge_prob) g.edges.push_back({a, left + b});
    return g;
}

Instance gen_girth_instance(const Graph& g) {
    auto colors = bipartition(g);
    if (!colors) throw std::invalid_argument("gen_girth_instance needs a bipartite graph");
    std::vector<std::string> vars;
    for (int v = 0; v < g.n; ++v) vars.push_back("v" + std::to_string(v));
    std::vector<std::vector<int>> blocks(2);
    for (int v = 0; v < g.n; ++v) blocks[(*colors)[v]].push_back(v);
    std::vector<Tuple> clauses;
    for (auto [a, b] : g.edges) {
        if ((*colors)[a] == 0)
            clauses.push_back({a, b});
        else
            clauses.push_back({b, a});
    }
    return Instance(std::move(vars), std::move(blocks), std::move(clauses));
}

Assignment girth_witness_coloring(const Graph& g, int edge_index, int k) {
    if (edge_index < 0 || edge_index >= static_cast<int>(g.edges.size()))
        throw std::invalid_argument("edge index out of range");
    int girth = graph_girth(g);
    if (girth < 2 * k)
        throw GirthViolation("graph has girth " + std::to_string(girth) + " < " + std::to_string(2 * k),
                             shortest_cycle(g));
    auto adj = adjacency(g);
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    auto [x0, y0] = g.edges[edge_index];
    dist[x0] = dist[y0] = 0;
    q.push(x0);
    q.push(y0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, e] : adj[u]) {
            (void)e;
            if (dist[v] == -1) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    Assignment f(g.n);
    for (int v = 0; v < g.n; ++v) f[v] = dist[v] == -1 ? k - 1 : std::min(dist[v], k - 1);
    return f;
}

// ---- instance generators ----

GeneratedInstance gen_or_dp_lower(int p, int q, int n) {
    if (n < p) throw std::invalid_argument("gen_or_dp_lower needs n >= p");
    RelationPair pair = build_or_dp(p, q);
    std::vector<std::string> vars;
    for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
    // One padding variable for every q-tuple over X, lexicographic.
    long long pad_count = 1;
    for (int j = 0; j < q; ++j) pad_count *= n;
    for (long long i = 0; i < pad_count; ++i) {
        std::vector<int> w = idx_pq(n, q, static_cast<int>(i));
        std::string nm = "pad(";
        for (int j = 0; j < q; ++j) nm += (j ? "," : "") + vars[w[j]];
        nm += ")";
        vars.push_back(nm);
    }
    auto pad_index = [&](const std::vector<int>& w) {
        long long i = 0;
        for (int j = 0; j < q; ++j) i = i * n + w[j];
        return n + static_cast<int>(i);
    };

    int pads = pair.s.arity - p;
    std::vector<Tuple> clauses;
    std::vector<int> subset(p);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
        Tuple cl(pair.s.arity);
        for (int i = 0; i < p; ++i) cl[i] = subset[i];
        for (int i = 0; i < pads; ++i) {
            std::vector<int> sel = idx_pq(p, q, i);
            std::vector<int> w(q);
            for (int j = 0; j < q; ++j) w[j] = subset[sel[j]];
            cl[p + i] = pad_index(w);
        }
        clauses.push_back(std::move(cl));
        int i = p - 1;
        while (i >= 0 && subset[i] == n - p + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < p; ++j) subset[j] = subset[j - 1] + 1;
    }
    return {Instance(std::move(vars), std::nullopt, std::move(clauses)), std::move(pair)};
}

GeneratedInstance gen_or_family_lower(const SetFamily& f, int t) {
    if (t < 1) throw std::invalid_argument("gen_or_family_lower needs t >= 1");
    RelationPair pair = build_or_dp_family(f);
    int members = static_cast<int>(f.sets.size());
    long long tq = 1;
    for (int j = 0; j < f.q; ++j) tq *= t;

    std::vector<std::string> vars;
    std::vector<std::vector<int>> blocks(members);
    for (int si = 0; si < members; ++si)
        for (long long wi = 0; wi < tq; ++wi) {
            std::vector<int> w = idx_pq(t, f.q, static_cast<int>(wi));
            std::string nm = "F" + std::to_string(si) + "(";
            for (int j = 0; j < f.q; ++j) nm += (j ? "," : "") + std::to_string(w[j]);
            nm += ")";
            blocks[si].push_back(static_cast<int>(vars.size()));
            vars.push_back(nm);
        }
    auto var_of = [&](int si, const std::vector<int>& w) {
        long long i = 0;
        for (int j = 0; j < f.q; ++j) i = i * t + w[j];
        return static_cast<int>(si * tq + i);
    };

    long long tp = 1;
    for (int j = 0; j < f.p; ++j) tp *= t;
    std::vector<Tuple> clauses;
    for (long long zi = 0; zi < tp; ++zi) {
        std::vector<int> z = idx_pq(t, f.p, static_cast<int>(zi));
        Tuple cl(members);
        for (int si = 0; si < members; ++si) {
            std::vector<int> w(f.q);
            for (int j = 0; j < f.q; ++j) w[j] = z[f.sets[si][j]];
            cl[si] = var_of(si, w);
        }
        clauses.push_back(std::move(cl));
    }
    return {Instance(std::move(vars), std::move(blocks), std::move(clauses)), std::move(pair)};
}

GeneratedInstance gen_shoelace_lower(int t) { return gen_or_family_lower(shoelace_family(), t); }

GeneratedInstance gen_r2k_lower(int k, const Graph& core, int n3) {
    if (n3 < 1) throw std::invalid_argument("gen_r2k_lower needs n3 >= 1");
    Instance bip = gen_girth_instance(core);
    RelationPair pair = build_r_s(k);

    std::vector<std::string> vars = bip.variables;
    std::vector<std::vector<int>> blocks = *bip.partition;
    blocks.emplace_back();
    for (int w = 0; w < n3; ++w) {
        blocks[2].push_back(static_cast<int>(vars.size()));
        vars.push_back("w" + std::to_string(w));
    }
    std::vector<Tuple> clauses;
    for (const auto& e : bip.clauses)
        for (int w = 0; w < n3; ++w) clauses.push_back({e[0], e[1], core.n + w});
    return {Instance(std::move(vars), std::move(blocks), std::move(clauses)), std::move(pair)};
}

// ---- registry ----

const std::vector<ZooEntry>& zoo_entries() {
    static const std::vector<ZooEntry> entries = {
        {"OR", "--p", false},
        {"CUT", "", false},
        {"EQ", "", false},
        {"1IN3", "", false},
        {"3LIN", "", false},
        {"3LIN*", "", false},
        {"BCK", "", false},
        {"PAULI", "", false},
        {"OR-DP", "--p --q", true},
        {"OR-DP-F", "(triangle family)", true},
        {"C2K", "--k", true},
        {"CTILDE2K", "--k", true},
        {"RS2K", "--k", true},
        {"CYC", "--m", true},
    };
    return entries;
}

Relation zoo_relation(const std::string& name, const ZooParams& params) {
    if (name == "OR") return build_or(params.p > 0 ? params.p : 2);
    if (name == "CUT") return build_cut();
    if (name == "EQ") return build_eq();
    if (name == "1IN3") return build_one_in_three();
    if (name == "3LIN") return build_3lin();
    if (name == "3LIN*") return build_3lin_star();
    if (name == "BCK") return build_bck();
    if (name == "PAULI") return build_pauli();
    throw std::invalid_argument("unknown zoo relation '" + name + "'");
}

RelationPair zoo_pair(const std::string& name, const ZooParams& params) {
    if (name == "OR-DP") return build_or_dp(params.p, params.q);
    if (name == "OR-DP-F") return build_or_dp_family(shoelace_family());
    if (name == "C2K") {
        CycleRelations c = build_cycles(params.k);
        return RelationPair(c.c_star, c.c);
    }
    if (name == "CTILDE2K") {
        CycleRelations c = build_cycles(params.k);
        return RelationPair(c.c_tilde_star, c.c_tilde);
    }
    if (name == "RS2K") return build_r_s(params.k);
    if (name == "CYC") {
        CycPair c = build_cyc(params.m);
        return RelationPair(c.cyc_star, c.cyc);
    }
    throw std::invalid_argument("unknown zoo pair '" + name + "'");
}

}  // namespace nrd
