#include "nrd/embedding.hpp"

#include <cmath>
#include <set>

#include "nrd/zoo.hpp"

namespace nrd {

// ---- Pauli group ----

PauliElem pauli_identity() { return {}; }
PauliElem pauli_x() { return {0, 1, 0, 0}; }
PauliElem pauli_y() { return {0, 0, 1, 0}; }
PauliElem pauli_z() { return {0, 0, 0, 1}; }

PauliElem pauli_mul(const PauliElem& a, const PauliElem& b) {
    PauliElem out;
    // Moving X^b2 left through Y^c1 Z^d1 and Y^c2 left through Z^d1 picks up
    // (-1)^{c1 b2 + d1 b2 + d1 c2}.
    out.sign = (a.sign + b.sign + a.by * b.bx + a.bz * b.bx + a.bz * b.by) % 2;
    out.bx = a.bx ^ b.bx;
    out.by = a.by ^ b.by;
    out.bz = a.bz ^ b.bz;
    return out;
}

PauliElem pauli_inv(const PauliElem& a) {
    // a*a = (-1)^{bx by + bx bz + by bz} I, so the inverse is a up to sign.
    PauliElem out = a;
    out.sign = (a.sign + a.bx * a.by + a.bx * a.bz + a.by * a.bz) % 2;
    return out;
}

std::string pauli_name(const PauliElem& e) {
    std::string s = e.sign ? "-" : "";
    if (e.bx) s += "X";
    if (e.by) s += "Y";
    if (e.bz) s += "Z";
    if (!e.bx && !e.by && !e.bz) s += "I";
    return s;
}

namespace {

int pauli_code(const PauliElem& e) { return e.sign * 8 + e.bx * 4 + e.by * 2 + e.bz; }

PauliElem pauli_from_code(int code) {
    return {code >> 3 & 1, code >> 2 & 1, code >> 1 & 1, code & 1};
}

}  // namespace

const FiniteGroup& pauli_group() {
    static const FiniteGroup group = [] {
        std::vector<std::string> names;
        for (int c = 0; c < 16; ++c) names.push_back(pauli_name(pauli_from_code(c)));
        std::vector<std::vector<int>> mult(16, std::vector<int>(16));
        for (int a = 0; a < 16; ++a)
            for (int b = 0; b < 16; ++b)
                mult[a][b] = pauli_code(pauli_mul(pauli_from_code(a), pauli_from_code(b)));
        return FiniteGroup(Domain(std::move(names)), std::move(mult));
    }();
    return group;
}

// ---- coset closure ----

std::vector<Tuple> coset_closure(const FiniteGroup& g, const std::vector<Tuple>& generators,
                                 std::size_t element_cap) {
    if (generators.empty()) return {};
    std::size_t r = generators[0].size();
    for (const auto& t : generators)
        if (t.size() != r) throw std::invalid_argument("coset generators of mixed arity");

    // Subgroup H generated by the pairwise differences g_1^-1 g_i; the coset
    // is g_1 H.
    auto inv_mul = [&](const Tuple& a, const Tuple& b) {
        Tuple out(r);
        for (std::size_t i = 0; i < r; ++i) out[i] = g.op(g.inverse[a[i]], b[i]);
        return out;
    };
    std::vector<Tuple> diffs;
    for (const auto& gen : generators) {
        diffs.push_back(inv_mul(generators[0], gen));
        diffs.push_back(inv_mul(gen, generators[0]));
    }
    std::set<Tuple> subgroup;
    std::vector<Tuple> queue;
    Tuple id(r, g.identity);
    subgroup.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        Tuple cur = queue.back();
        queue.pop_back();
        for (const auto& d : diffs) {
            Tuple next(r);
            for (std::size_t i = 0; i < r; ++i) next[i] = g.op(cur[i], d[i]);
            if (subgroup.insert(next).second) {
                if (subgroup.size() > element_cap)
                    throw std::runtime_error("coset closure exceeded the element cap");
                queue.push_back(next);
            }
        }
    }
    std::vector<Tuple> coset;
    for (const auto& h : subgroup) {
        Tuple c(r);
        for (std::size_t i = 0; i < r; ++i) c[i] = g.op(generators[0][i], h[i]);
        coset.push_back(std::move(c));
    }
    std::sort(coset.begin(), coset.end());
    return coset;
}

GroupEmbeddingReport verify_group_embedding(const Relation& r, const FiniteGroup& g,
                                            const std::vector<int>& eta) {
    if (static_cast<int>(eta.size()) != r.domain.size())
        throw std::invalid_argument("eta must map every domain element");
    std::set<int> image(eta.begin(), eta.end());
    if (static_cast<int>(image.size()) != r.domain.size())
        throw std::invalid_argument("eta must be injective");
    if (r.tuples.empty()) throw std::invalid_argument("empty relation has no coset");

    std::vector<Tuple> generators;
    for (const auto& t : r.tuples) {
        Tuple gt(r.arity);
        for (int i = 0; i < r.arity; ++i) gt[i] = eta[t[i]];
        generators.push_back(std::move(gt));
    }
    std::vector<Tuple> closure = coset_closure(g, generators);

    std::vector<int> back(g.elements.size(), -1);
    for (int d = 0; d < static_cast<int>(eta.size()); ++d) back[eta[d]] = d;

    GroupEmbeddingReport rep;
    for (const auto& c : closure) {
        Tuple pre(r.arity);
        bool in_image = true;
        for (int i = 0; i < r.arity && in_image; ++i) {
            if (back[c[i]] == -1)
                in_image = false;
            else
                pre[i] = back[c[i]];
        }
        if (!in_image) continue;
        rep.closure_in_image.push_back(pre);
        if (!r.contains(pre)) rep.extras.push_back(pre);
    }
    std::sort(rep.closure_in_image.begin(), rep.closure_in_image.end());
    rep.embeds = rep.extras.empty() &&
                 rep.closure_in_image.size() == r.tuples.size();
    return rep;
}

// ---- integer lattice ----

IntegerLattice::IntegerLattice(std::vector<std::vector<BigInt>> generators) {
    if (generators.empty()) return;
    dim_ = static_cast<int>(generators[0].size());
    std::size_t n = generators.size();
    std::vector<std::vector<BigInt>> rows = std::move(generators);
    std::vector<std::vector<BigInt>> u(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

    std::size_t pivot_row = 0;
    for (int col = 0; col < dim_ && pivot_row < n; ++col) {
        // Reduce the column below pivot_row to a single nonzero entry by
        // repeated subtraction (gcd style).
        while (true) {
            std::size_t best = n;
            for (std::size_t r = pivot_row; r < n; ++r) {
                if (rows[r][col] == 0) continue;
                if (best == n ||
                    abs(rows[r][col]) < abs(rows[best][col]))
                    best = r;
            }
            if (best == n) break;  // column empty below pivot
            std::swap(rows[pivot_row], rows[best]);
            std::swap(u[pivot_row], u[best]);
            bool any_other = false;
            for (std::size_t r = pivot_row + 1; r < n; ++r) {
                if (rows[r][col] == 0) continue;
                BigInt q = rows[r][col] / rows[pivot_row][col];
                for (int c = 0; c < dim_; ++c) rows[r][c] -= q * rows[pivot_row][c];
                for (std::size_t c = 0; c < n; ++c) u[r][c] -= q * u[pivot_row][c];
                if (rows[r][col] != 0) any_other = true;
            }
            if (!any_other) {
                if (rows[pivot_row][col] < 0) {
                    for (int c = 0; c < dim_; ++c) rows[pivot_row][c] = -rows[pivot_row][c];
                    for (std::size_t c = 0; c < n; ++c) u[pivot_row][c] = -u[pivot_row][c];
                }
                basis_.push_back(rows[pivot_row]);
                transform_.push_back(u[pivot_row]);
                pivot_col_.push_back(col);
                ++pivot_row;
                break;
            }
        }
    }
}

std::optional<std::vector<BigInt>> IntegerLattice::decompose(const std::vector<BigInt>& v) const {
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("vector dimension mismatch");
    std::vector<BigInt> rem = v;
    std::size_t n_orig = transform_.empty() ? 0 : transform_[0].size();
    std::vector<BigInt> coeffs(n_orig, 0);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        int col = pivot_col_[k];
        if (rem[col] == 0) continue;
        if (rem[col] % basis_[k][col] != 0) return std::nullopt;
        BigInt q = rem[col] / basis_[k][col];
        for (int c = 0; c < dim_; ++c) rem[c] -= q * basis_[k][c];
        for (std::size_t c = 0; c < n_orig; ++c) coeffs[c] += q * transform_[k][c];
    }
    for (const BigInt& x : rem)
        if (x != 0) return std::nullopt;
    return coeffs;
}

std::vector<BigInt> indicator_vector(const Tuple& t, int dsize) {
    std::vector<BigInt> v(t.size() * dsize, 0);
    for (std::size_t i = 0; i < t.size(); ++i) v[i * dsize + t[i]] = 1;
    return v;
}

AbelianReport abelian_embedding_check(const Relation& r) {
    int dsize = r.domain.size();
    std::vector<std::vector<BigInt>> gens;
    for (const auto& t : r.tuples) gens.push_back(indicator_vector(t, dsize));
    IntegerLattice lattice(std::move(gens));

    AbelianReport rep;
    rep.embeds = true;
    if (r.tuples.empty()) return rep;
    for (const auto& t : full_relation(r.domain, r.arity).tuples) {
        if (r.contains(t)) continue;
        if (auto coeffs = lattice.decompose(indicator_vector(t, dsize))) {
            rep.embeds = false;
            rep.offenders.push_back({t, std::move(*coeffs)});
        }
    }
    return rep;
}

// ---- balancedness ----

BalancedReport balanced_check(const Relation& r, int m_max, std::uint64_t sequence_cap) {
    if (r.domain.size() != 2)
        throw std::invalid_argument("balanced_check needs a Boolean relation");
    if (m_max % 2 == 0) --m_max;
    double sequences = 0;
    for (int m = 1; m <= m_max; m += 2)
        sequences += std::pow(static_cast<double>(r.tuples.size()), m);
    if (sequences > static_cast<double>(sequence_cap))
        throw std::runtime_error("balanced_check: sequence space exceeds the cap");
    BalancedReport rep;
    rep.balanced = true;
    int arity = r.arity;
    for (int m = 1; m <= m_max && rep.balanced; m += 2) {
        rep.m_checked = m;
        std::vector<int> pick(m, 0);
        std::vector<Tuple> chosen(m);
        // Exhaustive over sequences with repetition.
        std::function<void(int)> dfs = [&](int j) {
            if (!rep.balanced) return;
            if (j == m) {
                Tuple sums(arity, 0);
                for (int i = 0; i < arity; ++i) {
                    int s = 0;
                    for (int a = 0; a < m; ++a)
                        s += (a % 2 == 0 ? chosen[a][i] : -chosen[a][i]);
                    if (s != 0 && s != 1) return;
                    sums[i] = s;
                }
                if (!r.contains(sums)) {
                    rep.balanced = false;
                    rep.counterexample = BalancedCounterexample{m, chosen, sums};
                }
                return;
            }
            for (const auto& t : r.tuples) {
                chosen[j] = t;
                dfs(j + 1);
                if (!rep.balanced) return;
            }
        };
        dfs(0);
    }
    return rep;
}

// ---- DP coset ----

DpCosetReport verify_dp_coset(int p, int q) {
    RelationPair pair = build_or_dp(p, q);
    const Domain& d = pair.t.domain;
    int pads = pair.t.arity - p;

    // sigma : D_{p,q} -> (Z/2)^{q+2} as bitmasks; component j+1 is bit j.
    auto sigma = [&](int elem) -> int {
        const std::string& nm = d.name(elem);
        if (nm == "0") return 0;
        if (nm == "1") return 1;
        int mask = 1 << 1;
        for (int j = 0; j < q; ++j)
            if (nm[1 + j] == '1') mask |= 1 << (2 + j);
        return mask;
    };

    // H: free Boolean choice on the first p positions, pads forced by (iii).
    std::set<std::vector<int>> h_set;
    for (int bits = 0; bits < (1 << p); ++bits) {
        std::vector<int> tup(pair.t.arity);
        std::vector<int> beta(p);
        for (int i = 0; i < p; ++i) {
            beta[i] = (bits >> (p - 1 - i)) & 1;
            tup[i] = beta[i];
        }
        for (int i = 0; i < pads; ++i) {
            std::vector<int> sel = idx_pq(p, q, i);
            int mask = 1 << 1;
            for (int j = 0; j < q; ++j) mask |= beta[sel[j]] << (2 + j);
            tup[p + i] = mask;
        }
        h_set.insert(std::move(tup));
    }
    // H is a coset: closed under x - y + z (XOR in (Z/2)^{q+2}).
    for (const auto& x : h_set)
        for (const auto& y : h_set)
            for (const auto& z : h_set) {
                std::vector<int> w(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) w[i] = x[i] ^ y[i] ^ z[i];
                if (!h_set.count(w)) return {false, h_set.size()};
            }

    std::set<std::vector<int>> sigma_dp;
    for (const auto& t : pair.t.tuples) {
        std::vector<int> img(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = sigma(t[i]);
        sigma_dp.insert(std::move(img));
    }
    // Every element of H lies in sigma(D)^{p+p^q} by construction, so the
    // intersection is H itself.
    DpCosetReport rep;
    rep.coset_size = h_set.size();
    rep.ok = sigma_dp == h_set;
    return rep;
}

}  // namespace nrd
