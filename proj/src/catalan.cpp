#include "nrd/catalan.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "nrd/zoo.hpp"

namespace nrd {

MaltsevTerm::MaltsevTerm(Domain d, std::vector<int> t) : domain(std::move(d)), table(std::move(t)) {
    int n = domain.size();
    if (static_cast<int>(table.size()) != n * n * n)
        throw std::invalid_argument("Mal'tsev table has wrong size");
    for (int v : table)
        if (v < 0 || v >= n) throw std::invalid_argument("Mal'tsev table entry out of domain");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (eval(x, x, y) != y || eval(y, x, x) != y)
                throw std::invalid_argument("table violates the Mal'tsev identities");
}

FiniteGroup::FiniteGroup(Domain elems, std::vector<std::vector<int>> m)
    : elements(std::move(elems)), mult(std::move(m)) {
    int n = elements.size();
    if (static_cast<int>(mult.size()) != n)
        throw std::invalid_argument("multiplication table has wrong size");
    for (const auto& row : mult) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("multiplication table has wrong size");
        for (int v : row)
            if (v < 0 || v >= n) throw std::invalid_argument("multiplication entry out of range");
    }
    identity = -1;
    for (int e = 0; e < n && identity == -1; ++e) {
        bool is_id = true;
        for (int a = 0; a < n; ++a) is_id = is_id && mult[e][a] == a && mult[a][e] == a;
        if (is_id) identity = e;
    }
    if (identity == -1) throw std::invalid_argument("no identity element");
    inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (mult[a][b] == identity && mult[b][a] == identity) inverse[a] = b;
    for (int a = 0; a < n; ++a)
        if (inverse[a] == -1) throw std::invalid_argument("element without inverse");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
                    throw std::invalid_argument("multiplication not associative");
}

int FiniteGroup::alternating_product(const Tuple& args) const {
    int acc = identity;
    for (std::size_t i = 0; i < args.size(); ++i)
        acc = op(acc, i % 2 == 0 ? args[i] : inverse[args[i]]);
    return acc;
}

FiniteGroup cyclic_group(int n) {
    std::vector<std::vector<int>> mult(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mult[a][b] = (a + b) % n;
    return FiniteGroup(numeric_domain(n), std::move(mult));
}

FiniteGroup symmetric_group_3() {
    // Permutations of {0,1,2} in lexicographic order.
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p = {0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    int n = 6;
    std::vector<std::string> names;
    for (const auto& q : perms)
        names.push_back(std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
    std::vector<std::vector<int>> mult(n, std::vector<int>(n));
    auto index_of = [&](const std::array<int, 3>& q) {
        for (int i = 0; i < n; ++i)
            if (perms[i] == q) return i;
        return -1;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::array<int, 3> comp;  // (a o b)(x) = a(b(x))
            for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
            mult[a][b] = index_of(comp);
        }
    return FiniteGroup(Domain(std::move(names)), std::move(mult));
}

MaltsevTerm group_maltsev(const FiniteGroup& g) {
    int n = g.elements.size();
    std::vector<int> table(n * n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                table[(x * n + y) * n + z] = g.op(g.op(x, g.inverse[y]), z);
    return MaltsevTerm(g.elements, std::move(table));
}

MaltsevTerm named_group_maltsev(const std::string& name) {
    if (name == "Z2") return group_maltsev(cyclic_group(2));
    if (name == "Z3") return group_maltsev(cyclic_group(3));
    if (name == "Z4") return group_maltsev(cyclic_group(4));
    if (name == "Z5") return group_maltsev(cyclic_group(5));
    if (name == "S3") return group_maltsev(symmetric_group_3());
    throw std::invalid_argument("unknown group '" + name + "' (use Z2..Z5 or S3)");
}

MaltsevTerm random_maltsev(std::mt19937& rng) {
    int n = 3;
    std::vector<int> table(n * n * n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            table[(x * n + x) * n + y] = y;
            table[(y * n + x) * n + x] = y;
        }
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int& v : table)
        if (v == -1) v = pick(rng);
    return MaltsevTerm(numeric_domain(n), std::move(table));
}

// ---- Catalan tables ----

namespace {

std::uint64_t fnv_hash(const MaltsevTerm& phi) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(phi.domain.size());
    for (int v : phi.table) mix(static_cast<std::uint64_t>(v) + 17);
    return h;
}

}  // namespace

CatalanFamily::CatalanFamily(MaltsevTerm phi, std::string cache_dir)
    : phi_(std::move(phi)), cache_dir_(std::move(cache_dir)) {
    int n = phi_.domain.size();
    std::vector<std::uint8_t> f1(n);
    std::iota(f1.begin(), f1.end(), 0);
    tables_.push_back(std::move(f1));
}

int CatalanFamily::eval_range(int m, const Tuple& args, int from) const {
    const auto& table = tables_[(m - 1) / 2];
    int n = phi_.domain.size();
    long long idx = 0;
    for (int i = 0; i < m; ++i) idx = idx * n + args[from + i];
    return table[idx];
}

int CatalanFamily::eval(int m, const Tuple& args) const {
    if (m < 1 || m % 2 == 0 || m > max_m()) throw std::invalid_argument("eval arity out of range");
    if (static_cast<int>(args.size()) != m) throw std::invalid_argument("eval argument count");
    return eval_range(m, args, 0);
}

void CatalanFamily::extend_to(int m) {
    if (m % 2 == 0) throw std::invalid_argument("Catalan arities are odd");
    int n = phi_.domain.size();
    while (max_m() < m) {
        int cur = max_m() + 2;  // build f_cur, cur = 2k+1
        std::string cache_file;
        if (!cache_dir_.empty()) {
            cache_file = cache_dir_ + "/catalan_" + std::to_string(fnv_hash(phi_)) + "_m" +
                         std::to_string(cur) + ".bin";
            std::ifstream in(cache_file, std::ios::binary);
            if (in) {
                long long size = 1;
                for (int i = 0; i < cur; ++i) size *= n;
                std::vector<std::uint8_t> table(size);
                in.read(reinterpret_cast<char*>(table.data()), size);
                if (in.gcount() == size) {
                    tables_.push_back(std::move(table));
                    continue;
                }
            }
        }
        int k = (cur - 1) / 2;
        long long size = 1;
        for (int i = 0; i < cur; ++i) size *= n;
        std::vector<std::uint8_t> table(size);
        Tuple args(cur, 0);
        Tuple gs(cur - 2);
        for (long long idx = 0; idx < size; ++idx) {
            // Decode idx into args (big-endian).
            long long rest = idx;
            for (int i = cur - 1; i >= 0; --i) {
                args[i] = static_cast<int>(rest % n);
                rest /= n;
            }
            for (int j = 2; j <= 2 * k; ++j) {
                int g;
                if (j % 2 == 0) {
                    int left = eval_range(j - 1, args, 0);
                    int right = eval_range(cur - j, args, j);
                    g = phi_.eval(left, args[j - 1], right);
                } else {
                    int left = eval_range(j, args, 0);
                    int right = eval_range(cur + 1 - j, args, j - 1);
                    g = phi_.eval(left, args[j - 1], right);
                }
                gs[j - 2] = g;
            }
            table[idx] = static_cast<std::uint8_t>(eval_range(cur - 2, gs, 0));
        }
        if (!cache_file.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cache_dir_, ec);
            std::ofstream out(cache_file, std::ios::binary);
            if (out) out.write(reinterpret_cast<const char*>(table.data()), size);
        }
        tables_.push_back(std::move(table));
    }
}

CatalanReport verify_catalan(CatalanFamily& fam, int m_max) {
    if (m_max % 2 == 0) --m_max;
    fam.extend_to(m_max);
    int n = fam.source().domain.size();
    CatalanReport rep;
    for (int m = 3; m <= m_max; m += 2) {
        Tuple args(m, 0);
        while (true) {
            for (int i = 1; i < m; ++i) {
                if (args[i - 1] != args[i]) continue;
                Tuple dropped;
                for (int j = 0; j < m; ++j)
                    if (j != i - 1 && j != i) dropped.push_back(args[j]);
                ++rep.checked;
                if (fam.eval(m, args) != fam.eval(m - 2, dropped)) {
                    rep.ok = false;
                    rep.counterexample = CatalanCounterexample{m, i, args};
                    return rep;
                }
            }
            int i = m - 1;
            while (i >= 0 && args[i] == n - 1) args[i--] = 0;
            if (i < 0) break;
            ++args[i];
        }
    }
    rep.ok = true;
    return rep;
}

// ---- Coxeter ----

std::vector<int> coxeter_reduce(const std::vector<int>& word) {
    std::vector<int> stack;
    for (int letter : word) {
        if (!stack.empty() && stack.back() == letter)
            stack.pop_back();
        else
            stack.push_back(letter);
    }
    return stack;
}

ReduceTrace coxeter_reduce_trace(const std::vector<int>& word) {
    ReduceTrace trace;
    std::vector<std::pair<int, int>> stack;  // (letter, original index)
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!stack.empty() && stack.back().first == word[i]) {
            trace.cancellations.push_back({stack.back().second, static_cast<int>(i)});
            stack.pop_back();
        } else {
            stack.push_back({word[i], static_cast<int>(i)});
        }
    }
    for (auto& [letter, idx] : stack) trace.survivors.push_back(idx);
    return trace;
}

bool cat_pattern_check(const std::vector<std::vector<int>>& rows, const std::vector<int>& outputs) {
    if (rows.size() != outputs.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<int> reduced = coxeter_reduce(rows[i]);
        if (reduced.size() != 1 || reduced[0] != outputs[i]) return false;
    }
    return true;
}

// ---- exclusion ----

bool verify_exclusion(const ExclusionCertificate& cert) {
    int r = cert.relation.arity;
    int m = cert.m;
    if (static_cast<int>(cert.columns.size()) != m) return false;
    if (static_cast<int>(cert.schedules.size()) != r) return false;
    for (const auto& col : cert.columns)
        if (!cert.relation.contains(col)) return false;
    if (cert.relation.contains(cert.output)) return false;

    for (int row = 0; row < r; ++row) {
        // Replay the schedule on a doubly linked list of alive positions.
        std::vector<int> prev(m), next(m), letter(m);
        std::vector<bool> alive(m, true);
        for (int i = 0; i < m; ++i) {
            prev[i] = i - 1;
            next[i] = i + 1;
            letter[i] = cert.columns[i][row];
        }
        for (auto [a, b] : cert.schedules[row]) {
            if (a < 0 || b < 0 || a >= m || b >= m || !alive[a] || !alive[b]) return false;
            if (next[a] != b || letter[a] != letter[b]) return false;
            alive[a] = alive[b] = false;
            int p = prev[a], q = next[b];
            if (p >= 0) next[p] = q;
            if (q < m) prev[q] = p;
        }
        int survivors = 0, last = -1;
        for (int i = 0; i < m; ++i)
            if (alive[i]) {
                ++survivors;
                last = i;
            }
        if (survivors != 1 || letter[last] != cert.output[row]) return false;
    }
    return true;
}

namespace {

// Can a stack of length `len` reach length 1 after `remaining` appends.
bool reducible(int len, int remaining) {
    if ((len + remaining) % 2 == 0) return false;
    return len - remaining <= 1;
}

struct ExclusionSearch {
    const Relation& rel;
    std::uint64_t node_cap;
    std::uint64_t nodes = 0;
    bool capped = false;
    int m = 0;
    std::vector<int> columns;
    std::vector<std::vector<int>> stacks;  // per row
    std::optional<ExclusionCertificate> found;
    std::string name;

    void dfs(int j) {
        if (found || capped) return;
        if (++nodes > node_cap) { capped = true; return; }
        int r = rel.arity;
        if (j == m) {
            Tuple out(r);
            for (int i = 0; i < r; ++i) {
                if (stacks[i].size() != 1) return;
                out[i] = stacks[i][0];
            }
            if (rel.contains(out)) return;
            ExclusionCertificate cert;
            cert.relation_name = name;
            cert.relation = rel;
            cert.m = m;
            for (int c : columns) cert.columns.push_back(rel.tuples[c]);
            for (int i = 0; i < r; ++i) {
                std::vector<int> word;
                for (int c : columns) word.push_back(rel.tuples[c][i]);
                ReduceTrace trace = coxeter_reduce_trace(word);
                cert.schedules.push_back(trace.cancellations);
            }
            cert.output = out;
            found = std::move(cert);
            return;
        }
        for (std::size_t ti = 0; ti < rel.tuples.size(); ++ti) {
            const Tuple& t = rel.tuples[ti];
            std::vector<int> pushed(r);  // 1 = pushed, 0 = popped
            bool ok = true;
            for (int i = 0; i < r; ++i) {
                auto& st = stacks[i];
                if (!st.empty() && st.back() == t[i]) {
                    st.pop_back();
                    pushed[i] = 0;
                } else {
                    st.push_back(t[i]);
                    pushed[i] = 1;
                }
                if (!reducible(static_cast<int>(st.size()), m - j - 1)) ok = false;
            }
            if (ok) {
                columns[j] = static_cast<int>(ti);
                dfs(j + 1);
            }
            for (int i = r - 1; i >= 0; --i) {
                auto& st = stacks[i];
                if (pushed[i])
                    st.pop_back();
                else
                    st.push_back(t[i]);
            }
            if (found || capped) return;
        }
    }
};

}  // namespace

ExclusionSearchResult exclusion_search(const Relation& r, int m_max, std::uint64_t node_cap,
                                       const std::string& relation_name) {
    if (m_max % 2 == 0) --m_max;
    ExclusionSearchResult result;
    for (int m = 3; m <= m_max; m += 2) {
        ExclusionSearch search{r, node_cap};
        search.m = m;
        search.name = relation_name;
        search.columns.assign(m, -1);
        search.stacks.assign(r.arity, {});
        search.dfs(0);
        if (search.found) {
            result.status = ExclusionStatus::Found;
            result.certificate = std::move(search.found);
            result.m_reached = m;
            return result;
        }
        if (search.capped) {
            result.status = ExclusionStatus::Capped;
            return result;
        }
        result.m_reached = m;
    }
    result.status = ExclusionStatus::NoneFound;
    return result;
}

ExclusionCertificate build_cyc_exclusion(int m) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("build_cyc_exclusion needs odd m >= 3");
    CycPair cy = build_cyc(m);
    ExclusionCertificate cert;
    cert.relation_name = "CYC*_" + std::to_string(m);
    cert.relation = cy.cyc_star;
    cert.m = 2 * m - 1;
    auto mod = [&](long long v) { return static_cast<int>(((v % m) + m) % m); };
    for (int i = 1; i <= 2 * m - 1; ++i) {
        Tuple col(3);
        if (i % 2 == 1) {
            long long j = (i - 1) / 2;
            col = {mod(-j), mod(-j + 1), mod(2 * j - 1)};
        } else {
            long long j = i / 2;
            col = {mod(j), mod(j), mod(-2 * j)};
        }
        cert.columns.push_back(col);
    }
    for (int row = 0; row < 3; ++row) {
        std::vector<int> word;
        for (const auto& col : cert.columns) word.push_back(col[row]);
        ReduceTrace trace = coxeter_reduce_trace(word);
        if (trace.survivors.size() != 1)
            throw std::logic_error("cyc exclusion row does not reduce to one letter");
        cert.schedules.push_back(trace.cancellations);
    }
    cert.output = {0, 0, 0};
    if (!verify_exclusion(cert)) throw std::logic_error("cyc exclusion certificate failed to verify");
    return cert;
}

// ---- Boolean Bal/Cat tables ----

PartialFn boolean_bal_table(int m) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("Bal_m needs odd m");
    PartialFn f;
    f.domain = numeric_domain(2);
    f.arity = m;
    Tuple args(m, 0);
    while (true) {
        int sum = 0;
        for (int i = 0; i < m; ++i) sum += (i % 2 == 0 ? args[i] : -args[i]);
        if (sum == 0 || sum == 1) f.table[args] = sum;
        int i = m - 1;
        while (i >= 0 && args[i] == 1) args[i--] = 0;
        if (i < 0) break;
        ++args[i];
    }
    return f;
}

PartialFn boolean_cat_table(int m) {
    if (m < 1 || m % 2 == 0) throw std::invalid_argument("Cat_m needs odd m");
    PartialFn f;
    f.domain = numeric_domain(2);
    f.arity = m;
    Tuple args(m, 0);
    while (true) {
        std::vector<int> reduced = coxeter_reduce(args);
        if (reduced.size() == 1) f.table[args] = reduced[0];
        int i = m - 1;
        while (i >= 0 && args[i] == 1) args[i--] = 0;
        if (i < 0) break;
        ++args[i];
    }
    return f;
}

// ---- JSON ----

Json to_json(const ExclusionCertificate& cert) {
    Json j;
    j["type"] = "exclusion";
    j["relation_name"] = cert.relation_name;
    j["relation"] = to_json(cert.relation);
    j["m"] = cert.m;
    const Domain& d = cert.relation.domain;
    Json cols = Json::array();
    for (const auto& col : cert.columns) {
        Json row = Json::array();
        for (int v : col) row.push_back(d.name(v));
        cols.push_back(std::move(row));
    }
    j["columns"] = std::move(cols);
    Json scheds = Json::array();
    for (const auto& s : cert.schedules) {
        Json one = Json::array();
        for (auto [a, b] : s) one.push_back(Json::array({a, b}));
        scheds.push_back(std::move(one));
    }
    j["schedules"] = std::move(scheds);
    Json out = Json::array();
    for (int v : cert.output) out.push_back(d.name(v));
    j["output"] = std::move(out);
    return j;
}

ExclusionCertificate exclusion_from_json(const Json& j) {
    ExclusionCertificate cert;
    cert.relation_name = j.value("relation_name", "");
    cert.relation = relation_from_json(j.at("relation"));
    cert.m = j.at("m").get<int>();
    const Domain& d = cert.relation.domain;
    for (const auto& row : j.at("columns")) {
        Tuple col;
        for (const auto& e : row) col.push_back(d.index(e.get<std::string>()));
        cert.columns.push_back(std::move(col));
    }
    for (const auto& s : j.at("schedules")) {
        std::vector<std::pair<int, int>> one;
        for (const auto& pr : s) one.push_back({pr[0].get<int>(), pr[1].get<int>()});
        cert.schedules.push_back(std::move(one));
    }
    Tuple out;
    for (const auto& e : j.at("output")) out.push_back(d.index(e.get<std::string>()));
    cert.output = std::move(out);
    return cert;
}

}  // namespace nrd
