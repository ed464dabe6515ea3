#include <numeric>

#include "doctest.h"
#include "nrd/pattern.hpp"
#include "nrd/zoo.hpp"
#include "support/dpll.hpp"

using namespace nrd;

namespace {

Pattern from_rows(int arity, std::vector<std::pair<std::vector<int>, int>> rows) {
    Pattern p;
    p.arity = arity;
    for (auto& [args, out] : rows) p.identities.push_back({args, out});
    return p;
}

bool equivalent_up_to_position_permutation(const Pattern& a, const Pattern& b) {
    if (a.arity != b.arity) return false;
    std::vector<int> perm(a.arity);
    std::iota(perm.begin(), perm.end(), 0);
    Pattern cb = canonicalize(b);
    do {
        Pattern pa;
        pa.arity = a.arity;
        for (const auto& id : a.identities) {
            PatternIdentity ni;
            ni.args.resize(a.arity);
            for (int j = 0; j < a.arity; ++j) ni.args[perm[j]] = id.args[j];
            ni.out = id.out;
            pa.identities.push_back(ni);
        }
        if (canonicalize(pa) == cb) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

RelationPair plain(const Relation& r) { return RelationPair(r, r); }

}  // namespace

TEST_CASE("interpret the Mal'tsev pattern over the Boolean domain") {
    std::vector<PartialFn> fs = interpret(maltsev_pattern(), numeric_domain(2));
    REQUIRE(fs.size() == 1);
    const PartialFn& m = fs[0];
    CHECK(m.table.size() == 6);
    CHECK(m.eval({1, 1, 0}) == 0);
    CHECK(m.eval({0, 1, 1}) == 0);
    CHECK(m.eval({0, 0, 0}) == 0);
    CHECK(m.eval({0, 0, 1}) == 1);
    CHECK(m.eval({1, 0, 0}) == 1);
    CHECK(m.eval({1, 1, 1}) == 1);
    CHECK(!m.eval({0, 1, 0}));
    CHECK(!m.eval({1, 0, 1}));
}

TEST_CASE("interpret the majority pattern: total Boolean majority") {
    std::vector<PartialFn> fs = interpret(majority_pattern(), numeric_domain(2));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].table.size() == 8);
    for (const auto& [row, val] : fs[0].table)
        CHECK(val == (row[0] + row[1] + row[2] >= 2 ? 1 : 0));

    // Over a three-element domain the interpretation is properly partial.
    std::vector<PartialFn> f3 = interpret(majority_pattern(), numeric_domain(3));
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].table.size() < 27u);
}

TEST_CASE("empty pattern interprets as the nowhere-defined function") {
    Pattern empty;
    empty.arity = 2;
    std::vector<PartialFn> fs = interpret(empty, numeric_domain(2));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].table.empty());
}

TEST_CASE("unrestricted unary identity yields |D| constant functions") {
    Pattern p = from_rows(1, {{{0}, 1}});
    std::vector<PartialFn> fs = interpret(p, numeric_domain(3));
    REQUIRE(fs.size() == 3);
    for (int d = 0; d < 3; ++d)
        for (int e = 0; e < 3; ++e) CHECK(fs[d].eval({e}) == d);
}

TEST_CASE("minor by the identity map is the canonical pattern") {
    Pattern m = maltsev_pattern();
    CHECK(minor(m, {0, 1, 2}, 3) == m);
}

TEST_CASE("collapsing all Mal'tsev positions forces the unary identity pattern") {
    Pattern m = maltsev_pattern();
    Pattern collapsed = minor(m, {0, 0, 0}, 1);
    Pattern expect = canonicalize(from_rows(1, {{{0}, 0}}));
    CHECK(collapsed == expect);
}

TEST_CASE("subpattern of U_3 keeping one identity") {
    Pattern u3 = cube_pattern(3);
    Pattern sub = subpattern(u3, {0});
    CHECK(sub.arity == 7);
    CHECK(sub.identities.size() == 1);
}

TEST_CASE("U_3 identities are the three displayed rows") {
    Pattern u3 = cube_pattern(3);
    Pattern expect = from_rows(7, {{{0, 0, 0, 1, 1, 1, 1}, 0},
                                   {{0, 1, 1, 0, 0, 1, 1}, 0},
                                   {{1, 0, 1, 0, 1, 0, 1}, 0}});
    CHECK(u3 == expect);
}

TEST_CASE("U_2 is the Mal'tsev pattern up to renaming and argument order") {
    CHECK(equivalent_up_to_position_permutation(cube_pattern(2), maltsev_pattern()));
}

TEST_CASE("|I_D(U_k)| = 1 for every domain") {
    for (int k : {2, 3})
        for (int d : {1, 2, 3}) CHECK(interpret(cube_pattern(k), numeric_domain(d)).size() == 1);
}

TEST_CASE("the square of U_3 matches the displayed identity system") {
    Pattern sq = power(cube_pattern(3), 2);
    // Variables in first-occurrence order: a=(x,x), b=(x,y), c=(y,x), d=(y,y).
    Pattern expect = from_rows(7, {{{0, 1, 1, 2, 2, 3, 3}, 0},
                                   {{1, 0, 1, 2, 3, 2, 3}, 0},
                                   {{1, 2, 3, 0, 1, 2, 3}, 0}});
    CHECK(sq.identities == expect.identities);
}

TEST_CASE("P^1 is P for canonical P") {
    for (const Pattern& p : {maltsev_pattern(), majority_pattern(), canonicalize(cube_pattern(3))})
        CHECK(canonicalize(power(p, 1)) == p);
    CHECK_THROWS(power(maltsev_pattern(), 3));
}

TEST_CASE("pow(u_3,2) misses a row that U_3^2 demands") {
    PartialFn u3 = interpret(cube_pattern(3), numeric_domain(2))[0];
    // alpha((x,x))=(0,1), alpha((x,y))=(0,0), alpha((y,x))=(1,0), alpha((y,y))=(1,1)
    // instantiates the first identity of U_3^2; componentwise:
    Tuple first = {0, 0, 0, 1, 1, 1, 1};   // u_3 defined, value 0
    Tuple second = {1, 0, 0, 0, 0, 1, 1};  // not in dom(u_3)
    CHECK(u3.eval(first) == 0);
    CHECK(!u3.eval(second));

    // Over the coded product domain (0,0)=0,(0,1)=1,(1,0)=2,(1,1)=3 the square
    // pattern is defined at the corresponding row.
    PartialFn usq = interpret(power(cube_pattern(3), 2), numeric_domain(4))[0];
    Tuple row = {1, 0, 0, 2, 2, 3, 3};
    CHECK(usq.eval(row) == 1);
}

TEST_CASE("u_3^2 violates 3LIN* with the listed application") {
    Relation lin_star = build_3lin_star();
    Pattern usq = power(cube_pattern(3), 2);
    PreservesResult res = preserves(usq, plain(lin_star));
    REQUIRE(res.status == PreservesStatus::Violated);
    CHECK(verify_violation(*res.certificate, plain(lin_star)));

    // A known violating application re-verifies as a certificate with output (0,0,0).
    ViolationCertificate cert;
    cert.pattern = promote(usq, 3);
    cert.columns = {{0, 1, 2}, {1, 0, 2}, {1, 1, 1}, {1, 2, 0}, {1, 0, 2}, {2, 2, 2}, {2, 0, 1}};
    cert.output = {0, 0, 0};
    CHECK(verify_violation(cert, plain(lin_star)));
}

TEST_CASE("projection patterns preserve every pair") {
    Pattern proj = from_rows(2, {{{0, 1}, 0}});
    for (const Relation& r : {build_or(2), build_eq(), build_cut()}) {
        CHECK(preserves(proj, plain(r)).status == PreservesStatus::Preserved);
        CHECK(preserves(proj, RelationPair(r, full_relation(r.domain, r.arity))).status ==
              PreservesStatus::Preserved);
    }
}

TEST_CASE("u_k^{k-1} preserves BCK for k = 2, 3") {
    Relation bck = build_bck();
    for (int k : {2, 3}) {
        Pattern p = k == 2 ? cube_pattern(2) : power(cube_pattern(3), 2);
        PreservesResult res = preserves(p, plain(bck));
        CHECK(res.status == PreservesStatus::Preserved);
    }
}

TEST_CASE("cube_power_lower_bound reports the exponents") {
    CubePowerReport lin = cube_power_lower_bound(build_3lin_star(), 3, 2);
    REQUIRE(lin.status == PreservesStatus::Violated);
    CHECK(lin.exponent == doctest::Approx(1.5));

    CubePowerReport orr = cube_power_lower_bound(build_or(2), 2, 1);
    REQUIRE(orr.status == PreservesStatus::Violated);
    CHECK(orr.exponent == doctest::Approx(2.0));

    CubePowerReport eq = cube_power_lower_bound(build_eq(), 2, 1);
    CHECK(eq.status == PreservesStatus::Preserved);
}

TEST_CASE("minors of preserving patterns preserve (small exhaustive sweep)") {
    std::vector<Pattern> pats = {maltsev_pattern(), majority_pattern(), cube_pattern(2)};
    std::vector<RelationPair> pairs = {plain(build_eq()), plain(build_cut()),
                                       plain(build_one_in_three()), plain(build_bck())};
    for (const Pattern& p : pats)
        for (const RelationPair& pair : pairs) {
            if (preserves(p, pair).status != PreservesStatus::Preserved) continue;
            for (int m = 1; m <= 3; ++m) {
                std::vector<int> h(3, 0);
                while (true) {
                    Pattern sub = minor(p, h, m);
                    CHECK(preserves(sub, pair).status == PreservesStatus::Preserved);
                    int i = 2;
                    while (i >= 0 && h[i] == m - 1) h[i--] = 0;
                    if (i < 0) break;
                    ++h[i];
                }
            }
        }
}

TEST_CASE("interpretation is invariant under canonicalization") {
    Pattern scrambled = from_rows(3, {{{7, 2, 2}, 7}, {{2, 2, 7}, 7}});  // Mal'tsev, odd names
    Domain d = numeric_domain(3);
    std::vector<PartialFn> a = interpret(scrambled, d);
    std::vector<PartialFn> b = interpret(canonicalize(scrambled), d);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].table == b[i].table);
}

TEST_CASE("cnf export: satisfiable exactly when a violation exists") {
    // U_2 violates OR_2: the export has a model.
    Cnf sat_cnf = export_cnf_violation(cube_pattern(2), plain(build_or(2)));
    CHECK(brute::solve(sat_cnf).has_value());

    // EQ is preserved by the cube pattern: unsatisfiable.
    Cnf unsat_cnf = export_cnf_violation(cube_pattern(2), plain(build_eq()));
    CHECK(!brute::solve(unsat_cnf).has_value());

    // Empty relation: trivially unsatisfiable core.
    Relation empty(numeric_domain(2), 2, {});
    Cnf core = export_cnf_violation(cube_pattern(2), RelationPair(empty, empty));
    CHECK(!brute::solve(core).has_value());

    std::string dimacs = to_dimacs(sat_cnf);
    CHECK(dimacs.find("p cnf") != std::string::npos);
}

TEST_CASE("cnf export: the known 3LIN* certificate pins a model") {
    Relation lin_star = build_3lin_star();
    Pattern usq = power(cube_pattern(3), 2);
    Cnf cnf = export_cnf_violation(usq, plain(lin_star));

    // Seed the solver with the known violating application: columns of the
    // certificate and the all-zero output.
    int n = usq.arity;
    int m = static_cast<int>(lin_star.tuples.size());
    int k = static_cast<int>(usq.identities.size());
    int dsize = 3, nvars_pat = usq.n_variables();
    int s_base = 1;
    int c_base = s_base + n * m;
    int a_base = c_base + 3 * k;
    int o_base = a_base + 3 * k * nvars_pat * dsize;
    std::vector<Tuple> columns = {{0, 1, 2}, {1, 0, 2}, {1, 1, 1}, {1, 2, 0},
                                  {1, 0, 2}, {2, 2, 2}, {2, 0, 1}};
    auto tuple_index = [&](const Tuple& t) {
        for (int i = 0; i < m; ++i)
            if (lin_star.tuples[i] == t) return i;
        REQUIRE(false);
        return -1;
    };
    Cnf seeded = cnf;
    for (int j = 0; j < n; ++j) seeded.clauses.push_back({s_base + j * m + tuple_index(columns[j])});
    for (int i = 0; i < 3; ++i) seeded.clauses.push_back({o_base + i * dsize + 0});
    CHECK(brute::solve(seeded).has_value());
}

TEST_CASE("pattern_witness_redundancy finds the 3LIN* two-clause redundancy") {
    Relation lin = build_3lin();
    Relation lin_star = build_3lin_star();
    RelationPair pair(lin_star, lin);
    Pattern proj = from_rows(1, {{{0}, 0}});
    Pattern unrestricted = from_rows(1, {{{0}, 1}});
    MultisortedPattern p({proj, proj, unrestricted});

    Instance inst({"x", "y", "z", "v"}, std::vector<std::vector<int>>{{0}, {1}, {2, 3}},
                  {{0, 1, 2}, {0, 1, 3}});
    auto d = pattern_witness_redundancy(inst, p, pair);
    REQUIRE(d.has_value());
    CHECK(d->redundant_clause == 1);
    CHECK(d->argument_clauses == std::vector<int>{0});

    Instance single({"x", "y", "z"}, std::vector<std::vector<int>>{{0}, {1}, {2}}, {{0, 1, 2}});
    CHECK(!pattern_witness_redundancy(single, p, pair).has_value());
}

TEST_CASE("strict relaxation carries instances") {
    CycleRelations c = build_cycles(3);
    RelationPair tight(c.c_star, c.c);
    RelationPair loose(c.c_star, full_relation(c.c.domain, 2));
    Instance inst = gen_girth_instance(builtin_graphs().at("cycle6"));
    TransformResult res = strict_relax(inst, tight, loose);
    CHECK(res.instance.n_clauses() == inst.n_clauses());
    CHECK_THROWS(strict_relax(inst, loose, tight));
}

TEST_CASE("equality elimination with no equality-violating witnesses drops nothing") {
    Domain d = numeric_domain(2);
    Relation s1(d, 2, {{1, 1}});
    Relation t1 = full_relation(d, 2);
    Relation s2 = build_or(2);
    RelationPair from(s1, t1);
    RelationPair to(s2, t1);
    Instance inst({"a", "b"}, std::nullopt, {{0, 1}});
    TransformResult res = equality_elim(inst, from, to, 0, 1);
    CHECK(res.dropped_clauses == 0);
    CHECK(res.instance.n_clauses() == 1);
}

TEST_CASE("CYC* projects to the staircase cycle with equal clause count") {
    CycPair cy = build_cyc(3);
    RelationPair cyc_pair(cy.cyc_star, cy.cyc);
    Domain d = cy.cyc.domain;
    CycleRelations cr = build_cycles(3);

    // Intermediate pair: S = first two coordinates in C~*, T~ = first two in
    // the tilde of (C~*, C~).
    Relation ct_tilde = complement_tilde(RelationPair(cr.c_tilde_star, cr.c_tilde));
    std::vector<Tuple> s_phi, t_phi;
    for (const auto& t : full_relation(d, 3).tuples) {
        bool in_s = cr.c_tilde_star.contains({t[0], t[1]});
        bool in_tilde = ct_tilde.contains({t[0], t[1]});
        if (in_s) s_phi.push_back(t);
        if (in_s || !in_tilde) t_phi.push_back(t);  // T = D^3 \ (T~ \ S)
    }
    RelationPair mid(Relation(d, 3, s_phi), Relation(d, 3, t_phi));

    // The identity-style instance of CYC*_3: one clause per tuple.
    std::vector<std::string> vars;
    std::vector<std::vector<int>> blocks(3);
    for (int i = 0; i < 3; ++i)
        for (int x = 0; x < 3; ++x) {
            blocks[i].push_back(static_cast<int>(vars.size()));
            vars.push_back(std::string(1, char('a' + i)) + std::to_string(x));
        }
    std::vector<Tuple> clauses;
    for (const auto& t : cy.cyc_star.tuples) clauses.push_back({t[0], 3 + t[1], 6 + t[2]});
    Instance inst(vars, blocks, clauses);
    REQUIRE(check_nonredundant(inst, cyc_pair, Mode::Conditional).nonredundant);

    TransformResult relaxed = strict_relax(inst, cyc_pair, mid);
    TransformResult split = conjunction_split(relaxed.instance, mid,
                                              RelationPair(cr.c_tilde_star, cr.c_tilde),
                                              {0, 1}, {0, 1});
    CHECK(split.instance.n_clauses() == inst.n_clauses());  // |E| = |F|
    CHECK(check_nonredundant(split.instance, RelationPair(cr.c_tilde_star, cr.c_tilde),
                             Mode::Conditional)
              .nonredundant);
}

TEST_CASE("functional guard lift squares the variable count") {
    Domain d2 = numeric_domain(2);
    Relation or2 = build_or(2);
    RelationPair from(or2, full_relation(d2, 2));

    Domain d4 = numeric_domain(4);
    Relation s2(d4, 1, {{1}, {2}, {3}});
    RelationPair to(s2, full_relation(d4, 1));

    Guard g;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g.table[{a, b}] = 2 * a + b;

    Instance inst({"a", "b", "c"}, std::nullopt, {{0, 1}, {1, 2}});
    TransformResult res = functional_guard_lift(inst, from, to, {{0, 1}}, {g}, 2);
    CHECK(res.instance.n_variables() == 9);  // r2 * n^c = 1 * 3^2
    CHECK(res.instance.n_clauses() == 2);
}

TEST_CASE("pattern json round trip") {
    Pattern u3 = cube_pattern(3);
    Json j = to_json(u3);
    CHECK(pattern_from_json(j) == u3);

    MultisortedPattern mp({maltsev_pattern(), maltsev_pattern()});
    Json jm = to_json(mp);
    MultisortedPattern back = multisorted_from_json(jm);
    CHECK(back.sorts() == 2);
    CHECK(back.components[0] == mp.components[0]);
}

TEST_CASE("preservation by u_r^{r-1} governs every tested cube power") {
    // Positive direction: preserved by u_r^{r-1} => preserved by u_k^c for
    // all k <= 4, c < k.  Negative: violated => u_k^{k-1} violated for k >= r.
    auto ukc = [](int k, int c) { return c == 1 ? cube_pattern(k) : power(cube_pattern(k), c); };
    std::vector<Relation> battery = {build_eq(), build_cut(), build_one_in_three(), build_bck()};
    for (const Relation& r : battery) {
        int rr = std::max(2, r.arity);
        PreservesResult base = preserves(ukc(rr, rr - 1), plain(r));
        REQUIRE(base.status == PreservesStatus::Preserved);
        for (int k = 2; k <= 4; ++k)
            for (int c = 1; c < k; ++c)
                CHECK(preserves(ukc(k, c), plain(r)).status == PreservesStatus::Preserved);
    }
    for (const Relation& r : {build_or(2), build_3lin_star()}) {
        int rr = std::max(2, r.arity);
        REQUIRE(preserves(ukc(rr, rr - 1), plain(r)).status == PreservesStatus::Violated);
        for (int k = rr; k <= 4; ++k)
            CHECK(preserves(ukc(k, k - 1), plain(r)).status == PreservesStatus::Violated);
    }
}

TEST_CASE("patterns see tensors exactly as the pair set") {
    CycleRelations c6 = build_cycles(3);
    RelationPair a(build_eq(), full_relation(numeric_domain(2), 2));
    RelationPair b(c6.c_star, c6.c);
    RelationPair ab = tensor(a, b);

    std::vector<MultisortedPattern> patterns;
    {
        Pattern p1;
        p1.arity = 3;
        p1.identities = {{{0, 1, 1}, 0}};
        Pattern p2;
        p2.arity = 3;
        p2.identities = {{{0, 1, 0}, 1}};
        patterns.push_back(MultisortedPattern({p1, p2}));  // the C_4 pattern
        patterns.push_back(promote(cube_pattern(2), 2));
        Pattern proj;
        proj.arity = 1;
        proj.identities = {{{0}, 0}};
        patterns.push_back(MultisortedPattern({proj, proj}));
    }
    for (const auto& p : patterns) {
        bool on_a = preserves(p, a).status == PreservesStatus::Preserved;
        bool on_b = preserves(p, b).status == PreservesStatus::Preserved;
        bool on_ab = preserves(p, ab).status == PreservesStatus::Preserved;
        CHECK(on_ab == (on_a && on_b));
    }
}
