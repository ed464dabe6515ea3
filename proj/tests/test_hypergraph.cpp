#include "doctest.h"
#include "nrd/hypergraph.hpp"
#include "nrd/zoo.hpp"

using namespace nrd;

namespace {

Pattern single_identity(int arity, std::vector<int> args, int out) {
    Pattern p;
    p.arity = arity;
    p.identities = {{std::move(args), out}};
    return p;
}

// The complete 3-partite 3-uniform hypergraph with two vertices per part.
PartiteHypergraph k222() {
    std::vector<std::vector<std::string>> parts = {{"a0", "a1"}, {"b0", "b1"}, {"c0", "c1"}};
    std::vector<Tuple> edges;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) edges.push_back({a, b, c});
    return PartiteHypergraph(parts, edges);
}

}  // namespace

TEST_CASE("unit decomposition counts") {
    Pattern two = maltsev_pattern();  // two identities
    MultisortedPattern p({two, two, two});
    CHECK(unit_decompose(p).size() == 8);

    MultisortedPattern single({single_identity(1, {0}, 0)});
    CHECK(unit_decompose(single).size() == 1);

    Pattern empty;
    empty.arity = 1;
    CHECK(unit_decompose(MultisortedPattern({empty})).empty());

    MultisortedPattern u3sorts({cube_pattern(3), cube_pattern(3), cube_pattern(3)});
    CHECK(unit_decompose(u3sorts).size() == 27);
}

TEST_CASE("partial projections are rejected") {
    // y_i = x_{i,1} for every sort: a partial projection.
    MultisortedPattern proj({single_identity(2, {0, 1}, 0), single_identity(2, {0, 1}, 0)});
    UnitPattern u(proj);
    CHECK(u.is_partial_projection());
    CHECK_THROWS(hypergraph_of(u));
}

TEST_CASE("the k-NU hypergraph") {
    // 3-NU placed sort-wise: P_i = i-th near-unanimity identity.
    std::vector<Pattern> comps = {single_identity(3, {1, 0, 0}, 0), single_identity(3, {0, 1, 0}, 0),
                                  single_identity(3, {0, 0, 1}, 0)};
    UnitPattern u{MultisortedPattern(comps)};
    PartiteHypergraph h = hypergraph_of(u);
    CHECK(h.edges.size() == 4);
    for (const auto& p : h.parts) CHECK(p.size() == 2);
    // Expected: {(y,x,x),(x,y,x),(x,x,y),(x,x,x)} up to naming.
    std::vector<std::vector<std::string>> parts = {{"x", "y"}, {"x", "y"}, {"x", "y"}};
    PartiteHypergraph expect(parts, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    CHECK(hyper_isomorphic(h, expect));
}

TEST_CASE("cube-per-sort at r=3 gives K_{2,2,2}") {
    MultisortedPattern p({cube_pattern(3), cube_pattern(3), cube_pattern(3)});
    // One unit choice: identity i per sort i.
    std::vector<Pattern> comps;
    for (int i = 0; i < 3; ++i)
        comps.push_back(single_identity(7, cube_pattern(3).identities[i].args,
                                        cube_pattern(3).identities[i].out));
    UnitPattern u{MultisortedPattern(comps)};
    PartiteHypergraph h = hypergraph_of(u);
    CHECK(h.edges.size() == 8);
    CHECK(hyper_isomorphic(h, k222()));
}

TEST_CASE("even-cycle hypergraphs from the C*_6 pattern pair") {
    // t=2: P1 = ((x,y,y), x), P2 = ((x,y,x), y)  [path colorings] -> C_4.
    std::vector<Pattern> comps = {single_identity(3, {0, 1, 1}, 0), single_identity(3, {0, 1, 0}, 1)};
    UnitPattern u{MultisortedPattern(comps)};
    PartiteHypergraph h = hypergraph_of(u);
    std::vector<std::vector<std::string>> parts = {{"l0", "l1"}, {"r0", "r1"}};
    PartiteHypergraph c4(parts, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(hyper_isomorphic(h, c4));

    // The pattern preserves (C*_6, C_6~).
    CycleRelations c = build_cycles(3);
    RelationPair pair(c.c_star, c.c);
    RelationPair cond(pair.s, complement_tilde(pair));
    CHECK(preserves(u.pattern, cond).status == PreservesStatus::Preserved);
}

TEST_CASE("hq closure of the 3-NU pattern is a single hypergraph") {
    std::vector<Pattern> comps = {single_identity(3, {1, 0, 0}, 0), single_identity(3, {0, 1, 0}, 0),
                                  single_identity(3, {0, 0, 1}, 0)};
    std::vector<PartiteHypergraph> closure = hq_closure({MultisortedPattern(comps)});
    REQUIRE(closure.size() == 1);
    CHECK(closure[0].edges.size() == 4);

    // A set of partial projections closes to nothing.
    MultisortedPattern proj({single_identity(2, {0, 1}, 0), single_identity(2, {0, 1}, 0)});
    CHECK(hq_closure({proj}).empty());
}

TEST_CASE("hfree finds the identity embedding of H(P) into itself") {
    std::vector<Pattern> comps = {single_identity(3, {1, 0, 0}, 0), single_identity(3, {0, 1, 0}, 0),
                                  single_identity(3, {0, 0, 1}, 0)};
    PartiteHypergraph h = hypergraph_of(UnitPattern{MultisortedPattern(comps)});
    EmbedResult res = hfree_check(h, h);
    CHECK(res.status == EmbedStatus::Found);
}

TEST_CASE("girth-6 instances are C_4-free") {
    Instance heawood = gen_girth_instance(builtin_graphs().at("heawood"));
    PartiteHypergraph host = to_hypergraph(heawood);
    std::vector<std::vector<std::string>> parts = {{"l0", "l1"}, {"r0", "r1"}};
    PartiteHypergraph c4(parts, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(hfree_check(host, c4).status == EmbedStatus::None);

    Instance square = gen_girth_instance(builtin_graphs().at("cycle4"));
    CHECK(hfree_check(to_hypergraph(square), c4).status == EmbedStatus::Found);
}

TEST_CASE("minimal redundant instances read off preserved unit patterns") {
    // The 3LIN* two-clause instance.
    Relation lin = build_3lin();
    Relation lin_star = build_3lin_star();
    RelationPair pair(lin_star, lin);
    Instance inst({"x", "y", "z", "v"}, std::vector<std::vector<int>>{{0}, {1}, {2, 3}},
                  {{0, 1, 2}, {0, 1, 3}});
    UnitPattern u = minimal_redundant_to_pattern(inst, pair);
    // Components 1 and 2 are unary projections, component 3 is unrestricted.
    CHECK(u.pattern.arity() == 1);
    CHECK(u.pattern.components[0].identities[0].out == u.pattern.components[0].identities[0].args[0]);
    CHECK(u.pattern.components[1].identities[0].out == u.pattern.components[1].identities[0].args[0]);
    CHECK(u.pattern.components[2].identities[0].out != u.pattern.components[2].identities[0].args[0]);

    // The 4-cycle over (C*_6 | C_6) reads off a pattern whose hypergraph is
    // the 4-cycle itself.
    CycleRelations c = build_cycles(3);
    RelationPair cpair(c.c_star, c.c);
    Instance square = gen_girth_instance(builtin_graphs().at("cycle4"));
    UnitPattern cu = minimal_redundant_to_pattern(square, cpair);
    PartiteHypergraph h = hypergraph_of(cu);
    CHECK(hyper_isomorphic(h, to_hypergraph(square)));

    // Non-redundant input is rejected.
    Instance tree = gen_girth_instance(builtin_graphs().at("star5"));
    CHECK_THROWS(minimal_redundant_to_pattern(tree, cpair));
}

TEST_CASE("canonical encoding dedup is an equivalence at small sizes") {
    std::vector<std::vector<std::string>> parts = {{"a", "b"}, {"c", "d"}};
    PartiteHypergraph h1(parts, {{0, 0}, {0, 1}, {1, 0}});
    PartiteHypergraph h2(parts, {{1, 1}, {1, 0}, {0, 1}});  // relabeled path
    PartiteHypergraph h3(parts, {{0, 0}, {1, 1}});
    CHECK(hyper_isomorphic(h1, h1));
    CHECK(hyper_isomorphic(h1, h2));
    CHECK(hyper_isomorphic(h2, h1));
    CHECK(!hyper_isomorphic(h1, h3));
}

TEST_CASE("desk-scale Turan sanity: NRD* bounded by the C_4-free maximum") {
    // Q = {C_4 pattern}; the pair (C*_6 | C_6) is preserved by it, so the
    // largest conditionally non-redundant multipartite instance cannot beat
    // the largest C_4-free bipartite hypergraph.
    std::vector<std::vector<std::string>> parts = {{"l0", "l1"}, {"r0", "r1"}};
    PartiteHypergraph c4(parts, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    int turan = ex_r_search(5, 2, {c4});

    CycleRelations c = build_cycles(3);
    RelationPair pair(c.c_star, c.c);
    ExactNrdOptions opts;
    opts.multipartite = true;
    ExactNrdResult nrd = exact_nrd(pair, 5, Mode::Conditional, opts);
    CHECK(nrd.exact);
    CHECK(nrd.value <= turan);
    CHECK(turan >= 4);

    CHECK_THROWS(ex_r_search(8, 2, {c4}));
}

TEST_CASE("hypergraph json round trip") {
    PartiteHypergraph h = k222();
    Json j = to_json(h);
    PartiteHypergraph back = hypergraph_from_json(j);
    CHECK(hyper_isomorphic(h, back));
    CHECK(back.parts == h.parts);
}

TEST_CASE("hq closure picks up identified-variable minors") {
    // C_4 pattern: no surjective merge keeps both components, closure is H(P).
    Pattern p1;
    p1.arity = 3;
    p1.identities = {{{0, 1, 1}, 0}};
    Pattern p2;
    p2.arity = 3;
    p2.identities = {{{0, 1, 0}, 1}};
    std::vector<PartiteHypergraph> c4_closure = hq_closure({MultisortedPattern({p1, p2})});
    REQUIRE(c4_closure.size() == 1);
    std::vector<std::vector<std::string>> parts = {{"l0", "l1"}, {"r0", "r1"}};
    PartiteHypergraph c4(parts, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(hyper_isomorphic(c4_closure[0], c4));

    // The cube pattern placed on both sorts closes to the same C_4: the only
    // non-trivial unit choices pair the two distinct identities, and every
    // proper merge collapses to a partial projection.
    std::vector<PartiteHypergraph> u2_closure =
        hq_closure({MultisortedPattern({cube_pattern(2), cube_pattern(2)})});
    REQUIRE(u2_closure.size() == 1);
    CHECK(hyper_isomorphic(u2_closure[0], c4));
}

TEST_CASE("pattern application and H(P) containment agree on small instances") {
    Relation lin = build_3lin();
    Relation lin_star = build_3lin_star();
    RelationPair pair(lin_star, lin);
    Pattern proj;
    proj.arity = 1;
    proj.identities = {{{0}, 0}};
    Pattern unrestricted;
    unrestricted.arity = 1;
    unrestricted.identities = {{{0}, 1}};
    MultisortedPattern p({proj, proj, unrestricted});
    PartiteHypergraph hp = hypergraph_of(UnitPattern(p));

    Instance with({"x", "y", "z", "v"}, std::vector<std::vector<int>>{{0}, {1}, {2, 3}},
                  {{0, 1, 2}, {0, 1, 3}});
    Instance without({"x", "y1", "y2", "z1", "z2"}, std::vector<std::vector<int>>{{0}, {1, 2}, {3, 4}},
                     {{0, 1, 3}, {0, 2, 4}});
    CHECK(hfree_check(to_hypergraph(with), hp).status == EmbedStatus::Found);
    CHECK(pattern_witness_redundancy(with, p, pair).has_value());
    CHECK(hfree_check(to_hypergraph(without), hp).status == EmbedStatus::None);
    CHECK(!pattern_witness_redundancy(without, p, pair).has_value());
}
