#include <random>

#include "doctest.h"
#include "nrd/engine.hpp"
#include "nrd/zoo.hpp"
#include "support/brute.hpp"

using namespace nrd;

namespace {

RelationPair plain_pair(const Relation& r) {
    return RelationPair(r, full_relation(r.domain, r.arity));
}

}  // namespace

TEST_CASE("single EQ clause has a witness in plain mode") {
    Instance inst({"x", "y"}, std::nullopt, {{0, 1}});
    WitnessResult r = find_witness(inst, plain_pair(build_eq()), 0, Mode::Plain);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.certificate->assignment[0] != r.certificate->assignment[1]);
    CHECK(verify_witness(inst, plain_pair(build_eq()), Mode::Plain, *r.certificate));
}

TEST_CASE("4-cycle over (C*_6 | C_6) is conditionally redundant everywhere") {
    CycleRelations c = build_cycles(3);
    RelationPair pair(c.c_star, c.c);
    Instance inst = gen_girth_instance(builtin_graphs().at("cycle4"));
    for (int ci = 0; ci < inst.n_clauses(); ++ci) {
        WitnessResult r = find_witness(inst, pair, ci, Mode::Conditional);
        CHECK(r.status == SearchStatus::None);
    }
}

TEST_CASE("Heawood graph over (C*_6 | C_6): every clause certified") {
    CycleRelations c = build_cycles(3);
    RelationPair pair(c.c_star, c.c);
    const Graph& heawood = builtin_graphs().at("heawood");
    Instance inst = gen_girth_instance(heawood);
    NrdReport rep = check_nonredundant(inst, pair, Mode::Conditional);
    CHECK(rep.nonredundant);
    CHECK(rep.value == 21);
    for (const auto& pc : rep.per_clause) {
        REQUIRE(pc.status == SearchStatus::Found);
        CHECK(verify_witness(inst, pair, Mode::Conditional, *pc.certificate));
    }
    // The distance coloring is itself a valid certificate for each edge.
    for (int e = 0; e < inst.n_clauses(); ++e) {
        Assignment f = girth_witness_coloring(heawood, e, 3);
        WitnessCertificate cert;
        cert.clause_index = e;
        cert.assignment = f;
        for (int p : inst.clauses[e]) cert.violated_value.push_back(f[p]);
        CHECK(verify_witness(inst, pair, Mode::Conditional, cert));
    }
}

TEST_CASE("trees are non-redundant for EQ, a closing edge is redundant") {
    Relation eq = build_eq();
    // Path a-b-c-d.
    Instance tree({"a", "b", "c", "d"}, std::nullopt, {{0, 1}, {1, 2}, {2, 3}});
    NrdReport rep = check_nonredundant(tree, plain_pair(eq), Mode::Plain);
    CHECK(rep.nonredundant);

    Instance cycle({"a", "b", "c", "d"}, std::nullopt, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    NrdReport rep2 = check_nonredundant(cycle, plain_pair(eq), Mode::Plain);
    CHECK(!rep2.nonredundant);
    for (const auto& pc : rep2.per_clause) CHECK(pc.status == SearchStatus::None);
}

TEST_CASE("OR-DP_{2,1} lower bound instance is conditionally non-redundant") {
    GeneratedInstance gen = gen_or_dp_lower(2, 1, 3);
    NrdReport rep = check_nonredundant(gen.instance, gen.pair, Mode::Conditional);
    CHECK(rep.nonredundant);
}

TEST_CASE("exact_nrd: EQ on 4 variables is a spanning tree") {
    ExactNrdResult r = exact_nrd(build_eq(), 4);
    CHECK(r.exact);
    CHECK(r.value == 3);
}

TEST_CASE("exact_nrd: OR_2 on 3 variables, frozen against the brute oracle") {
    RelationPair pair = plain_pair(build_or(2));
    int oracle = brute::exact_nrd(pair, 3, false);
    CHECK(oracle == 3);  // the binom(3,2) distinct unordered pairs
    ExactNrdResult r = exact_nrd(build_or(2), 3);
    CHECK(r.exact);
    CHECK(r.value == oracle);
}

TEST_CASE("exact_nrd: multipartite with fewer variables than arity is 0") {
    ExactNrdOptions opts;
    opts.multipartite = true;
    ExactNrdResult r = exact_nrd(plain_pair(build_one_in_three()), 2, Mode::Plain, opts);
    CHECK(r.exact);
    CHECK(r.value == 0);
}

TEST_CASE("exact_nrd >= multipartite-restricted exact_nrd") {
    RelationPair pair = plain_pair(build_or(2));
    ExactNrdOptions part;
    part.multipartite = true;
    ExactNrdResult free_r = exact_nrd(pair, 4, Mode::Plain);
    ExactNrdResult part_r = exact_nrd(pair, 4, Mode::Plain, part);
    CHECK(free_r.exact);
    CHECK(part_r.exact);
    CHECK(free_r.value >= part_r.value);
}

TEST_CASE("triangle inequality on a degenerate single-tuple chain") {
    Domain d = numeric_domain(2);
    Relation r(d, 2, {{0, 0}});
    Relation s(d, 2, {{0, 0}, {1, 1}});
    Relation t(d, 2, {{0, 0}, {1, 1}, {0, 1}});
    TriangleReport rep = triangle_check(r, s, t, 3);
    CHECK(rep.exact);
    CHECK(rep.holds);
}

TEST_CASE("engine agrees with the brute oracle on random small conditional pairs") {
    std::mt19937 rng(20240817);
    Domain d = numeric_domain(2);
    for (int round = 0; round < 30; ++round) {
        // Random S strictsubset T over D^2, random instance on 3 variables.
        std::vector<Tuple> all = full_relation(d, 2).tuples;
        std::vector<Tuple> s, t;
        for (const auto& tup : all) {
            int c = static_cast<int>(rng() % 3);
            if (c <= 1) t.push_back(tup);
            if (c == 0) s.push_back(tup);
        }
        RelationPair pair{Relation(d, 2, s), Relation(d, 2, t)};
        std::vector<Tuple> clauses;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (rng() % 3 == 0) clauses.push_back({a, b});
        if (clauses.empty()) continue;
        Instance inst({"a", "b", "c"}, std::nullopt, clauses);
        NrdReport rep = check_nonredundant(inst, pair, Mode::Conditional);
        CHECK(!rep.unknown);
        CHECK(rep.nonredundant == brute::nonredundant(inst, pair, true));
    }
}

TEST_CASE("downward closure on sampled subsets of a non-redundant instance") {
    CycleRelations c = build_cycles(3);
    RelationPair pair(c.c_star, c.c);
    Instance inst = gen_girth_instance(builtin_graphs().at("heawood"));
    std::mt19937 rng(7);
    for (int round = 0; round < 10; ++round) {
        std::vector<Tuple> sub;
        for (const auto& cl : inst.clauses)
            if (rng() % 2 == 0) sub.push_back(cl);
        if (sub.empty()) continue;
        Instance inst_sub(inst.variables, inst.partition, sub);
        NrdReport rep = check_nonredundant(inst_sub, pair, Mode::Conditional);
        CHECK(rep.nonredundant);
    }
}

TEST_CASE("multipartite_lift transfers witnesses clause by clause") {
    // The lift transfer is one-directional: a witness for clause y lifts to one for the
    // lifted clause (the lift can only gain witnesses, never lose them).
    Relation eq = build_eq();
    Instance path({"a", "b", "c", "d"}, std::nullopt, {{0, 1}, {1, 2}, {2, 3}});
    Instance lifted = multipartite_lift(path, 2);
    NrdReport before = check_nonredundant(path, plain_pair(eq), Mode::Plain);
    NrdReport after = check_nonredundant(lifted, plain_pair(eq), Mode::Plain);
    REQUIRE(before.per_clause.size() == after.per_clause.size());
    for (std::size_t i = 0; i < before.per_clause.size(); ++i)
        if (before.per_clause[i].status == SearchStatus::Found)
            CHECK(after.per_clause[i].status == SearchStatus::Found);
    CHECK(after.nonredundant);

    GeneratedInstance gen = gen_or_dp_lower(2, 1, 3);
    Instance lifted2 = multipartite_lift(gen.instance, gen.pair.s.arity);
    NrdReport b2 = check_nonredundant(gen.instance, gen.pair, Mode::Conditional);
    NrdReport a2 = check_nonredundant(lifted2, gen.pair, Mode::Conditional);
    CHECK(b2.nonredundant);
    CHECK(a2.nonredundant);
}

TEST_CASE("partition_by_violation groups cover the clause set") {
    CycleRelations c = build_cycles(3);
    // (C*_6 | full): witnesses may use any non-C*_6 value.
    RelationPair pair(c.c_star, full_relation(c.c.domain, 2));
    Instance inst = gen_girth_instance(builtin_graphs().at("heawood"));
    auto groups = partition_by_violation(inst, pair);
    std::size_t total = 0;
    for (const auto& g : groups) {
        CHECK(!pair.s.contains(g.value));
        total += g.clause_indices.size();
        CHECK(g.sub_instance.n_clauses() == static_cast<int>(g.clause_indices.size()));
    }
    CHECK(total == static_cast<std::size_t>(inst.n_clauses()));

    // |T\S| = 1 forces a single group.
    RelationPair one(c.c_star, c.c);
    auto groups1 = partition_by_violation(inst, one);
    CHECK(groups1.size() == 1);
    CHECK(groups1[0].value == Tuple{0, 0});

    // Empty instance: no groups.
    Instance empty(inst.variables, inst.partition, {});
    CHECK(partition_by_violation(empty, one).empty());
}

TEST_CASE("parallel check matches sequential") {
    CycleRelations c = build_cycles(3);
    RelationPair pair(c.c_star, c.c);
    Instance inst = gen_girth_instance(builtin_graphs().at("heawood"));
    NrdReport seq = check_nonredundant(inst, pair, Mode::Conditional, {}, 1);
    NrdReport par = check_nonredundant(inst, pair, Mode::Conditional, {}, 4);
    REQUIRE(seq.per_clause.size() == par.per_clause.size());
    for (std::size_t i = 0; i < seq.per_clause.size(); ++i) {
        CHECK(seq.per_clause[i].status == par.per_clause[i].status);
        CHECK(seq.per_clause[i].certificate->assignment == par.per_clause[i].certificate->assignment);
    }
}

TEST_CASE("node cap produces an explicit unknown") {
    GeneratedInstance gen = gen_or_dp_lower(3, 2, 4);
    SearchCaps caps;
    caps.node_limit = 1;
    WitnessResult r = find_witness(gen.instance, gen.pair, 0, Mode::Conditional, caps);
    CHECK(r.status == SearchStatus::Unknown);
}
