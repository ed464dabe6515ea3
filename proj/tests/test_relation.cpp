#include <set>

#include "doctest.h"
#include "nrd/json_io.hpp"
#include "nrd/relation.hpp"
#include "nrd/zoo.hpp"

using namespace nrd;

TEST_CASE("domain rejects duplicate names and maps indices bijectively") {
    CHECK_THROWS(Domain({"a", "a"}));
    Domain d({"x", "y", "z"});
    CHECK(d.size() == 3);
    CHECK(d.index("y") == 1);
    CHECK(d.name(2) == "z");
    CHECK_THROWS(d.index("w"));
}

TEST_CASE("relation constructor validates and deduplicates") {
    Domain d = numeric_domain(2);
    CHECK_THROWS(Relation(d, 2, {{0, 1, 0}}));
    CHECK_THROWS(Relation(d, 2, {{0, 2}}));
    Relation r(d, 2, {{1, 0}, {0, 1}, {1, 0}});
    CHECK(r.size() == 2);
    CHECK(r.contains({0, 1}));
}

TEST_CASE("complement_tilde: S=T gives the full relation") {
    Relation eq = build_eq();
    RelationPair pair(eq, eq);
    Relation tilde = complement_tilde(pair);
    CHECK(tilde.size() == 4);
}

TEST_CASE("complement_tilde: C*_6 | C_6 drops exactly (0,0)") {
    CycleRelations c = build_cycles(3);
    RelationPair pair(c.c_star, c.c);
    Relation tilde = complement_tilde(pair);
    // All 9 tuples over {0,1,2}^2 except (0,0).
    CHECK(tilde.size() == 8);
    CHECK(!tilde.contains({0, 0}));
    for (const auto& t : c.c_star.tuples) CHECK(tilde.contains(t));
}

TEST_CASE("complement_tilde: empty S against a singleton T") {
    Domain d = numeric_domain(2);
    Relation s(d, 2, {});
    Relation t(d, 2, {{1, 1}});
    Relation tilde = complement_tilde(RelationPair(s, t));
    CHECK(tilde.size() == 3);
    CHECK(!tilde.contains({1, 1}));
}

TEST_CASE("complement_tilde recovers T on the middle layer for all tiny pairs") {
    for (int dsize = 1; dsize <= 2; ++dsize)
        for (int r = 1; r <= 2; ++r) {
            Relation full = full_relation(numeric_domain(dsize), r);
            int cells = static_cast<int>(full.size());
            // Assign every cell to: in S, in T only, outside T.
            std::vector<int> code(cells, 0);
            while (true) {
                std::vector<Tuple> s, t;
                for (int i = 0; i < cells; ++i) {
                    if (code[i] <= 1) t.push_back(full.tuples[i]);
                    if (code[i] == 0) s.push_back(full.tuples[i]);
                }
                RelationPair pair(Relation(full.domain, r, s), Relation(full.domain, r, t));
                Relation tilde = complement_tilde(pair);
                // D^r \ (tilde \ S) == T
                std::set<Tuple> recovered;
                for (const auto& tup : full.tuples)
                    if (!(tilde.contains(tup) && !pair.s.contains(tup))) recovered.insert(tup);
                std::set<Tuple> expect(pair.t.tuples.begin(), pair.t.tuples.end());
                CHECK(recovered == expect);
                int i = cells - 1;
                while (i >= 0 && code[i] == 2) code[i--] = 0;
                if (i < 0) break;
                ++code[i];
            }
        }
}

TEST_CASE("multipartite_lift shape and partition invariant") {
    Instance inst({"a", "b"}, std::nullopt, {{0, 1}});
    Instance lifted = multipartite_lift(inst, 2);
    CHECK(lifted.n_variables() == 4);
    CHECK(lifted.n_clauses() == 1);
    REQUIRE(lifted.partition.has_value());
    CHECK(lifted.partition->size() == 2);
    // Clause (a,b) becomes ((a,1),(b,2)).
    CHECK(lifted.variables[lifted.clauses[0][0]] == "a@1");
    CHECK(lifted.variables[lifted.clauses[0][1]] == "b@2");

    Instance bigger({"a", "b", "c"}, std::nullopt, {{0, 1}, {1, 2}, {0, 2}});
    Instance lifted3 = multipartite_lift(bigger, 2);
    CHECK(lifted3.n_variables() == 6);
    CHECK(lifted3.n_clauses() == 3);
}

TEST_CASE("tensor multiplies cardinalities and joins names") {
    Relation a = build_or(2);              // 3 tuples
    Relation c6(build_cycles(3).c_star);   // 5 tuples, arity 2
    Relation prod = tensor(a, c6);
    CHECK(prod.size() == 15);
    CHECK(prod.domain.size() == 6);
    CHECK(prod.domain.name(0) == "0|0");

    // pair (x) (full, full over a singleton domain) is isomorphic to the pair
    Relation single_full = full_relation(Domain({"*"}), 2);
    RelationPair orpair(build_or(2), full_relation(numeric_domain(2), 2));
    RelationPair t = tensor(orpair, RelationPair(single_full, single_full));
    CHECK(t.s.size() == orpair.s.size());
    CHECK(t.t.size() == orpair.t.size());
    for (std::size_t i = 0; i < t.s.tuples.size(); ++i) CHECK(t.s.tuples[i] == orpair.s.tuples[i]);

    CHECK_THROWS(tensor(build_or(2), build_or(3)));
}

TEST_CASE("instance validation") {
    CHECK_THROWS(Instance({"a", "a"}, std::nullopt, {}));
    CHECK_THROWS(Instance({"a", "b"}, std::nullopt, {{0, 1}, {0, 1}}));  // duplicate clause
    CHECK_THROWS(Instance({"a", "b"}, std::nullopt, {{0, 2}}));          // unknown variable
    // Partition: position must draw from its block.
    CHECK_THROWS(Instance({"a", "b"}, std::vector<std::vector<int>>{{0}, {1}}, {{1, 0}}));
}

TEST_CASE("json round trips") {
    RelationPair ordp = build_or_dp(2, 1);
    Json j = to_json(ordp);
    RelationPair back = pair_from_json(j);
    CHECK(back.s == ordp.s);
    CHECK(back.t == ordp.t);

    GeneratedInstance gen = gen_shoelace_lower(2);
    Json ji = to_json(gen.instance);
    Instance iback = instance_from_json(ji);
    CHECK(iback.variables == gen.instance.variables);
    CHECK(iback.clauses == gen.instance.clauses);
    CHECK(iback.partition == gen.instance.partition);
    CHECK(to_json(iback) == ji);
}

TEST_CASE("malformed files produce diagnostics") {
    Json j;
    j["domain"] = {"0", "1"};
    j["arity"] = 2;
    j["tuples"] = Json::array({Json::array({"0", "1", "0"})});
    CHECK_THROWS_WITH_AS(relation_from_json(j), doctest::Contains("tuples[0]"), std::runtime_error);
}

TEST_CASE("shipped c6_star pair file") {
    RelationPair pair = load_pair(std::string(NRD_DATA_DIR) + "/c6_star.json");
    CHECK(pair.s.size() == 5);  // C*_6 = C_6 minus (0,0)
    CHECK(pair.t.size() == 6);
    CycleRelations c = build_cycles(3);
    CHECK(pair.s == c.c_star);
    CHECK(pair.t == c.c);
}
