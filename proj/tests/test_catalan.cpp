#include <random>

#include "doctest.h"
#include "nrd/catalan.hpp"
#include "nrd/zoo.hpp"

using namespace nrd;

TEST_CASE("group and table constructors validate") {
    CHECK_THROWS(MaltsevTerm(numeric_domain(2), {0, 0, 0, 0, 0, 0, 0, 0}));  // not Mal'tsev
    FiniteGroup z3 = cyclic_group(3);
    CHECK(z3.identity == 0);
    CHECK(z3.inverse[1] == 2);
    FiniteGroup s3 = symmetric_group_3();
    CHECK(s3.elements.size() == 6);
    CHECK_THROWS(named_group_maltsev("Q8"));
}

TEST_CASE("f_1 is the identity and f_3 is the term itself") {
    MaltsevTerm phi = named_group_maltsev("Z3");
    CatalanFamily fam(phi);
    fam.extend_to(3);
    for (int x = 0; x < 3; ++x) CHECK(fam.eval(1, {x}) == x);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z) CHECK(fam.eval(3, {x, y, z}) == phi.eval(x, y, z));
}

TEST_CASE("f_5(x,x,y,y,z) = z over the Z/3 group term") {
    CatalanFamily fam(named_group_maltsev("Z3"));
    fam.extend_to(5);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z) CHECK(fam.eval(5, {x, x, y, y, z}) == z);
}

TEST_CASE("f_5(x1,x1,x3,x4,x5) = phi(x3,x4,x5) for arbitrary Mal'tsev terms") {
    std::mt19937 rng(11);
    for (int round = 0; round < 5; ++round) {
        MaltsevTerm phi = random_maltsev(rng);
        CatalanFamily fam(phi);
        fam.extend_to(5);
        for (int a = 0; a < 3; ++a)
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y)
                    for (int z = 0; z < 3; ++z)
                        CHECK(fam.eval(5, {a, a, x, y, z}) == phi.eval(x, y, z));
    }
}

TEST_CASE("verify_catalan passes for group terms and random Mal'tsev tables") {
    for (const char* name : {"Z2", "Z3", "Z4"}) {
        CatalanFamily fam(named_group_maltsev(name));
        CatalanReport rep = verify_catalan(fam, 7);
        CHECK(rep.ok);
        CHECK(rep.checked > 0);
    }

    CatalanFamily s3(named_group_maltsev("S3"));
    CHECK(verify_catalan(s3, 5).ok);

    std::mt19937 rng(99);
    for (int round = 0; round < 5; ++round) {
        CatalanFamily fam(random_maltsev(rng));
        CHECK(verify_catalan(fam, 7).ok);
    }
}

TEST_CASE("catalan_eval collapses to the alternating product over groups") {
    for (int order : {2, 3, 4}) {
        FiniteGroup g = cyclic_group(order);
        CatalanFamily fam(group_maltsev(g));
        fam.extend_to(5);
        int n = g.elements.size();
        Tuple args(5, 0);
        while (true) {
            CHECK(fam.eval(5, args) == g.alternating_product(args));
            int i = 4;
            while (i >= 0 && args[i] == n - 1) args[i--] = 0;
            if (i < 0) break;
            ++args[i];
        }
    }
}

TEST_CASE("coxeter reduction") {
    // xyz . zxy . yxyxy = y  with x=0, y=1, z=2
    std::vector<int> word = {0, 1, 2, 2, 0, 1, 1, 0, 1, 0, 1};
    CHECK(coxeter_reduce(word) == std::vector<int>{1});
    CHECK(coxeter_reduce({0, 0}).empty());

    std::mt19937 rng(5);
    for (int round = 0; round < 100; ++round) {
        std::vector<int> w;
        int len = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % 3));
        std::vector<int> winv(w.rbegin(), w.rend());
        std::vector<int> both = w;
        both.insert(both.end(), winv.begin(), winv.end());
        CHECK(coxeter_reduce(both).empty());
    }
}

TEST_CASE("coxeter reduction is confluent under random schedules") {
    std::mt19937 rng(77);
    for (int round = 0; round < 1000; ++round) {
        std::vector<int> w;
        int len = 1 + static_cast<int>(rng() % 14);
        for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % 3));
        std::vector<int> canonical = coxeter_reduce(w);
        std::vector<int> cur = w;
        while (true) {
            std::vector<int> sites;
            for (std::size_t i = 0; i + 1 < cur.size(); ++i)
                if (cur[i] == cur[i + 1]) sites.push_back(static_cast<int>(i));
            if (sites.empty()) break;
            int pick = sites[rng() % sites.size()];
            cur.erase(cur.begin() + pick, cur.begin() + pick + 2);
        }
        CHECK(cur == canonical);
    }
}

TEST_CASE("cat_pattern_check accepts the flattened arity-5 identities") {
    // psi_5(x,x,y,y,z) = z and friends; x=0, y=1, z=2.
    CHECK(cat_pattern_check({{0, 0, 1, 1, 2}}, {2}));
    CHECK(cat_pattern_check({{0, 0, 2, 1, 1}}, {2}));
    CHECK(cat_pattern_check({{2, 0, 0, 1, 1}}, {2}));
    CHECK(cat_pattern_check({{0, 1, 1, 0, 2}}, {2}));
    CHECK(cat_pattern_check({{2, 0, 1, 1, 0}}, {2}));
    // xyzxy does not reduce.
    CHECK(!cat_pattern_check({{0, 1, 2, 0, 1}}, {2}));
    // Constant rows pass with their own letter.
    CHECK(cat_pattern_check({{1, 1, 1, 1, 1}}, {1}));
}

TEST_CASE("exclusion search finds a BCK certificate at m = 5") {
    Relation bck = build_bck();
    ExclusionSearchResult res = exclusion_search(bck, 5, 1000000, "BCK");
    REQUIRE(res.status == ExclusionStatus::Found);
    CHECK(res.certificate->m == 5);
    CHECK(res.certificate->output == Tuple{0, 0, 0});
    CHECK(verify_exclusion(*res.certificate));

    // The certificate is a Cat_m pattern violation.
    std::vector<std::vector<int>> rows(3);
    for (const auto& col : res.certificate->columns)
        for (int i = 0; i < 3; ++i) rows[i].push_back(col[i]);
    CHECK(cat_pattern_check(rows, res.certificate->output));
}

TEST_CASE("a hand-picked BCK matrix is accepted by the verifier") {
    Relation bck = build_bck();
    ExclusionCertificate cert;
    cert.relation_name = "BCK";
    cert.relation = bck;
    cert.m = 5;
    // Columns of ((0,2,1,1,2),(1,2,2,1,0),(2,2,0,1,1)).
    cert.columns = {{0, 1, 2}, {2, 2, 2}, {1, 2, 0}, {1, 1, 1}, {2, 0, 1}};
    for (int row = 0; row < 3; ++row) {
        std::vector<int> word;
        for (const auto& col : cert.columns) word.push_back(col[row]);
        cert.schedules.push_back(coxeter_reduce_trace(word).cancellations);
    }
    cert.output = {0, 0, 0};
    CHECK(verify_exclusion(cert));
}

TEST_CASE("relations with Abelian embeddings yield no exclusion certificate") {
    CHECK(exclusion_search(build_one_in_three(), 7).status == ExclusionStatus::NoneFound);
    CHECK(exclusion_search(build_eq(), 7).status == ExclusionStatus::NoneFound);
}

TEST_CASE("build_cyc_exclusion reproduces the printed m = 7 matrix") {
    ExclusionCertificate cert = build_cyc_exclusion(7);
    CHECK(cert.m == 13);
    std::vector<Tuple> expect_rows = {
        {0, 1, 6, 2, 5, 3, 4, 4, 3, 5, 2, 6, 1},
        {1, 1, 0, 2, 6, 3, 5, 4, 4, 5, 3, 6, 2},
        {6, 5, 1, 3, 3, 1, 5, 6, 0, 4, 2, 2, 4},
    };
    for (int row = 0; row < 3; ++row)
        for (int j = 0; j < 13; ++j) CHECK(cert.columns[j][row] == expect_rows[row][j]);
    CHECK(verify_exclusion(cert));
    CHECK(cert.output == Tuple{0, 0, 0});

    // (0,0,0) is in CYC_m \ CYC*_m.
    CycPair cy = build_cyc(7);
    CHECK(cy.cyc.contains({0, 0, 0}));
    CHECK(!cy.cyc_star.contains({0, 0, 0}));
}

TEST_CASE("cyc exclusion at m=3 and the search certificate coexist") {
    ExclusionCertificate built = build_cyc_exclusion(3);
    CHECK(built.m == 5);
    CHECK(verify_exclusion(built));
    ExclusionSearchResult searched = exclusion_search(build_bck(), 5);
    REQUIRE(searched.status == ExclusionStatus::Found);
    CHECK(searched.certificate->m == 5);
    CHECK(searched.certificate->output == built.output);
}

TEST_CASE("boolean Bal and Cat tables coincide for m <= 9") {
    for (int m : {1, 3, 5, 7, 9}) {
        PartialFn bal = boolean_bal_table(m);
        PartialFn cat = boolean_cat_table(m);
        CHECK(bal.table == cat.table);
    }
}

TEST_CASE("catalan table caching is transparent") {
    std::string dir = "/tmp/nrd_cache_test";
    MaltsevTerm phi = named_group_maltsev("Z3");
    CatalanFamily a(phi, dir);
    a.extend_to(5);
    CatalanFamily b(phi, dir);  // second build reads the cache
    b.extend_to(5);
    Tuple args(5, 0);
    while (true) {
        CHECK(a.eval(5, args) == b.eval(5, args));
        int i = 4;
        while (i >= 0 && args[i] == 2) args[i--] = 0;
        if (i < 0) break;
        ++args[i];
    }
}

TEST_CASE("exclusion certificate json round trip and shipped file") {
    ExclusionCertificate cert = build_cyc_exclusion(3);
    Json j = to_json(cert);
    ExclusionCertificate back = exclusion_from_json(j);
    CHECK(back.m == cert.m);
    CHECK(back.columns == cert.columns);
    CHECK(back.output == cert.output);
    CHECK(verify_exclusion(back));

    ExclusionCertificate shipped =
        exclusion_from_json(load_json_file(std::string(NRD_DATA_DIR) + "/bck_exclusion_cert.json"));
    CHECK(verify_exclusion(shipped));
}
