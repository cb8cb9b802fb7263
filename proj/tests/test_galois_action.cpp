#include <galink/galois_action.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace galink;

TEST_CASE("act_on_weight folds the scaled shifted weight") {
    auto a1 = SimpleAlgebra::build('A', 1);
    auto md = ModularData::build(a1, 1);  // m=3, N=24

    for (long i = 0; i < md.size(); ++i) {
        auto [w, s] = act_on_weight(md, 1, md.weights()[i]);
        CHECK(w == md.weights()[i]);
        CHECK(s == 1);
    }
    // ell = 11: 11*1 = 11 in (6,12) folds to 1; 11*2 = 22 = 10 mod 12 folds to 2
    CHECK(act_on_weight(md, 11, {0}) == std::make_pair(FiniteWeight{0}, -1));
    CHECK(act_on_weight(md, 11, {1}) == std::make_pair(FiniteWeight{1}, -1));

    auto md2 = ModularData::build(a1, 2);  // m=4, N=96
    // raw folding parities for ell = 5
    CHECK(act_on_weight(md2, 5, {0}) == std::make_pair(FiniteWeight{2}, -1));
    CHECK(act_on_weight(md2, 5, {1}) == std::make_pair(FiniteWeight{1}, +1));
    CHECK(act_on_weight(md2, 5, {2}) == std::make_pair(FiniteWeight{0}, -1));

    CHECK_THROWS_AS(act_on_weight(md2, 2, {0}), UsageError);  // not coprime
}

TEST_CASE("action tables verify the S-matrix identity") {
    auto a1 = SimpleAlgebra::build('A', 1);
    auto md = ModularData::build(a1, 1);
    auto act11 = build_action_table(md, 11);
    CHECK((act11.perm == std::vector<int>{0, 1}));
    CHECK((act11.sign == std::vector<int>{-1, -1}));
    // field-side cross-check: sigma_11 sends 1/sqrt(2) to -1/sqrt(2)
    CHECK(md.s(0, 0) == sqrt_integer(2).inverse());
    CHECK(md.s(0, 0).galois(11) == -md.s(0, 0));

    // the epsilon table absorbs sigma(kappa)/kappa; here it flips the raw parity
    auto md2 = ModularData::build(a1, 2);
    auto act5 = build_action_table(md2, 5);
    CHECK(act5.kappa_sign == -1);
    CHECK((act5.perm == std::vector<int>{2, 1, 0}));
    CHECK((act5.sign == std::vector<int>{+1, -1, +1}));

    CHECK_THROWS_AS(build_action_table(md2, 3), UsageError);  // gcd(3, 96) > 1
}

TEST_CASE("identity and conjugation endpoints") {
    for (auto [fam, rank, k] : {std::tuple<char, int, long>{'A', 1, 3},
                                {'A', 2, 2},
                                {'A', 3, 1},
                                {'G', 2, 1}}) {
        auto md = ModularData::build(SimpleAlgebra::build(fam, rank), k);
        auto id = build_action_table(md, 1);
        for (long i = 0; i < md.size(); ++i) {
            CHECK(id.perm[i] == i);
            CHECK(id.sign[i] == 1);
        }
        auto cc = build_action_table(md, md.order() - 1);
        for (long i = 0; i < md.size(); ++i) {
            CHECK(cc.perm[i] == md.conj(i));
            CHECK(cc.sign[i] == 1);
        }
    }
}

TEST_CASE("every Galois element verifies on small data") {
    for (auto [fam, rank, k] : {std::tuple<char, int, long>{'A', 1, 4}, {'A', 2, 2}, {'G', 2, 2}}) {
        auto md = ModularData::build(SimpleAlgebra::build(fam, rank), k);
        for (long e : galois_group_elements(md)) CHECK_NOTHROW(build_action_table(md, e));
    }
}

TEST_CASE("group element enumeration") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 1), 1);  // N = 24
    auto els = galois_group_elements(md);
    CHECK((els == std::vector<long>{1, 5, 7, 11, 13, 17, 19, 23}));
    CHECK(els.front() == 1);
    CHECK(els.back() == md.order() - 1);

    auto dedup = galois_group_elements(md, /*dedupe=*/true);
    CHECK(dedup.size() <= els.size());
    CHECK(els.size() % dedup.size() == 0);  // quotient group
    CHECK(dedup.front() == 1);
}

TEST_CASE("action composition law") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 2), 2);
    auto els = galois_group_elements(md);
    for (size_t x = 0; x < els.size(); x += 3)
        for (size_t y = 1; y < els.size(); y += 3) {
            auto t1 = build_action_table(md, els[x]);
            auto t2 = build_action_table(md, els[y]);
            auto t12 = build_action_table(md, (els[x] * els[y]) % md.order());
            for (long i = 0; i < md.size(); ++i) {
                REQUIRE(t12.perm[i] == t1.perm[t2.perm[i]]);
                REQUIRE(t12.sign[i] == t1.sign[t2.perm[i]] * t2.sign[i]);
            }
        }
}

TEST_CASE("the shuffled vacuum stays inside the weight set") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 2), 3);
    for (long e : galois_group_elements(md)) {
        auto act = build_action_table(md, e);
        CHECK(act.perm[0] >= 0);
        CHECK(act.perm[0] < md.size());
    }
}
