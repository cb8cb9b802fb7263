#include <galink/fusion.hpp>
#include <galink/galois_action.hpp>
#include <galink/invariants.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace galink;

TEST_CASE("parallel unknots") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 1), 2);
    CHECK(parallel_unknots(md, {}).exact == md.s(0, 0));
    CHECK(parallel_unknots(md, {1}).exact == md.s(0, 1));
    // keychain with vacuum core agrees
    for (int a = 0; a < md.size(); ++a)
        for (int b = 0; b < md.size(); ++b)
            CHECK(keychain(md, 0, {a, b}).exact == parallel_unknots(md, {a, b}).exact);
}

TEST_CASE("Verlinde dimensions") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 2), 2);
    CHECK(verlinde_dimension(md, 1, {}) == md.size());
    // genus 0, two strands: unitarity delta
    for (int a = 0; a < md.size(); ++a)
        for (int b = 0; b < md.size(); ++b)
            CHECK(verlinde_dimension(md, 0, {a, md.conj(b)}) == (a == b ? 1 : 0));
    // genus 0, three strands: the fusion coefficients
    auto fus = verlinde_table(md);
    for (int a = 0; a < md.size(); ++a)
        for (int b = 0; b < md.size(); ++b)
            for (int c = 0; c < md.size(); ++c)
                REQUIRE(verlinde_dimension(md, 0, {a, b, md.conj(c)}) == fus.at(a, b, c));
    // higher genus values are non-negative integers (assertion built in)
    for (long h = 0; h <= 2; ++h) CHECK(verlinde_dimension(md, h, {1}) >= 0);
    CHECK_THROWS_AS(verlinde_dimension(md, -1, {}), UsageError);
}

TEST_CASE("chain invariants") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 1), 2);
    CHECK_THROWS_AS(chain(md, {}), UsageError);
    CHECK(chain(md, {1}).exact == md.s(0, 1));
    for (int a = 0; a < md.size(); ++a)
        for (int b = 0; b < md.size(); ++b) CHECK(chain(md, {a, b}).exact == md.s(a, b));
    // frozen three-link value: S_01 * S_10 / S_01 = 1/sqrt(2)
    CHECK(chain(md, {0, 1, 0}).exact == sqrt_integer(2).inverse());
}

TEST_CASE("keychain invariants") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 2), 1);
    for (int a = 0; a < md.size(); ++a) {
        CHECK(keychain(md, a, {}).exact == md.s(0, a));
        for (int b = 0; b < md.size(); ++b) {
            CHECK(keychain(md, a, {b}).exact == md.s(a, b));
            CHECK(chain(md, {a, b}).exact == keychain(md, a, {b}).exact);
        }
    }
}

TEST_CASE("permutation symmetry of the strand arguments") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 1), 3);
    std::vector<int> args{0, 1, 3};
    auto base_d = parallel_unknots(md, args).exact;
    auto base_v = verlinde_dimension(md, 1, args);
    auto base_s = keychain(md, 2, args).exact;
    std::vector<int> perm = args;
    std::sort(perm.begin(), perm.end());
    do {
        CHECK(parallel_unknots(md, perm).exact == base_d);
        CHECK(verlinde_dimension(md, 1, perm) == base_v);
        CHECK(keychain(md, 2, perm).exact == base_s);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // chains are symmetric only under reversal
    std::vector<int> ch{0, 1, 2, 3};
    auto fwd = chain(md, ch).exact;
    std::vector<int> rev(ch.rbegin(), ch.rend());
    CHECK(chain(md, rev).exact == fwd);
    CHECK(!(chain(md, {1, 0, 2, 3}).exact == fwd));  // a genuine non-palindromic reordering differs
}

TEST_CASE("charge conjugation covariance of all four invariants") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 2), 2);
    auto C = [&](std::vector<int> v) {
        for (int& x : v) x = md.conj(x);
        return v;
    };
    std::vector<std::vector<int>> tuples{{}, {1}, {1, 2}, {2, 4, 5}, {3, 3}};
    for (const auto& t : tuples) {
        CHECK(parallel_unknots(md, C(t)).exact == parallel_unknots(md, t).exact);
        for (long h = 0; h <= 2; ++h)
            CHECK(verlinde_dimension(md, h, C(t)) == verlinde_dimension(md, h, t));
        if (!t.empty()) CHECK(chain(md, C(t)).exact == chain(md, t).exact);
        for (int i0 = 0; i0 < md.size(); ++i0)
            CHECK(keychain(md, md.conj(i0), C(t)).exact == keychain(md, i0, t).exact);
    }
}

TEST_CASE("Verlinde dimensions are Galois-fixed") {
    auto md = ModularData::build(SimpleAlgebra::build('A', 1), 3);
    for (long h = 0; h <= 2; ++h)
        for (int a = 0; a < md.size(); ++a)
            for (int b = 0; b < md.size(); ++b) {
                CycNumber v = verlinde_dimension_value(md, h, {a, b});
                for (long e : galois_group_elements(md)) REQUIRE(v.galois(e) == v);
            }
}
