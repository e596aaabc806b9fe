#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "bentforge/polar.hpp"

using namespace bentforge;

TEST_CASE("polar split round trip and structure") {
    FieldContext c(12);
    std::mt19937_64 rng(5);
    CHECK_THROWS_AS(polar_split(c, 0), std::invalid_argument);

    PolarForm one = polar_split(c, 1);
    CHECK(one.unit(1) == 1);
    CHECK(one.unit(2) == 1);
    CHECK(one.odd_part == 1);

    // elements of the odd subfield decompose trivially
    uint64_t g3 = c.subfield_generator(3);
    for (uint64_t k = 0; k < 7; ++k) {
        PolarForm pf = polar_split(c, c.pow(g3, k));
        CHECK(pf.unit(1) == 1);
        CHECK(pf.unit(2) == 1);
        CHECK(pf.odd_part == c.pow(g3, k));
    }

    for (int i = 0; i < 1000; ++i) {
        uint64_t x = (rng() & c.mask());
        if (x == 0) continue;
        PolarForm pf = polar_split(c, x);
        CHECK(pf.reconstruct(c) == x);
        CHECK(c.pow(pf.unit(1), (1ull << 6) + 1) == 1);
        CHECK(c.pow(pf.unit(2), (1ull << 3) + 1) == 1);
        CHECK(c.in_subfield(pf.unit(2), 6));
        CHECK(c.in_subfield(pf.odd_part, 3));
        CHECK(pf.odd_part != 0);
    }
}

TEST_CASE("polar split is unique (full enumeration)") {
    FieldContext c(12);
    std::vector<uint64_t> odd;
    for (uint64_t x = 1; x <= c.mask(); ++x)
        if (c.in_subfield(x, 3)) odd.push_back(x);
    REQUIRE(odd.size() == 7);
    // distinct products = injective reconstruction = unique decomposition
    std::set<uint64_t> seen;
    for (uint64_t u1 : unit_group(c, 1))
        for (uint64_t u2 : unit_group(c, 2))
            for (uint64_t y : odd) seen.insert(c.mul(c.mul(u1, u2), y));
    CHECK(seen.size() == c.mask());  // 65 * 9 * 7 = 4095
}

TEST_CASE("unit group enumeration") {
    FieldContext c(12);
    auto u1 = unit_group(c, 1);
    auto u2 = unit_group(c, 2);
    CHECK(u1.size() == 65);
    CHECK(u2.size() == 9);
    std::set<uint64_t> distinct(u1.begin(), u1.end());
    CHECK(distinct.size() == 65);
    for (uint64_t u : u1) CHECK(c.pow(u, 65) == 1);
    for (uint64_t u : u2) {
        CHECK(c.pow(u, 9) == 1);
        CHECK(c.in_subfield(u, 6));
    }
    CHECK_THROWS_AS(unit_group(c, 3), std::out_of_range);
    CHECK_THROWS_AS(unit_group(c, 0), std::out_of_range);
}

TEST_CASE("trace sets partition the subfield") {
    FieldContext c(12);
    for (int level : {6, 3}) {
        auto t0 = trace_set(c, level, 0);
        auto t1 = trace_set(c, level, 1);
        CHECK(t0.size() == (1ull << (level - 1)));
        CHECK(t1.size() == (1ull << (level - 1)));
        std::set<uint64_t> all(t0.begin(), t0.end());
        all.insert(t1.begin(), t1.end());
        CHECK(all.size() == (1ull << level));
    }
}

TEST_CASE("ht90 fold maps the circle onto the trace-one set") {
    FieldContext c(12);
    CHECK(ht90_image(c, 1) == 0);
    CHECK(ht90_image(c, 0) == 0);

    // images of U_1 \ {1}, with multiplicity, hit the trace-one set of
    // GF(2^6) exactly twice each
    std::map<uint64_t, int> hits;
    for (uint64_t u : unit_group(c, 1))
        if (u != 1) ++hits[ht90_image(c, u)];
    auto t1 = trace_set(c, 6, 1);
    CHECK(hits.size() == t1.size());
    for (uint64_t t : t1) {
        REQUIRE(hits.count(t) == 1);
        CHECK(hits[t] == 2);
    }

    // and GF(2^6)^* \ {1} double-covers the punctured trace-zero set
    std::map<uint64_t, int> hits0;
    uint64_t g6 = c.subfield_generator(6);
    for (uint64_t k = 1; k < 63; ++k) ++hits0[ht90_image(c, c.pow(g6, k))];
    auto t0 = trace_set(c, 6, 0);
    CHECK(hits0.size() == (t0.size() - 1));  // everything except 0 itself
    for (auto& [img, n] : hits0) {
        CHECK(n == 2);
        CHECK(img != 0);
    }

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        uint64_t x = rng() & c.mask();
        if (x == 0) continue;
        CHECK(ht90_image(c, x) == ht90_image(c, c.inv(x)));
    }
}

TEST_CASE("dickson polynomial") {
    FieldContext c(12);
    CHECK(dickson3(c, 0) == 0);
    CHECK(dickson3(c, 1) == 0);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        uint64_t x = rng() & c.mask();
        if (x == 0) continue;
        uint64_t x3 = c.mul(c.sqr(x), x);
        CHECK(dickson3(c, ht90_image(c, x)) == (x3 ^ c.inv(x3)));
    }
}

TEST_CASE("dickson permutes the right trace set") {
    // permutation of the trace-zero set when the half degree is odd
    {
        FieldContext c(10);
        auto t0 = trace_set(c, 5, 0);
        std::set<uint64_t> img;
        for (uint64_t t : t0) img.insert(dickson3(c, t));
        CHECK(img == std::set<uint64_t>(t0.begin(), t0.end()));
    }
    // and of the trace-one set when it is even
    {
        FieldContext c(12);
        auto t1 = trace_set(c, 6, 1);
        std::set<uint64_t> img;
        for (uint64_t t : t1) img.insert(dickson3(c, t));
        CHECK(img == std::set<uint64_t>(t1.begin(), t1.end()));
    }
}

TEST_CASE("additive character") {
    FieldContext c(12);
    CHECK(additive_char(c, 0) == 1);
    int64_t sum = 0;
    for (uint64_t x = 0; x <= c.mask(); ++x) sum += additive_char(c, x);
    CHECK(sum == 0);
    std::mt19937_64 rng(19);
    for (int i = 0; i < 500; ++i) {
        uint64_t x = rng() & c.mask(), y = rng() & c.mask();
        CHECK(additive_char(c, x) * additive_char(c, y) == additive_char(c, x ^ y));
    }
}

TEST_CASE("gf4 element algebra and embedding") {
    FieldContext c(12);
    uint64_t w = c.gf4_omega();
    // w^2 + w + 1 = 0
    CHECK((c.sqr(w) ^ w ^ 1) == 0);
    CHECK(Gf4Element::omega().embed(c) == w);
    CHECK(Gf4Element::omega2().embed(c) == c.gf4_omega2());
    for (Gf4Element x : {Gf4Element::one(), Gf4Element::omega(), Gf4Element::omega2()})
        for (Gf4Element y : {Gf4Element::one(), Gf4Element::omega(), Gf4Element::omega2()}) {
            CHECK((x * y).embed(c) == c.mul(x.embed(c), y.embed(c)));
            CHECK((x * x.inverse()) == Gf4Element::one());
        }
    CHECK(Gf4Element::omega().trace_bit() == 1);
    CHECK(Gf4Element::omega2().trace_bit() == 1);
    CHECK(Gf4Element::one().trace_bit() == 0);
    // the symbolic trace matches x + x^2 inside the field
    for (Gf4Element x :
         {Gf4Element::zero(), Gf4Element::one(), Gf4Element::omega(), Gf4Element::omega2()}) {
        uint64_t e = x.embed(c);
        CHECK(static_cast<uint64_t>(x.trace_bit()) == (e ^ c.sqr(e)));
    }
    CHECK_THROWS_AS(Gf4Element::classify(c, c.generator()), std::invalid_argument);
    CHECK(Gf4Element::parse("w2") == Gf4Element::omega2());
    CHECK_THROWS_AS(Gf4Element::parse("q"), std::invalid_argument);
}

TEST_CASE("cubic character basics") {
    FieldContext c(12);
    std::mt19937_64 rng(29);
    CHECK(cubic_char(c, 1, 12) == Gf4Element::one());
    CHECK_THROWS_AS(cubic_char(c, 0, 12), std::invalid_argument);
    CHECK_THROWS_AS(cubic_char(c, 1, 3), std::invalid_argument);
    for (int i = 0; i < 200; ++i) {
        uint64_t x = rng() & c.mask();
        if (x == 0) continue;
        uint64_t x3 = c.mul(c.sqr(x), x);
        CHECK(cubic_char(c, x3, 12) == Gf4Element::one());
    }
    // compatibility across levels: the full-field character is the square of
    // the half-field one on the subfield
    uint64_t g6 = c.subfield_generator(6);
    for (uint64_t k = 0; k < 63; ++k) {
        uint64_t x = c.pow(g6, k);
        CHECK(cubic_char(c, x, 12) == cubic_char(c, x, 6).squared());
    }
}

TEST_CASE("cubic character triviality pattern") {
    // trivial on everything except the deepest unit subgroup
    for (int m0 : {12, 24}) {
        FieldContext c(m0);
        int nu = c.nu();
        for (int i = 1; i < nu; ++i)
            for (uint64_t u : unit_group(c, i))
                CHECK(cubic_char(c, u, m0) == Gf4Element::one());
        uint64_t gs = c.subfield_generator(c.tower_degree(nu));
        for (uint64_t k = 0; k < (1ull << c.tower_degree(nu)) - 1; ++k)
            CHECK(cubic_char(c, c.pow(gs, k), m0) == Gf4Element::one());
        bool nontrivial = false;
        for (uint64_t u : unit_group(c, nu))
            if (cubic_char(c, u, m0) != Gf4Element::one()) nontrivial = true;
        CHECK(nontrivial);
    }
}

TEST_CASE("cube map structure on the tower") {
    FieldContext c(12);
    // permutes the odd subfield and U_1, 3-to-1 on the deepest subgroup
    std::set<uint64_t> img;
    for (uint64_t u : unit_group(c, 1)) img.insert(c.mul(c.sqr(u), u));
    CHECK(img.size() == 65);
    img.clear();
    uint64_t g3 = c.subfield_generator(3);
    for (uint64_t k = 0; k < 7; ++k) {
        uint64_t x = c.pow(g3, k);
        img.insert(c.mul(c.sqr(x), x));
    }
    CHECK(img.size() == 7);
    std::map<uint64_t, int> cnt;
    for (uint64_t u : unit_group(c, 2)) ++cnt[c.mul(c.sqr(u), u)];
    CHECK(cnt.size() == 3);
    for (auto& [cube, n] : cnt) CHECK(n == 3);
}
