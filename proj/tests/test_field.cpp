#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bentforge/field.hpp"

using namespace bentforge;

namespace {

// Test-only oracle: irreducibility by trial division over all lower-degree
// polynomials, independent of the library's Rabin test.
uint64_t naive_polymod(uint64_t a, uint64_t b) {
    int db = 63 - __builtin_clzll(b);
    while (a >= (1ull << db)) {
        int da = 63 - __builtin_clzll(a);
        if (da < db) break;
        a ^= b << (da - db);
    }
    return a;
}

bool naive_irreducible(uint64_t f, int d) {
    for (uint64_t g = 2; g < (1ull << (d / 2 + 1)); ++g)
        if (naive_polymod(f, g) == 0) return false;
    return true;
}

// Test-only deterministic Miller-Rabin, valid for all 64-bit inputs.
uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t n) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}
uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t n) {
    uint64_t r = 1;
    a %= n;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, n);
        a = mulmod_u64(a, a, n);
        e >>= 1;
    }
    return r;
}
bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull})
        if (n % p == 0) return n == p;
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 0; i < s - 1 && witness; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("context construction and towers") {
    FieldContext c4(4);
    CHECK(c4.nu() == 2);
    CHECK(c4.tower() == std::vector<int>{4, 2, 1});

    FieldContext c12(12);
    CHECK(c12.nu() == 2);
    CHECK(c12.tower() == std::vector<int>{12, 6, 3});

    FieldContext c24(24);
    CHECK(c24.nu() == 3);
    CHECK(c24.tower() == std::vector<int>{24, 12, 6, 3});

    CHECK_THROWS_AS(FieldContext(7), std::invalid_argument);
    CHECK_THROWS_AS(FieldContext(2), std::invalid_argument);
    CHECK_THROWS_AS(FieldContext(42), std::invalid_argument);
}

TEST_CASE("modulus is the smallest irreducible polynomial") {
    // x^4 + x + 1 is the smallest degree-4 irreducible
    CHECK(FieldContext(4).modulus() == 0x13);
    for (int d : {4, 6, 8, 10, 12}) {
        FieldContext c(d);
        CHECK(naive_irreducible(c.modulus(), d));
        for (uint64_t f = (1ull << d) + 1; f < c.modulus(); f += 2)
            CHECK_FALSE(naive_irreducible(f, d));
    }
}

TEST_CASE("factor table is correct and prime") {
    for (int m = 4; m <= 40; m += 2) {
        const auto& fs = order_factorization(m);
        unsigned __int128 prod = 1;
        for (const auto& pp : fs) {
            CHECK(is_prime_u64(pp.prime));
            for (int e = 0; e < pp.exponent; ++e) prod *= pp.prime;
        }
        CHECK(prod == (static_cast<unsigned __int128>(1) << m) - 1);
    }
}

TEST_CASE("generator has full order") {
    for (int m : {4, 6, 10, 12, 20}) {
        FieldContext c(m);
        uint64_t g = c.generator();
        CHECK(c.pow(g, c.group_order()) == 1);
        for (const auto& pp : c.order_factors()) CHECK(c.pow(g, c.group_order() / pp.prime) != 1);
    }
    CHECK(FieldContext(4).generator() == 0x2);
}

TEST_CASE("basic arithmetic laws") {
    FieldContext c(12);
    std::mt19937_64 rng(7);
    auto rnd = [&] { return rng() & c.mask(); };
    for (int i = 0; i < 500; ++i) {
        uint64_t x = rnd(), y = rnd(), z = rnd();
        CHECK(c.add(x, x) == 0);
        CHECK(c.mul(x, y) == c.mul(y, x));
        CHECK(c.mul(c.mul(x, y), z) == c.mul(x, c.mul(y, z)));
        CHECK(c.mul(x, c.add(y, z)) == c.add(c.mul(x, y), c.mul(x, z)));
        // Frobenius is additive and multiplicative
        CHECK(c.sqr(c.add(x, y)) == c.add(c.sqr(x), c.sqr(y)));
        CHECK(c.sqr(c.mul(x, y)) == c.mul(c.sqr(x), c.sqr(y)));
    }
    CHECK(c.inv(0) == 0);
    CHECK(c.mul(c.generator(), c.inv(c.generator())) == 1);
    for (uint64_t x = 1; x <= c.mask(); ++x) CHECK(c.pow(x, c.group_order()) == 1);
}

TEST_CASE("relative trace properties") {
    FieldContext c(12);
    std::mt19937_64 rng(13);
    CHECK(c.rel_trace(0, 3) == 0);
    for (int i = 0; i < 1000; ++i) {
        uint64_t x = rng() & c.mask();
        CHECK(c.rel_trace(x, 12) == x);
        // transitivity through the middle level
        CHECK(c.rel_trace(x, 1) == c.trace_between(c.rel_trace(x, 6), 6, 1));
        // result lands in the target subfield
        CHECK(c.in_subfield(c.rel_trace(x, 6), 6));
        CHECK(c.in_subfield(c.rel_trace(x, 3), 3));
        uint64_t y = rng() & c.mask();
        CHECK(c.rel_trace(x ^ y, 6) == (c.rel_trace(x, 6) ^ c.rel_trace(y, 6)));
    }
    CHECK_THROWS_AS(c.rel_trace(1, 5), std::invalid_argument);

    // surjectivity: every subfield value is hit 2^{m0-mi} times
    for (int level : {6, 3, 1}) {
        std::vector<uint64_t> counts(1ull << level, 0);
        for (uint64_t x = 0; x <= c.mask(); ++x) {
            uint64_t t = c.rel_trace(x, level);
            uint64_t log_index = 0;
            bool found = false;
            // index images by enumeration of the subfield
            uint64_t g = c.subfield_generator(level);
            if (t == 0) {
                log_index = 0;
                found = true;
            } else {
                uint64_t p = 1;
                for (uint64_t k = 0; k < (1ull << level) - 1; ++k) {
                    if (p == t) {
                        log_index = k + 1;
                        found = true;
                        break;
                    }
                    p = c.mul(p, g);
                }
            }
            REQUIRE(found);
            ++counts[log_index];
        }
        for (uint64_t cnt : counts) CHECK(cnt == (1ull << (12 - level)));
    }
}

TEST_CASE("absolute trace is balanced") {
    FieldContext c(12);
    CHECK(c.abs_trace_bit(0) == 0);
    CHECK(c.abs_trace_bit(1) == 0);  // trace of 1 is m0 mod 2
    uint64_t ones = 0;
    for (uint64_t x = 0; x <= c.mask(); ++x) ones += c.abs_trace_bit(x);
    CHECK(ones == 1ull << 11);
}

TEST_CASE("subfield membership") {
    FieldContext c(12);
    CHECK(c.in_subfield(0, 6));
    CHECK_FALSE(c.in_subfield(c.generator(), 6));
    uint64_t count = 0;
    for (uint64_t x = 0; x <= c.mask(); ++x)
        if (c.in_subfield(x, 6)) ++count;
    CHECK(count == 64);

    // subfields are closed under add and mul
    std::vector<uint64_t> members;
    for (uint64_t x = 0; x <= c.mask(); ++x)
        if (c.in_subfield(x, 3)) members.push_back(x);
    CHECK(members.size() == 8);
    for (uint64_t x : members)
        for (uint64_t y : members) {
            CHECK(c.in_subfield(c.add(x, y), 3));
            CHECK(c.in_subfield(c.mul(x, y), 3));
        }
}

TEST_CASE("field elements carry their context") {
    FieldContext c1(12), c2(12);
    FieldElement x(c1, 5), y(c2, 7);
    CHECK_THROWS_AS(x + y, std::invalid_argument);
    CHECK_THROWS_AS(x * y, std::invalid_argument);
    CHECK_THROWS_AS(FieldElement(c1, 1ull << 12), std::invalid_argument);
    FieldElement z(c1, 3);
    CHECK((x + z).bits() == 6);
    CHECK(rel_trace(x, 12) == x);
    CHECK(is_in_subfield(FieldElement(c1, 0), 6));
}

TEST_CASE("optional log table gives identical results") {
    FieldContext plain(12), accel(12, true);
    CHECK(accel.has_log_table());
    REQUIRE(plain.modulus() == accel.modulus());
    std::mt19937_64 rng(23);
    for (int i = 0; i < 2000; ++i) {
        uint64_t x = rng() & plain.mask();
        uint64_t e = rng() % (2 * plain.group_order());
        CHECK(plain.pow(x, e) == accel.pow(x, e));
        CHECK(plain.inv(x) == accel.inv(x));
    }
}

TEST_CASE("subfield logs and cube roots") {
    FieldContext c(12);
    uint64_t g6 = c.subfield_generator(6);
    for (uint64_t k = 0; k < 63; ++k) CHECK(c.subfield_log(c.pow(g6, k), 6) == k);
    // cube roots exist exactly for every third power
    for (uint64_t k = 0; k < 63; ++k) {
        uint64_t x = c.pow(g6, k);
        uint64_t r = c.cube_root(x, 6);
        if (k % 3 == 0) {
            REQUIRE(r != 0);
            CHECK(c.mul(c.sqr(r), r) == x);
        } else {
            CHECK(r == 0);
        }
    }
}

TEST_CASE("largest supported contexts") {
    for (int m0 : {38, 40}) {
        FieldContext c(m0);
        uint64_t g = c.generator();
        CHECK(c.pow(g, c.group_order()) == 1);
        for (const auto& pp : c.order_factors()) CHECK(c.pow(g, c.group_order() / pp.prime) != 1);
        std::mt19937_64 rng(m0);
        for (int i = 0; i < 100; ++i) {
            uint64_t x = rng() & c.mask(), y = rng() & c.mask();
            CHECK(c.sqr(c.mul(x, y)) == c.mul(c.sqr(x), c.sqr(y)));
            if (x) CHECK(c.mul(x, c.inv(x)) == 1);
            CHECK(c.in_subfield(c.rel_trace(x, c.tower_degree(1)), c.tower_degree(1)));
        }
    }
}

TEST_CASE("element parsing") {
    FieldContext c(12);
    CHECK(parse_element(c, "0x1a3", 12) == 0x1a3);
    CHECK(parse_element(c, "g", 12) == c.generator());
    CHECK(parse_element(c, "g^17", 12) == c.pow(c.generator(), 17));
    CHECK(parse_element(c, "g^5", 6) == c.pow(c.subfield_generator(6), 5));
    CHECK(parse_element(c, "7", 12) == 7);
    CHECK_THROWS_AS(parse_element(c, "0x1000", 12), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(c, "g^", 12), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(c, "", 12), std::invalid_argument);
    // bitmask not in the requested subfield
    CHECK_THROWS_AS(parse_element(c, element_to_hex(c.generator()), 6), std::invalid_argument);
}
