#include "bentforge/sums.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

#include "bentforge/polar.hpp"

namespace bentforge {

namespace {

inline int sign_of_bit(uint64_t b) { return b ? -1 : 1; }

void require_subfield(const FieldContext& ctx, uint64_t x, int m1, const char* what) {
    if (!ctx.in_subfield(x, m1))
        throw std::invalid_argument(std::string(what) + " must lie in the requested subfield");
}

// Solves u^4 + u = c in GF(2^m1) (c with zero trace to GF(4)) by the
// standard telescoping construction with a trace-one element theta.
uint64_t solve_u4_plus_u(const FieldContext& ctx, uint64_t c, int m1) {
    uint64_t theta = 0;
    uint64_t g = ctx.subfield_generator(m1);
    uint64_t x = 1;
    for (uint64_t k = 0; k < (1ull << m1) - 1; ++k) {
        uint64_t t = ctx.trace_between(x, m1, 2);
        if (t != 0) {
            theta = ctx.mul(x, ctx.inv(t));  // trace is GF(4)-linear
            break;
        }
        x = ctx.mul(x, g);
    }
    if (theta == 0) throw std::logic_error("no trace-one element found");

    int half = m1 / 2;
    uint64_t u = 0, partial = 0, cpow = c, thpow = theta;
    for (int k = 0; k < half; ++k) {
        u ^= ctx.mul(partial, thpow);
        partial ^= cpow;
        cpow = ctx.sqr(ctx.sqr(cpow));
        thpow = ctx.sqr(ctx.sqr(thpow));
    }
    if ((ctx.sqr(ctx.sqr(u)) ^ u) != c) throw std::logic_error("quartic solver failed");
    return u;
}

}  // namespace

int64_t kloosterman(const FieldContext& ctx, uint64_t a, int m1) {
    require_subfield(ctx, a, m1, "Kloosterman argument");
    uint64_t n = (1ull << m1) - 1;
    uint64_t g = ctx.subfield_generator(m1);
    uint64_t ginv = ctx.inv(g);
    int64_t sum = 1;  // x = 0 term, tr(0) = 0
    uint64_t x = 1, xinv = 1;
    for (uint64_t k = 0; k < n; ++k) {
        sum += sign_of_bit(ctx.trace_between(ctx.mul(a, x) ^ xinv, m1, 1));
        x = ctx.mul(x, g);
        xinv = ctx.mul(xinv, ginv);
    }
    return sum;
}

int kloosterman_mod3(const FieldContext& ctx, uint64_t a, int m1) {
    int64_t k = kloosterman(ctx, a, m1) % 3;
    return static_cast<int>(k < 0 ? k + 3 : k);
}

int64_t cubic_sum(const FieldContext& ctx, uint64_t a, uint64_t b, int m1) {
    require_subfield(ctx, a, m1, "cubic sum coefficient");
    require_subfield(ctx, b, m1, "cubic sum coefficient");
    uint64_t n = (1ull << m1) - 1;
    uint64_t g = ctx.subfield_generator(m1);
    uint64_t g3 = ctx.mul(ctx.sqr(g), g);
    int64_t sum = 1;
    uint64_t x = 1, x3 = 1;
    for (uint64_t k = 0; k < n; ++k) {
        sum += sign_of_bit(ctx.trace_between(ctx.mul(a, x3) ^ ctx.mul(b, x), m1, 1));
        x = ctx.mul(x, g);
        x3 = ctx.mul(x3, g3);
    }
    return sum;
}

int64_t cubic_sum_aa_closed(const FieldContext& ctx, uint64_t a, int m1) {
    if (a == 0) throw std::invalid_argument("diagonal cubic sum needs a != 0");
    if (m1 % 2 != 0) throw std::invalid_argument("this closed form needs m1 even");
    require_subfield(ctx, a, m1, "cubic sum coefficient");
    int m2 = m1 / 2;

    uint64_t alpha = ctx.cube_root(a, m1);
    if (alpha != 0) {
        // a is a cube; the sum vanishes iff the cube root has nonzero
        // trace to GF(4), and the choice of root does not matter.
        if (ctx.trace_between(alpha, m1, 2) != 0) return 0;
        uint64_t c = ctx.sqr(ctx.sqr(alpha));
        uint64_t u0;
        if (m2 >= 3 && m2 % 2 == 1) {
            // u0 = sum of alpha^{4^{2i+2}} plus any GF(4) shift.
            u0 = 0;
            uint64_t p = ctx.sqr(ctx.sqr(ctx.sqr(ctx.sqr(alpha))));  // alpha^{4^2}
            for (int i = 0; i <= (m2 - 3) / 2; ++i) {
                u0 ^= p;
                for (int s = 0; s < 4; ++s) p = ctx.sqr(p);  // advance by 4^2
            }
            if ((ctx.sqr(ctx.sqr(u0)) ^ u0) != c) throw std::logic_error("quartic series failed");
#ifndef NDEBUG
            // the GF(4) shift must not change the result
            uint64_t u1 = u0 ^ ctx.gf4_omega();
            assert(ctx.trace_bit_at(ctx.mul(ctx.sqr(u0), u0), m1) ==
                   ctx.trace_bit_at(ctx.mul(ctx.sqr(u1), u1), m1));
#endif
        } else {
            u0 = solve_u4_plus_u(ctx, c, m1);
        }
        uint64_t u03 = ctx.mul(ctx.sqr(u0), u0);
        // the parity sign matches the C(a, 0) pattern; for odd m2 it is +1
        int64_t parity = (m2 % 2 == 1) ? 1 : -1;
        return parity * (static_cast<int64_t>(sign_of_bit(ctx.trace_bit_at(u03, m1))) << (m2 + 1));
    }

    // a is not a cube: u0 is the unique solution of u^4 + u/a = 1.
    uint64_t chi_a = cubic_char(ctx, a, m1).embed(ctx);
    uint64_t u0 = 0;
    for (int i = 0; i < m2; ++i) {
        uint64_t p4i = 1ull << (2 * i);  // 4^i
        u0 ^= ctx.pow(a, p4i + (p4i - 1) / 3);  // integral exponent, 3 | 4^i - 1
    }
    u0 = ctx.mul(chi_a, u0);
    assert((ctx.sqr(ctx.sqr(u0)) ^ ctx.mul(u0, ctx.inv(a))) == 1);
    uint64_t au03 = ctx.mul(a, ctx.mul(ctx.sqr(u0), u0));
    int64_t parity = (m2 % 2 == 1) ? -1 : 1;
    return parity * (static_cast<int64_t>(sign_of_bit(ctx.trace_bit_at(au03, m1))) << m2);
}

bool cubic_sum_aa_odd_is_zero(const FieldContext& ctx, uint64_t a, int m1) {
    if (a == 0) throw std::invalid_argument("diagonal cubic sum needs a != 0");
    if (m1 % 2 != 1) throw std::invalid_argument("this criterion needs m1 odd");
    require_subfield(ctx, a, m1, "cubic sum coefficient");
    // cubing is a bijection here, so the cube root is a power of a
    uint64_t n = (1ull << m1) - 1;
    uint64_t alpha = ctx.pow(a, mod_inverse(3, n));
    return ctx.trace_bit_at(alpha, m1) == 0;
}

int64_t cubic_sum_a0_closed(const FieldContext& ctx, uint64_t a, int m1) {
    if (a == 0) throw std::invalid_argument("cubic sum closed form needs a != 0");
    if (m1 % 2 != 0) throw std::invalid_argument("this closed form needs m1 even");
    require_subfield(ctx, a, m1, "cubic sum coefficient");
    int m2 = m1 / 2;
    if (cubic_char(ctx, a, m1) == Gf4Element::one())
        return (m2 % 2 == 1 ? 1 : -1) * (int64_t{1} << (m2 + 1));
    return (m2 % 2 == 0 ? 1 : -1) * (int64_t{1} << m2);
}

namespace {

// Shared loop for the coset-restricted sums: the coset of gamma under the
// cubic character is { g^j : j = r (mod 3) } for the matching residue r.
template <typename Term>
int64_t coset_sum(const FieldContext& ctx, Gf4Element gamma, int m1, Term term) {
    if (gamma.is_zero()) throw std::invalid_argument("coset label must be nonzero");
    uint64_t n = (1ull << m1) - 1;
    if (n % 3 != 0) throw std::invalid_argument("coset sums need 3 | 2^m1 - 1");
    uint64_t g = ctx.subfield_generator(m1);
    Gf4Element zeta = cubic_char(ctx, g, m1);
    int r = -1;
    for (int t = 0; t < 3; ++t) {
        Gf4Element z = Gf4Element::one();
        for (int s = 0; s < t; ++s) z = z * zeta;
        if (z == gamma) r = t;
    }
    if (r < 0) throw std::logic_error("coset residue not found");
    uint64_t ginv = ctx.inv(g);
    int64_t sum = 0;
    uint64_t x = 1, xinv = 1;
    for (uint64_t j = 0; j < n; ++j) {
        if (j % 3 == static_cast<uint64_t>(r)) sum += term(x, xinv);
        x = ctx.mul(x, g);
        xinv = ctx.mul(xinv, ginv);
    }
    return sum;
}

}  // namespace

int64_t coset_cubic_direct(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1) {
    require_subfield(ctx, a, m1, "coset sum coefficient");
    return coset_sum(ctx, gamma, m1, [&](uint64_t x, uint64_t) {
        return sign_of_bit(ctx.trace_between(ctx.mul(a, x), m1, 1));
    });
}

int64_t coset_cubic_closed(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1) {
    if (a == 0 || gamma.is_zero()) throw std::invalid_argument("need a != 0 and gamma != 0");
    if (m1 % 2 != 0 || (m1 / 2) % 2 != 1)
        throw std::invalid_argument("coset closed form needs m1 = 2*m2 with m2 odd");
    require_subfield(ctx, a, m1, "coset sum coefficient");
    int m2 = m1 / 2;
    Gf4Element alpha = cubic_char(ctx, a, m1);
    if (gamma == alpha.inverse()) return ((int64_t{1} << (m2 + 1)) - 1) / 3;
    return (-(int64_t{1} << m2) - 1) / 3;
}

int64_t coset_kloosterman_direct(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1) {
    require_subfield(ctx, a, m1, "coset sum coefficient");
    return coset_sum(ctx, gamma, m1, [&](uint64_t x, uint64_t xinv) {
        return sign_of_bit(ctx.trace_between(ctx.mul(a, x) ^ xinv, m1, 1));
    });
}

int64_t coset_kloosterman_closed(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1) {
    if (a == 0 || gamma.is_zero()) throw std::invalid_argument("need a != 0 and gamma != 0");
    if (m1 % 2 != 0 || (m1 / 2) % 2 != 1)
        throw std::invalid_argument("coset closed form needs m1 = 2*m2 with m2 odd");
    require_subfield(ctx, a, m1, "coset sum coefficient");
    int64_t c = cubic_sum_aa_closed(ctx, a, m1);
    int64_t k = kloosterman(ctx, a, m1);
    Gf4Element alpha = cubic_char(ctx, a, m1);
    int64_t num = (gamma == alpha) ? 2 * c + k - 1 : -c + k - 1;
    if (num % 3 != 0) throw std::logic_error("coset Kloosterman numerator not divisible by 3");
    return num / 3;
}

TowerSumIdentity tower_sum_identity(int64_t m_num, int64_t m_den, int k) {
    if (m_den <= 0 || m_num <= 0) throw std::invalid_argument("m must be a positive fraction");
    int64_t g = std::gcd(m_num, m_den);
    m_num /= g;
    m_den /= g;
    if (m_den != 1)
        throw std::invalid_argument("the defining sum reaches exponent m itself, so m must be integral");
    if (k < 3 || k > 6) throw std::invalid_argument("k must be in [3, 6]");
    int64_t m = m_num;
    int64_t top = 2 * ((int64_t{1} << (k - 2)) - 1) * m;
    if (top > 126) throw std::invalid_argument("identity exceeds 128-bit range for these parameters");

    auto pw = [](int64_t e) { return static_cast<unsigned __int128>(1) << e; };
    unsigned __int128 lhs = 0;
    for (int i = 2; i <= k - 1; ++i) {
        unsigned __int128 prod = 1;
        for (int j = 2; j <= i - 1; ++j) prod *= pw((int64_t{1} << (k - j)) * m);
        for (int j = i + 1; j <= k; ++j) prod *= pw((int64_t{1} << (k - j)) * m) + 1;
        lhs += prod;
    }
    unsigned __int128 numer = pw(top) - 1;
    unsigned __int128 denom = pw(m) - 1;
    if (numer % denom != 0) throw std::logic_error("tower identity denominator does not divide");
    unsigned __int128 rhs = numer / denom;
    if (lhs != rhs) throw std::logic_error("tower identity sides disagree");
    return {lhs, rhs};
}

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

}  // namespace bentforge
