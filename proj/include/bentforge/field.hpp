#ifndef BENTFORGE_FIELD_HPP_
#define BENTFORGE_FIELD_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bentforge {

struct PrimePower {
    uint64_t prime;
    int exponent;
};

/* Byte-chunked GF(2)-linear map on bitmasks. Used for Frobenius powers,
   relative traces and the trace-form pairing; applying one costs a handful
   of table lookups instead of a squaring chain. */
class LinearMap {
public:
    LinearMap() : nbytes_(0) {}

    // images[i] must be the image of the i-th basis bit.
    static LinearMap from_images(const std::vector<uint64_t>& images);

    uint64_t operator()(uint64_t x) const {
        uint64_t r = 0;
        for (int j = 0; j < nbytes_; ++j)
            r ^= tbl_[j][(x >> (8 * j)) & 0xff];
        return r;
    }

private:
    std::array<std::array<uint64_t, 256>, 8> tbl_{};
    int nbytes_;
};

/* One binary field GF(2^m0) with even extension degree 4 <= m0 <= 40,
   its subfield tower m0 > m0/2 > ... > m_nu (m_nu odd) and the machinery
   shared by everything built on top: carry-less multiplication with fixed
   reduction, Frobenius/trace tables, a primitive element, the canonical
   GF(4) subfield and generators of the norm-one unit subgroups U_i.

   Deterministic across runs: the modulus is the smallest irreducible
   polynomial of degree m0 (by coefficient bitmask) and the generator is the
   smallest primitive element. Immutable after construction and safe to share
   between threads. */
class FieldContext {
public:
    explicit FieldContext(int m0, bool with_log_table = false);

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;

    int degree() const { return m0_; }
    int nu() const { return nu_; }
    // m_i = m0 / 2^i for 0 <= i <= nu.
    int tower_degree(int i) const { return tower_.at(i); }
    const std::vector<int>& tower() const { return tower_; }
    uint64_t modulus() const { return modulus_; }
    uint64_t generator() const { return generator_; }
    uint64_t mask() const { return mask_; }
    uint64_t group_order() const { return mask_; }  // 2^m0 - 1
    const std::vector<PrimePower>& order_factors() const { return order_factors_; }
    // |U_i| = 2^{m_i} + 1 for 1 <= i <= nu.
    uint64_t subgroup_order(int i) const;

    // ---- arithmetic on raw bitmasks ----
    static uint64_t add(uint64_t a, uint64_t b) { return a ^ b; }
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t sqr(uint64_t a) const { return mul(a, a); }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const;  // inv(0) = 0 by convention

    // x^{2^d}; d must divide m0.
    uint64_t frobenius_power(uint64_t x, int d) const;
    bool in_subfield(uint64_t x, int d) const;

    // Trace from GF(2^from) down to GF(2^to); x must lie in GF(2^from).
    uint64_t trace_between(uint64_t x, int from, int to) const;
    // Trace from the full field down to GF(2^m).
    uint64_t rel_trace(uint64_t x, int m) const { return trace_between(x, m0_, m); }
    // Absolute trace of the full field, as a bit.
    int abs_trace_bit(uint64_t x) const { return static_cast<int>(rel_trace(x, 1)); }
    // Absolute trace of GF(2^level), for x in that subfield.
    int trace_bit_at(uint64_t x, int level) const {
        return static_cast<int>(trace_between(x, level, 1));
    }

    // Index permutation pairing the Walsh spectrum with omega bitmasks:
    // bit j of dual_index(w) is tr(w * t^j) for the polynomial basis {t^j}.
    uint64_t dual_index(uint64_t w) const { return dual_map_(w); }

    // ---- canonical GF(4) subfield ----
    // omega = g^{(2^m0-1)/3}; omega^2 + omega + 1 = 0.
    uint64_t gf4_omega() const { return gf4_omega_; }
    uint64_t gf4_omega2() const { return gf4_omega2_; }

    // ---- multiplicative structure ----
    // Generator of U_i, the subgroup of (2^{m_i}+1)-th roots of unity
    // inside GF(2^{m_{i-1}})^*; 1 <= i <= nu.
    uint64_t unit_generator(int i) const;
    // Generator of GF(2^d)^* for a divisor d of m0.
    uint64_t subfield_generator(int d) const;
    const std::vector<int>& divisors() const { return divisors_; }

    // Discrete log of x in GF(2^d)^* relative to subfield_generator(d).
    // Builds a sorted lookup table for the subfield on first use (d <= 24).
    uint64_t subfield_log(uint64_t x, int d) const;
    // A cube root of x in GF(2^d)^*, or 0 if x is not a cube there (3 | 2^d-1).
    uint64_t cube_root(uint64_t x, int d) const;

    bool has_log_table() const { return !log_.empty(); }

    std::string to_json() const;  // {m0, modulus_hex, generator_hex}

private:
    void build_reduction_tables();
    void build_maps();
    void ensure_subfield_table(int d) const;

    int m0_, nu_;
    std::vector<int> tower_;
    std::vector<int> divisors_;
    uint64_t modulus_ = 0, mask_ = 0, generator_ = 0;
    std::vector<PrimePower> order_factors_;
    std::vector<uint64_t> unit_generators_;      // index i-1 for U_i
    std::vector<std::pair<int, uint64_t>> subfield_generators_;
    uint64_t gf4_omega_ = 0, gf4_omega2_ = 0;

    int fold_bytes_ = 0;
    std::array<std::array<uint64_t, 256>, 5> fold_{};

    std::vector<std::pair<int, LinearMap>> frob_maps_;  // d -> x^{2^d}
    std::vector<std::pair<std::pair<int, int>, LinearMap>> trace_maps_;
    LinearMap dual_map_;

    // optional accelerations
    std::vector<uint32_t> log_;      // ambient log table (m0 <= 24, opt-in)
    std::vector<uint64_t> antilog_;
    struct SubfieldTable {
        std::vector<std::pair<uint64_t, uint32_t>> sorted_logs;
        std::once_flag built;
    };
    mutable std::array<SubfieldTable, 41> subfield_tables_;
};

/* A GF(2^m0) element: a coefficient bitmask bound to its context.
   Plain data, freely copyable; all operations require matching contexts. */
class FieldElement {
public:
    FieldElement() : bits_(0), ctx_(nullptr) {}
    FieldElement(const FieldContext& ctx, uint64_t bits) : bits_(bits), ctx_(&ctx) {
        if (bits > ctx.mask())
            throw std::invalid_argument("element bitmask out of range");
    }

    uint64_t bits() const { return bits_; }
    const FieldContext& context() const {
        if (!ctx_) throw std::logic_error("element has no context");
        return *ctx_;
    }
    bool is_zero() const { return bits_ == 0; }

    FieldElement operator+(const FieldElement& o) const {
        return FieldElement(same_context(o), bits_ ^ o.bits_);
    }
    FieldElement operator*(const FieldElement& o) const {
        const FieldContext& c = same_context(o);
        return FieldElement(c, c.mul(bits_, o.bits_));
    }
    FieldElement squared() const { return FieldElement(context(), context().sqr(bits_)); }
    FieldElement inverse() const { return FieldElement(context(), context().inv(bits_)); }
    FieldElement pow(uint64_t e) const { return FieldElement(context(), context().pow(bits_, e)); }

    bool operator==(const FieldElement& o) const { return bits_ == o.bits_ && ctx_ == o.ctx_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    const FieldContext& same_context(const FieldElement& o) const {
        if (ctx_ == nullptr || ctx_ != o.ctx_)
            throw std::invalid_argument("field elements from different contexts");
        return *ctx_;
    }
    uint64_t bits_;
    const FieldContext* ctx_;
};

// Spec'd free-function spellings over FieldElement.
inline FieldElement rel_trace(const FieldElement& x, int m) {
    return FieldElement(x.context(), x.context().rel_trace(x.bits(), m));
}
inline int abs_trace_bit(const FieldElement& x) { return x.context().abs_trace_bit(x.bits()); }
inline bool is_in_subfield(const FieldElement& x, int d) {
    return x.context().in_subfield(x.bits(), d);
}

// Parses "0x1a3", a decimal bitmask, "g", "g^17" (or "z^17"). Generator powers
// refer to the ambient generator when level == m0 and to
// subfield_generator(level) otherwise; bitmasks are checked to lie in the
// requested subfield.
uint64_t parse_element(const FieldContext& ctx, const std::string& text, int level);
std::string element_to_hex(uint64_t bits);

// Embedded factorizations of 2^m - 1 for even m in [4, 40].
const std::vector<PrimePower>& order_factorization(int m);

// Inverse of a modulo n for coprime a, n.
uint64_t mod_inverse(uint64_t a, uint64_t n);

}  // namespace bentforge

#endif  // BENTFORGE_FIELD_HPP_
