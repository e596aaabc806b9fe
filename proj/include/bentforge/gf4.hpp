#ifndef BENTFORGE_GF4_HPP_
#define BENTFORGE_GF4_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bentforge/field.hpp"

namespace bentforge {

/* An element of the canonical GF(4) subfield, {0, 1, w, w^2} with
   w^2 + w + 1 = 0. The ambient embedding fixes w as g^{(2^m0-1)/3}. Stored as
   0 for zero and 1 + (exponent of w) otherwise, so multiplication is an
   exponent sum mod 3. */
class Gf4Element {
public:
    constexpr Gf4Element() : code_(0) {}

    static constexpr Gf4Element zero() { return Gf4Element(0); }
    static constexpr Gf4Element one() { return Gf4Element(1); }
    static constexpr Gf4Element omega() { return Gf4Element(2); }
    static constexpr Gf4Element omega2() { return Gf4Element(3); }
    // w^k for k mod 3
    static Gf4Element omega_pow(uint64_t k) { return Gf4Element(static_cast<int>(k % 3) + 1); }

    bool is_zero() const { return code_ == 0; }

    Gf4Element operator*(Gf4Element o) const {
        if (is_zero() || o.is_zero()) return zero();
        return Gf4Element(((code_ - 1 + o.code_ - 1) % 3) + 1);
    }
    Gf4Element inverse() const {
        if (is_zero()) return zero();
        return Gf4Element((3 - (code_ - 1)) % 3 + 1);
    }
    Gf4Element squared() const { return *this * *this; }

    bool operator==(Gf4Element o) const { return code_ == o.code_; }
    bool operator!=(Gf4Element o) const { return code_ != o.code_; }

    // Trace from GF(4) to GF(2): 0 on {0,1}, 1 on {w, w^2}.
    int trace_bit() const { return code_ >= 2 ? 1 : 0; }

    uint64_t embed(const FieldContext& ctx) const {
        switch (code_) {
            case 0: return 0;
            case 1: return 1;
            case 2: return ctx.gf4_omega();
            default: return ctx.gf4_omega2();
        }
    }

    static Gf4Element classify(const FieldContext& ctx, uint64_t bits) {
        if (bits == 0) return zero();
        if (bits == 1) return one();
        if (bits == ctx.gf4_omega()) return omega();
        if (bits == ctx.gf4_omega2()) return omega2();
        throw std::invalid_argument("element is not in the GF(4) subfield");
    }

    std::string to_string() const {
        static const char* names[] = {"0", "1", "w", "w2"};
        return names[code_];
    }

    static Gf4Element parse(const std::string& s) {
        if (s == "0") return zero();
        if (s == "1") return one();
        if (s == "w" || s == "w^1") return omega();
        if (s == "w2" || s == "w^2") return omega2();
        throw std::invalid_argument("bad GF(4) literal (want 0, 1, w or w2): " + s);
    }

private:
    explicit constexpr Gf4Element(int code) : code_(code) {}
    int code_;
};

}  // namespace bentforge

#endif  // BENTFORGE_GF4_HPP_
