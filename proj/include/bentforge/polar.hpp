#ifndef BENTFORGE_POLAR_HPP_
#define BENTFORGE_POLAR_HPP_

#include <cstdint>
#include <vector>

#include "bentforge/field.hpp"
#include "bentforge/gf4.hpp"

namespace bentforge {

/* The polar decomposition x = u_1 ... u_nu * y of a nonzero element:
   u_i lies in the unit subgroup U_i of (2^{m_i}+1)-th roots of unity inside
   GF(2^{m_{i-1}})^*, and y in GF(2^{m_nu})^*. */
struct PolarForm {
    std::vector<uint64_t> units;  // units[i-1] = u_i
    uint64_t odd_part = 1;        // y

    uint64_t unit(int i) const { return units.at(static_cast<size_t>(i) - 1); }
    uint64_t reconstruct(const FieldContext& ctx) const {
        uint64_t x = odd_part;
        for (uint64_t u : units) x = ctx.mul(x, u);
        return x;
    }
};

// Unique polar decomposition of x != 0. Splits level by level with CRT
// exponents, no discrete logs involved.
PolarForm polar_split(const FieldContext& ctx, uint64_t x);

// All 2^{m_i}+1 elements of U_i, in increasing powers of the canonical
// subgroup generator.
std::vector<uint64_t> unit_group(const FieldContext& ctx, int level);

// The Hilbert 90 fold x -> x + x^{-1}; sends both 0 and 1 to 0, and is
// 2-to-1 from U_i \ {1} onto the trace-one set of GF(2^{m_i}).
uint64_t ht90_image(const FieldContext& ctx, uint64_t x);

// Third Dickson polynomial x^3 + x.
uint64_t dickson3(const FieldContext& ctx, uint64_t x);

// (-1)^{tr(x)} for the absolute trace of the full field.
int additive_char(const FieldContext& ctx, uint64_t x);

// Cubic multiplicative character of GF(2^level): x^{(2^level-1)/3}, valued in
// GF(4)^*. Needs level even and x a nonzero element of that subfield.
Gf4Element cubic_char(const FieldContext& ctx, uint64_t x, int level);

// The set {x in GF(2^level) : tr(x^{-1}) = j}, with 0^{-1} = 0. Materialized
// only for level <= 24.
std::vector<uint64_t> trace_set(const FieldContext& ctx, int level, int j);

}  // namespace bentforge

#endif  // BENTFORGE_POLAR_HPP_
