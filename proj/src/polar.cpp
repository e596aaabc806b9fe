#include "bentforge/polar.hpp"

#include <stdexcept>

namespace bentforge {

PolarForm polar_split(const FieldContext& ctx, uint64_t x) {
    if (x == 0) throw std::invalid_argument("polar decomposition of zero");
    PolarForm pf;
    for (int i = 1; i <= ctx.nu(); ++i) {
        // Split GF(2^{m_{i-1}})^* as U_i x GF(2^{m_i})^*. With q = 2^{m_i},
        // y = x^{s(q+1)} for s = (q+1)^{-1} mod (q-1) lands in the subfield
        // and u = x/y on the unit circle.
        uint64_t q = 1ull << ctx.tower_degree(i);
        uint64_t y;
        if (q == 2) {
            y = 1;  // GF(2)^* is trivial
        } else {
            uint64_t s = mod_inverse(q + 1, q - 1);
            y = ctx.pow(x, s * (q + 1));
        }
        pf.units.push_back(ctx.mul(x, ctx.inv(y)));
        x = y;
    }
    pf.odd_part = x;
    return pf;
}

std::vector<uint64_t> unit_group(const FieldContext& ctx, int level) {
    uint64_t order = ctx.subgroup_order(level);
    uint64_t g = ctx.unit_generator(level);
    std::vector<uint64_t> elems;
    elems.reserve(order);
    uint64_t x = 1;
    for (uint64_t k = 0; k < order; ++k) {
        elems.push_back(x);
        x = ctx.mul(x, g);
    }
    return elems;
}

uint64_t ht90_image(const FieldContext& ctx, uint64_t x) {
    return x ^ ctx.inv(x);
}

uint64_t dickson3(const FieldContext& ctx, uint64_t x) {
    return ctx.mul(ctx.sqr(x), x) ^ x;
}

int additive_char(const FieldContext& ctx, uint64_t x) {
    return ctx.abs_trace_bit(x) ? -1 : 1;
}

Gf4Element cubic_char(const FieldContext& ctx, uint64_t x, int level) {
    if (x == 0) throw std::invalid_argument("cubic character of zero");
    if (level % 2 != 0) throw std::invalid_argument("cubic character needs an even level");
    uint64_t n = (1ull << level) - 1;
    return Gf4Element::classify(ctx, ctx.pow(x, n / 3));
}

std::vector<uint64_t> trace_set(const FieldContext& ctx, int level, int j) {
    if (level > 24) throw std::invalid_argument("trace sets materialized only up to degree 24");
    if (j != 0 && j != 1) throw std::invalid_argument("trace value must be a bit");
    std::vector<uint64_t> members;
    if (j == 0) members.push_back(0);  // 0^{-1} = 0 has trace 0
    uint64_t n = (1ull << level) - 1;
    uint64_t g = ctx.subfield_generator(level);
    uint64_t ginv = ctx.inv(g);
    uint64_t x = 1, xinv = 1;
    for (uint64_t k = 0; k < n; ++k) {
        if (ctx.trace_bit_at(xinv, level) == j) members.push_back(x);
        x = ctx.mul(x, g);
        xinv = ctx.mul(xinv, ginv);
    }
    return members;
}

}  // namespace bentforge
