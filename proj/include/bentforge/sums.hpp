#ifndef BENTFORGE_SUMS_HPP_
#define BENTFORGE_SUMS_HPP_

#include <cstdint>
#include <string>

#include "bentforge/field.hpp"
#include "bentforge/gf4.hpp"

namespace bentforge {

/* Exponential sums over a subfield GF(2^m1) of the context. Every closed
   form here has a direct-enumeration twin; the closed forms are the
   production path, the enumerations are the oracles. Arguments must lie in
   the indicated subfield. */

// Kloosterman sum: sum over x in GF(2^m1) of (-1)^{tr(a x + x^{-1})},
// with 0^{-1} = 0. Direct enumeration, O(2^m1).
int64_t kloosterman(const FieldContext& ctx, uint64_t a, int m1);

// K mod 3 as a residue in {0,1,2}; the closed forms branch on it.
int kloosterman_mod3(const FieldContext& ctx, uint64_t a, int m1);

// Cubic sum: sum over x in GF(2^m1) of (-1)^{tr(a x^3 + b x)}.
int64_t cubic_sum(const FieldContext& ctx, uint64_t a, uint64_t b, int m1);

// Carlitz's evaluation of the diagonal cubic sum C(a, a) for even m1.
int64_t cubic_sum_aa_closed(const FieldContext& ctx, uint64_t a, int m1);

// Zero criterion for C(a, a) with m1 odd: a = alpha^3 has a unique cube
// root and the sum vanishes exactly when tr(alpha) = 0.
bool cubic_sum_aa_odd_is_zero(const FieldContext& ctx, uint64_t a, int m1);

// Carlitz's evaluation of C(a, 0) for even m1 = 2*m2:
// (-1)^{m2+1} 2^{m2+1} on cubes, (-1)^{m2} 2^{m2} otherwise.
int64_t cubic_sum_a0_closed(const FieldContext& ctx, uint64_t a, int m1);

// Cubic-character coset sums over GF(2^m1)^* (m1 = 2*m2 with m2 odd):
// sum of (-1)^{tr(a x)} over the coset {x : chi(x) = gamma}.
int64_t coset_cubic_direct(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1);
int64_t coset_cubic_closed(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1);

// Same coset restriction of the Kloosterman summand (-1)^{tr(a x + x^{-1})}.
int64_t coset_kloosterman_direct(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1);
int64_t coset_kloosterman_closed(const FieldContext& ctx, uint64_t a, Gf4Element gamma, int m1);

/* The telescoping identity used to collapse the subfield tower: the double
   product-sum over intermediate levels equals (2^{2(2^{k-2}-1)m}-1)/(2^m-1).
   Both sides are evaluated exactly and compared; a mismatch throws. m is
   accepted as a reduced fraction but must be integral to evaluate. */
struct TowerSumIdentity {
    unsigned __int128 lhs;
    unsigned __int128 rhs;
    unsigned __int128 value() const { return lhs; }
};
TowerSumIdentity tower_sum_identity(int64_t m_num, int64_t m_den, int k);

std::string u128_to_string(unsigned __int128 v);

}  // namespace bentforge

#endif  // BENTFORGE_SUMS_HPP_
