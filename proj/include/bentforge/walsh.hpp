#ifndef BENTFORGE_WALSH_HPP_
#define BENTFORGE_WALSH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bentforge/field.hpp"
#include "bentforge/gf4.hpp"
#include "bentforge/polar.hpp"

namespace bentforge {

/* The binomial Boolean function f(x) = tr(a x^{2^m1 - 1}) + tr_2(b chi(x))
   over GF(2^m0), where chi is the cubic character of the full field and
   b lies in GF(4)^*. The closed forms require a in the half-degree subfield
   GF(2^m1)^*; reduce() rewrites any a into that form while tracking how the
   Walsh spectrum moves. */
class BinomialFunction {
public:
    BinomialFunction(const FieldContext& ctx, uint64_t a, Gf4Element b);

    const FieldContext& context() const { return *ctx_; }
    uint64_t a() const { return a_; }
    Gf4Element b() const { return b_; }
    bool is_reduced() const;

    // Function value at x as a bit (f(0) = 0).
    int eval(uint64_t x) const;
    // Same value through the polar decomposition; the two paths are asserted
    // equal in debug builds.
    int eval_polar(uint64_t x) const;

    // The Dillon part tr(a u^{-2}) on the unit circle U_1, as a bit.
    int dillon_bit_on_unit(uint64_t u1) const;

    // Truth table indexed by element bitmask.
    std::vector<uint8_t> truth_table() const;

private:
    const FieldContext* ctx_;
    uint64_t a_;
    Gf4Element b_;
};

struct CoefficientReduction {
    BinomialFunction reduced;  // a in GF(2^m1)^*, b multiplied by beta
    uint64_t alpha;            // unit-circle part of the original a
    uint64_t alpha_sqrt;       // its square root in U_1
    Gf4Element beta;
    // W_{f}(w) for the original f equals W_{reduced}(alpha_sqrt * w).
};
CoefficientReduction reduce_coefficient(const BinomialFunction& f);

/* Integer Walsh spectrum in element-bitmask order. */
class WalshSpectrum {
public:
    WalshSpectrum(const FieldContext& ctx, std::vector<int32_t> values);

    const std::vector<int32_t>& values() const { return values_; }
    int32_t at(uint64_t omega) const { return values_[omega]; }
    // sum of squares, which Parseval pins to 2^{2 m0}
    unsigned __int128 energy() const;
    bool parseval_ok() const;
    bool is_bent() const;  // every |W| equal to 2^{m0/2}

    // Raw little-endian int32 dump plus a JSON sidecar with the context and
    // a Parseval checksum.
    void export_binary(const std::string& path, const std::string& sidecar_json_extra) const;

private:
    const FieldContext* ctx_;
    std::vector<int32_t> values_;
};

// Single-point Walsh transform by direct enumeration, O(2^m0).
int64_t walsh_at(const BinomialFunction& f, uint64_t omega);

// Fast Walsh-Hadamard transform of an arbitrary truth table indexed by
// element bitmask; the result is reindexed so position omega carries
// sum_x (-1)^{f(x) + tr(omega x)}.
WalshSpectrum walsh_transform_table(const FieldContext& ctx, const std::vector<uint8_t>& table);

// Full spectrum via the fast transform over the truth table, O(m0 2^m0);
// limited to m0 <= 28.
WalshSpectrum walsh_spectrum(const BinomialFunction& f);

// Walsh value by enumerating only the unit group U instead of the whole
// field (the omega = 0 / omega != 0 split). Needs a reduced.
int64_t walsh_via_units(const BinomialFunction& f, uint64_t omega);

// Closed form for nu = 1 (half-degree subfield of odd degree), any omega.
int64_t walsh_closed_odd(const BinomialFunction& f, uint64_t omega);

// Closed form for the sum of (-1)^{f(u)} over the unit group U, nu > 1.
int64_t unit_sum_closed(const BinomialFunction& f);
// Direct enumeration twin of the above.
int64_t unit_sum_direct(const BinomialFunction& f);

// Closed form for W(0) when nu > 1; independent of b.
int64_t walsh_zero_closed(const BinomialFunction& f);

/* The residual Gauss-type sum left over in the Walsh expansion for nu > 1:
   the sum of (-1)^{tr(a u_1^{-2})} over units u whose product with omega has
   nonzero trace at level nu-1, zero trace at level nu, and whose last polar
   component satisfies b chi(u_nu) = 1. Direct enumeration over U. */
int64_t residual_gauss_sum(const BinomialFunction& f, uint64_t omega);

/* For nu = 2 the trace conditions pin the second unit component, collapsing
   the sum onto the first unit circle: it becomes a sum over v in U_1 \ {1}
   filtered by the cubic character of v + v^{-1}, and v and v^{-1} share one
   condition check. Production path for sweeps; must agree with
   residual_gauss_sum exactly. */
int64_t residual_gauss_sum_circle(const BinomialFunction& f, uint64_t omega);

// Reconstructs W(omega), omega != 0, from the residual sum (nu > 1).
int64_t walsh_from_gauss_sum(const BinomialFunction& f, uint64_t omega, int64_t gauss_sum,
                             int64_t kloo);

// Closed form of the residual sum for nu = 2 and omega in GF(2^m1)^*.
int64_t residual_gauss_subfield_closed(const BinomialFunction& f, uint64_t omega);

/* Consistency check of the conjectured closed form for the residual sum at
   nu = 2 under the hypothesis K = 1 (mod 3): the affine equation in the
   unknown bit h must have exactly one solution. */
struct ConjectureFit {
    bool consistent;
    int h_bit;
    int dillon_bit;      // f_a(w_1^{-1}) as an integer
    Gf4Element gamma;    // b * chi(w_2)
    int64_t gauss_sum;   // measured residual sum
    int64_t walsh_implied;
};
// The residual sum is measured with residual_gauss_sum unless the caller
// already has it (sweeps share one evaluation across equivalent omega).
ConjectureFit conjecture_check(const BinomialFunction& f, uint64_t omega, int64_t kloo,
                               std::optional<int64_t> precomputed_gauss = std::nullopt);

/* Per-(a, b) counting relation implied by Parseval under the conjecture:
   the number of w_1 in U_1 with vanishing certified bit, split by gamma. */
struct ParsevalCounts {
    int64_t count_gamma_one = 0;
    int64_t expected_gamma_one = 0;
    std::vector<int64_t> count_gamma_other;     // per non-one gamma
    int64_t expected_gamma_other = 0;
    int64_t char_sum_over_nonzero = 0;          // sum of (-1)^{bit} over omega != 0
    int64_t walsh_zero_minus_one = 0;
    bool divisibility_ok = true;                // 6 | 5(K-4) held
    bool all_consistent = true;
    bool ok = false;
};
// Aggregates the conjectured fits over one representative omega per
// (w_1, gamma) class and checks the counting relation implied by Parseval.
ParsevalCounts parseval_count_check(const BinomialFunction& f, int64_t kloo);

struct BentCertificate {
    bool bent_by_kloosterman;  // K == 4
    std::optional<bool> bent_by_spectrum;
    int64_t kloosterman_value;
    bool proved;      // true when nu = 1, where the criterion is a theorem
    bool agreement;   // false would contradict the bentness conjecture
};
// For nu = 1 applies the proved criterion; for nu > 1 computes both the
// spectrum verdict (when m0 <= 28 or check_spectrum set) and the K == 4
// criterion and reports both. Disagreement at nu >= 2 is surfaced, never
// swallowed.
BentCertificate bent_certify(const BinomialFunction& f, bool check_spectrum = true);

}  // namespace bentforge

#endif  // BENTFORGE_WALSH_HPP_
