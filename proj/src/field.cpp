#include "bentforge/field.hpp"

#include <algorithm>
#include <sstream>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace bentforge {

namespace {

inline unsigned __int128 clmul64(uint64_t a, uint64_t b) {
#if defined(__PCLMUL__)
    __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
    __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
    __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
    uint64_t lo = static_cast<uint64_t>(_mm_cvtsi128_si64(p));
    uint64_t hi = static_cast<uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)));
    return (static_cast<unsigned __int128>(hi) << 64) | lo;
#else
    unsigned __int128 acc = 0;
    unsigned __int128 aa = a;
    while (b) {
        acc ^= aa << (63 - __builtin_clzll(b));
        b &= b - 1;
    }
    return acc;
#endif
}

int poly_degree(uint64_t p) { return p ? 63 - __builtin_clzll(p) : -1; }

// Remainder of a 128-bit polynomial modulo f; used before the fold tables exist.
uint64_t slow_mod(unsigned __int128 p, uint64_t f) {
    int df = poly_degree(f);
    while (true) {
        int dp;
        if (uint64_t hi = static_cast<uint64_t>(p >> 64); hi != 0)
            dp = 64 + poly_degree(hi);
        else if (uint64_t lo = static_cast<uint64_t>(p); lo != 0)
            dp = poly_degree(lo);
        else
            return 0;
        if (dp < df) return static_cast<uint64_t>(p);
        p ^= static_cast<unsigned __int128>(f) << (dp - df);
    }
}

uint64_t slow_mulmod(uint64_t a, uint64_t b, uint64_t f) {
    return slow_mod(clmul64(a, b), f);
}

std::vector<int> prime_divisors(int n) {
    std::vector<int> ps;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

// Rabin test: f of degree d is irreducible iff x^{2^d} = x (mod f) and
// x^{2^{d/p}} != x (mod f) for every prime p dividing d.
bool is_irreducible(uint64_t f, int d) {
    if ((f & 1) == 0) return false;
    auto frob_iter = [&](int k) {
        uint64_t x = 2;  // the polynomial t
        for (int i = 0; i < k; ++i) x = slow_mulmod(x, x, f);
        return x;
    };
    if (frob_iter(d) != 2) return false;
    for (int p : prime_divisors(d))
        if (frob_iter(d / p) == 2) return false;
    return true;
}

}  // namespace

LinearMap LinearMap::from_images(const std::vector<uint64_t>& images) {
    LinearMap m;
    m.nbytes_ = static_cast<int>((images.size() + 7) / 8);
    for (int j = 0; j < m.nbytes_; ++j) {
        for (int v = 1; v < 256; ++v) {
            uint64_t acc = 0;
            for (int bit = 0; bit < 8; ++bit) {
                size_t idx = static_cast<size_t>(8 * j + bit);
                if ((v >> bit & 1) && idx < images.size()) acc ^= images[idx];
            }
            m.tbl_[j][v] = acc;
        }
    }
    return m;
}

const std::vector<PrimePower>& order_factorization(int m) {
    static const std::vector<std::pair<int, std::vector<PrimePower>>> table = {
        {4, {{3ull, 1}, {5ull, 1}}},
        {6, {{3ull, 2}, {7ull, 1}}},
        {8, {{3ull, 1}, {5ull, 1}, {17ull, 1}}},
        {10, {{3ull, 1}, {11ull, 1}, {31ull, 1}}},
        {12, {{3ull, 2}, {5ull, 1}, {7ull, 1}, {13ull, 1}}},
        {14, {{3ull, 1}, {43ull, 1}, {127ull, 1}}},
        {16, {{3ull, 1}, {5ull, 1}, {17ull, 1}, {257ull, 1}}},
        {18, {{3ull, 3}, {7ull, 1}, {19ull, 1}, {73ull, 1}}},
        {20, {{3ull, 1}, {5ull, 2}, {11ull, 1}, {31ull, 1}, {41ull, 1}}},
        {22, {{3ull, 1}, {23ull, 1}, {89ull, 1}, {683ull, 1}}},
        {24, {{3ull, 2}, {5ull, 1}, {7ull, 1}, {13ull, 1}, {17ull, 1}, {241ull, 1}}},
        {26, {{3ull, 1}, {2731ull, 1}, {8191ull, 1}}},
        {28, {{3ull, 1}, {5ull, 1}, {29ull, 1}, {43ull, 1}, {113ull, 1}, {127ull, 1}}},
        {30, {{3ull, 2}, {7ull, 1}, {11ull, 1}, {31ull, 1}, {151ull, 1}, {331ull, 1}}},
        {32, {{3ull, 1}, {5ull, 1}, {17ull, 1}, {257ull, 1}, {65537ull, 1}}},
        {34, {{3ull, 1}, {43691ull, 1}, {131071ull, 1}}},
        {36, {{3ull, 3}, {5ull, 1}, {7ull, 1}, {13ull, 1}, {19ull, 1}, {37ull, 1}, {73ull, 1}, {109ull, 1}}},
        {38, {{3ull, 1}, {174763ull, 1}, {524287ull, 1}}},
        {40, {{3ull, 1}, {5ull, 2}, {11ull, 1}, {17ull, 1}, {31ull, 1}, {41ull, 1}, {61681ull, 1}}},
    };
    for (const auto& [deg, factors] : table)
        if (deg == m) return factors;
    throw std::out_of_range("no factorization table entry for this degree");
}

FieldContext::FieldContext(int m0, bool with_log_table) : m0_(m0) {
    if (m0 < 4 || m0 > 40 || m0 % 2 != 0)
        throw std::invalid_argument("extension degree must be even and in [4, 40]");
    mask_ = (1ull << m0) - 1;

    int m = m0;
    tower_.push_back(m);
    while (m % 2 == 0) {
        m /= 2;
        tower_.push_back(m);
    }
    nu_ = static_cast<int>(tower_.size()) - 1;

    for (int d = 1; d <= m0; ++d)
        if (m0 % d == 0) divisors_.push_back(d);

    // Smallest irreducible polynomial of degree m0, by coefficient bitmask.
    for (uint64_t f = (1ull << m0) | 1;; f += 2) {
        if (is_irreducible(f, m0)) {
            modulus_ = f;
            break;
        }
    }
    build_reduction_tables();
    build_maps();

    order_factors_ = order_factorization(m0);

    // Smallest primitive element.
    for (uint64_t v = 2;; ++v) {
        bool primitive = true;
        for (const auto& pp : order_factors_)
            if (pow(v, mask_ / pp.prime) == 1) {
                primitive = false;
                break;
            }
        if (primitive) {
            generator_ = v;
            break;
        }
    }

    gf4_omega_ = pow(generator_, mask_ / 3);
    gf4_omega2_ = sqr(gf4_omega_);

    for (int i = 1; i <= nu_; ++i) {
        uint64_t ord = (1ull << tower_[i]) + 1;
        unit_generators_.push_back(pow(generator_, mask_ / ord));
    }
    for (int d : divisors_)
        subfield_generators_.emplace_back(d, pow(generator_, mask_ / ((1ull << d) - 1)));

    if (with_log_table && m0 <= 24) {
        log_.assign(1ull << m0, 0);
        antilog_.assign(mask_, 0);
        uint64_t x = 1;
        for (uint64_t k = 0; k < mask_; ++k) {
            antilog_[k] = x;
            log_[x] = static_cast<uint32_t>(k);
            x = mul(x, generator_);
        }
    }
}

void FieldContext::build_reduction_tables() {
    // pw[k] = t^{m0+k} mod f, for the fold of product bits above m0-1.
    std::vector<uint64_t> pw(m0_ - 1);
    uint64_t cur = modulus_ & mask_;  // t^m0 mod f
    for (int k = 0; k < m0_ - 1; ++k) {
        pw[k] = cur;
        cur <<= 1;
        if (cur >> m0_ & 1) cur = (cur & mask_) ^ (modulus_ & mask_);
    }
    fold_bytes_ = (m0_ - 1 + 7) / 8;
    for (int j = 0; j < fold_bytes_; ++j)
        for (int v = 1; v < 256; ++v) {
            uint64_t acc = 0;
            for (int bit = 0; bit < 8; ++bit) {
                int k = 8 * j + bit;
                if ((v >> bit & 1) && k < m0_ - 1) acc ^= pw[k];
            }
            fold_[j][v] = acc;
        }
}

uint64_t FieldContext::mul(uint64_t a, uint64_t b) const {
    unsigned __int128 p = clmul64(a, b);
    uint64_t r = static_cast<uint64_t>(p) & mask_;
    uint64_t e = static_cast<uint64_t>(p >> m0_);
    for (int j = 0; e != 0; ++j, e >>= 8)
        r ^= fold_[j][e & 0xff];
    return r;
}

uint64_t FieldContext::pow(uint64_t a, uint64_t e) const {
    if (!log_.empty() && a != 0) {
        unsigned __int128 k = static_cast<unsigned __int128>(log_[a]) * (e % mask_);
        return antilog_[static_cast<uint64_t>(k % mask_)];
    }
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t FieldContext::inv(uint64_t a) const {
    if (a == 0) return 0;
    if (!log_.empty()) return antilog_[(mask_ - log_[a]) % mask_];
    return pow(a, mask_ - 1);  // 2^m0 - 2
}

void FieldContext::build_maps() {
    std::vector<uint64_t> basis(m0_);
    for (int i = 0; i < m0_; ++i) basis[i] = 1ull << i;

    // One squaring step on each basis vector, then compose.
    std::vector<uint64_t> frob1(m0_);
    for (int i = 0; i < m0_; ++i) frob1[i] = slow_mod(clmul64(basis[i], basis[i]), modulus_);
    auto apply_imgs = [&](const std::vector<uint64_t>& imgs, uint64_t x) {
        uint64_t r = 0;
        while (x) {
            r ^= imgs[__builtin_ctzll(x)];
            x &= x - 1;
        }
        return r;
    };
    // images of x -> x^{2^k} for every k up to m0
    std::vector<std::vector<uint64_t>> frob_imgs(m0_ + 1);
    frob_imgs[0] = basis;
    for (int k = 1; k <= m0_; ++k) {
        frob_imgs[k].resize(m0_);
        for (int i = 0; i < m0_; ++i) frob_imgs[k][i] = apply_imgs(frob1, frob_imgs[k - 1][i]);
    }

    for (int d : divisors_) frob_maps_.emplace_back(d, LinearMap::from_images(frob_imgs[d]));

    for (int from : divisors_)
        for (int to : divisors_) {
            if (from % to != 0) continue;
            std::vector<uint64_t> imgs(m0_, 0);
            for (int i = 0; i < m0_; ++i)
                for (int j = 0; j < from / to; ++j) imgs[i] ^= frob_imgs[(to * j) % m0_][i];
            trace_maps_.emplace_back(std::make_pair(from, to), LinearMap::from_images(imgs));
        }

    // dual_index: bit j of the image is tr(w * t^j), so we need the absolute
    // traces of the monomials t^k for k < 2*m0.
    std::vector<uint64_t> tr_monomial(2 * m0_);
    for (int k = 0; k < 2 * m0_; ++k) {
        uint64_t x = slow_mod(static_cast<unsigned __int128>(1) << k, modulus_);
        uint64_t acc = 0;
        for (int s = 0; s < m0_; ++s) {
            acc ^= x;
            x = apply_imgs(frob1, x);
        }
        tr_monomial[k] = acc & 1;
    }
    std::vector<uint64_t> dual_imgs(m0_, 0);
    for (int i = 0; i < m0_; ++i)
        for (int j = 0; j < m0_; ++j)
            if (tr_monomial[i + j]) dual_imgs[i] |= 1ull << j;
    dual_map_ = LinearMap::from_images(dual_imgs);
}

uint64_t FieldContext::subgroup_order(int i) const {
    if (i < 1 || i > nu_) throw std::out_of_range("unit subgroup level out of range");
    return (1ull << tower_[i]) + 1;
}

uint64_t FieldContext::frobenius_power(uint64_t x, int d) const {
    for (const auto& [dd, map] : frob_maps_)
        if (dd == d) return map(x);
    throw std::invalid_argument("frobenius step must be a divisor of the degree");
}

bool FieldContext::in_subfield(uint64_t x, int d) const {
    return frobenius_power(x, d) == x;
}

uint64_t FieldContext::trace_between(uint64_t x, int from, int to) const {
    for (const auto& [key, map] : trace_maps_)
        if (key.first == from && key.second == to) return map(x);
    throw std::invalid_argument("trace endpoints must be nested divisors of the degree");
}

uint64_t FieldContext::unit_generator(int i) const {
    if (i < 1 || i > nu_) throw std::out_of_range("unit subgroup level out of range");
    return unit_generators_[i - 1];
}

uint64_t FieldContext::subfield_generator(int d) const {
    for (const auto& [dd, g] : subfield_generators_)
        if (dd == d) return g;
    throw std::invalid_argument("subfield degree must divide the extension degree");
}

void FieldContext::ensure_subfield_table(int d) const {
    if (d > 24) throw std::invalid_argument("subfield log table limited to degree 24");
    SubfieldTable& tab = subfield_tables_[d];
    std::call_once(tab.built, [&] {
        uint64_t n = (1ull << d) - 1;
        uint64_t g = subfield_generator(d);
        std::vector<std::pair<uint64_t, uint32_t>> rows;
        rows.reserve(n);
        uint64_t x = 1;
        for (uint64_t k = 0; k < n; ++k) {
            rows.emplace_back(x, static_cast<uint32_t>(k));
            x = mul(x, g);
        }
        std::sort(rows.begin(), rows.end());
        tab.sorted_logs = std::move(rows);
    });
}

uint64_t FieldContext::subfield_log(uint64_t x, int d) const {
    if (x == 0) throw std::invalid_argument("discrete log of zero");
    ensure_subfield_table(d);
    const auto& rows = subfield_tables_[d].sorted_logs;
    auto it = std::lower_bound(rows.begin(), rows.end(), std::make_pair(x, uint32_t{0}));
    if (it == rows.end() || it->first != x)
        throw std::invalid_argument("element does not lie in the requested subfield");
    return it->second;
}

uint64_t FieldContext::cube_root(uint64_t x, int d) const {
    uint64_t n = (1ull << d) - 1;
    if (n % 3 != 0) throw std::invalid_argument("cube roots need 3 | 2^d - 1");
    uint64_t k = subfield_log(x, d);
    if (k % 3 != 0) return 0;
    return pow(subfield_generator(d), k / 3);
}

std::string FieldContext::to_json() const {
    std::ostringstream os;
    os << "{\"m0\":" << m0_ << ",\"modulus_hex\":\"" << element_to_hex(modulus_)
       << "\",\"generator_hex\":\"" << element_to_hex(generator_) << "\"}";
    return os.str();
}

uint64_t mod_inverse(uint64_t a, uint64_t n) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(n), newr = static_cast<int64_t>(a % n);
    while (newr != 0) {
        int64_t q = r / newr;
        t -= q * newt;
        std::swap(t, newt);
        r -= q * newr;
        std::swap(r, newr);
    }
    if (r != 1) throw std::invalid_argument("modular inverse does not exist");
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(n) : t);
}

std::string element_to_hex(uint64_t bits) {
    std::ostringstream os;
    os << "0x" << std::hex << bits;
    return os.str();
}

uint64_t parse_element(const FieldContext& ctx, const std::string& text, int level) {
    if (text.empty()) throw std::invalid_argument("empty element literal");
    uint64_t bits;
    if (text[0] == 'g' || text[0] == 'z') {
        uint64_t g = (level == ctx.degree()) ? ctx.generator() : ctx.subfield_generator(level);
        uint64_t e = 1;
        if (text.size() > 1) {
            if (text[1] != '^') throw std::invalid_argument("bad generator power: " + text);
            size_t pos = 0;
            e = std::stoull(text.substr(2), &pos);
            if (pos != text.size() - 2) throw std::invalid_argument("bad generator power: " + text);
        }
        bits = ctx.pow(g, e);
    } else {
        size_t pos = 0;
        int base = (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) ? 16 : 10;
        bits = std::stoull(base == 16 ? text.substr(2) : text, &pos, base);
        if (pos != (base == 16 ? text.size() - 2 : text.size()))
            throw std::invalid_argument("bad element literal: " + text);
        if (bits > ctx.mask()) throw std::invalid_argument("element bitmask out of range: " + text);
        if (!ctx.in_subfield(bits, level))
            throw std::invalid_argument("element does not lie in the requested subfield: " + text);
    }
    return bits;
}

}  // namespace bentforge
