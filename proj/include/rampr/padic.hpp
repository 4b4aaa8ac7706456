#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rampr/bigint.hpp"

namespace rampr {

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// p-adic valuation: largest e with p^e | x. Requires p prime, x >= 1.
inline uint64_t vp(uint32_t p, const BigInt& x) {
    if (!is_prime_u32(p)) throw std::domain_error("vp: base must be prime");
    if (x.sign() <= 0) throw std::domain_error("vp: argument must be >= 1");
    uint64_t e = 0;
    BigInt cur = x;
    while (true) {
        auto [q, r] = cur.divmod_u32(p);
        if (r != 0) break;
        cur = std::move(q);
        ++e;
    }
    return e;
}

/// First nonzero base-p digit: (x / p^vp(x)) mod p. Always in [1, p-1].
inline uint32_t smodp(uint32_t p, const BigInt& x) {
    if (!is_prime_u32(p)) throw std::domain_error("smodp: base must be prime");
    if (x.sign() <= 0) throw std::domain_error("smodp: argument must be >= 1");
    BigInt cur = x;
    while (true) {
        auto [q, r] = cur.divmod_u32(p);
        if (r != 0) return r;
        cur = std::move(q);
    }
}

/// Floor of log_m(x), by exact integer comparison: the unique e with
/// m^e <= x < m^{e+1}. Requires m >= 2, x >= 1.
inline uint64_t lm(uint32_t m, const BigInt& x) {
    if (m < 2) throw std::domain_error("lm: base must be >= 2");
    if (x.sign() <= 0) throw std::domain_error("lm: argument must be >= 1");
    if (m == 2) return x.bit_length() - 1;
    // Base-m digit count minus one; repeated division avoids any float.
    uint64_t e = 0;
    BigInt cur = x.divmod_u32(m).first;
    while (!cur.is_zero()) {
        ++e;
        cur = cur.divmod_u32(m).first;
    }
    return e;
}

/// k-fold composition of lm. Undefined (nullopt) once the chain reaches 0:
/// the next logarithm does not exist, so a 0 anywhere in the iterated chain
/// poisons the value.
inline std::optional<BigInt> lm_iter(uint32_t m, uint64_t k, const BigInt& x) {
    if (m < 2) throw std::domain_error("lm_iter: base must be >= 2");
    if (k == 0) return x;
    if (x.sign() <= 0) return std::nullopt;
    BigInt cur = x;
    for (uint64_t i = 0; i < k; ++i) {
        cur = BigInt(lm(m, cur));
        if (cur.is_zero()) return std::nullopt;
    }
    return cur;
}

/// Full base-b expansion of x with the valuation/leading statistics used by
/// the invariant colorings. v and smod are populated only for prime base.
struct DigitProfile {
    uint32_t base = 2;
    BigInt value;
    std::vector<uint32_t> digits;      // least significant first, no trailing zero
    std::optional<uint64_t> v;         // index of first nonzero digit (prime base)
    std::optional<uint32_t> smod;      // that digit (prime base)
    uint64_t l = 0;                    // index of last nonzero digit
};

inline DigitProfile digit_profile(uint32_t base, const BigInt& x) {
    if (base < 2) throw std::domain_error("digit_profile: base must be >= 2");
    if (x.sign() <= 0) throw std::domain_error("digit_profile: argument must be >= 1");
    DigitProfile out;
    out.base = base;
    out.value = x;
    BigInt cur = x;
    while (!cur.is_zero()) {
        auto [q, r] = cur.divmod_u32(base);
        out.digits.push_back(r);
        cur = std::move(q);
    }
    out.l = out.digits.size() - 1;
    if (is_prime_u32(base)) {
        uint64_t first = 0;
        while (out.digits[first] == 0) ++first;
        out.v = first;
        out.smod = out.digits[first];
    }
    return out;
}

// Convenience overloads for machine-word arguments.
inline uint64_t vp(uint32_t p, uint64_t x) { return vp(p, BigInt(x)); }
inline uint32_t smodp(uint32_t p, uint64_t x) { return smodp(p, BigInt(x)); }
inline uint64_t lm(uint32_t m, uint64_t x) { return lm(m, BigInt(x)); }

} // namespace rampr
