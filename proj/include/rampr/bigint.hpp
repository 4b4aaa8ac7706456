#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rampr {

/// Exact signed integer of arbitrary size. Magnitude is stored as base-2^32
/// limbs, least significant first, without trailing zeros. Division is only
/// defined for nonnegative dividends and positive divisors, which is all the
/// digit-level arithmetic in this project needs.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v < 0) {
            sign_ = -1;
            // avoid overflow on LLONG_MIN
            unsigned long long m = static_cast<unsigned long long>(-(v + 1)) + 1ULL;
            set_magnitude(m);
        } else if (v > 0) {
            sign_ = 1;
            set_magnitude(static_cast<unsigned long long>(v));
        }
    }

    BigInt(unsigned long long v) {
        if (v > 0) {
            sign_ = 1;
            set_magnitude(v);
        }
    }

    BigInt(int v) : BigInt(static_cast<long long>(v)) {}
    BigInt(long v) : BigInt(static_cast<long long>(v)) {}
    BigInt(unsigned int v) : BigInt(static_cast<unsigned long long>(v)) {}
    BigInt(unsigned long v) : BigInt(static_cast<unsigned long long>(v)) {}

    static BigInt from_decimal(std::string_view s) {
        BigInt out;
        bool neg = false;
        size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            neg = (s[i] == '-');
            ++i;
        }
        if (i == s.size())
            throw std::invalid_argument("BigInt: empty decimal string");
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c < '0' || c > '9')
                throw std::invalid_argument("BigInt: bad decimal digit");
            out.mul_add_small(10, static_cast<uint32_t>(c - '0'));
        }
        out.sign_ = out.limbs_.empty() ? 0 : (neg ? -1 : 1);
        return out;
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool is_negative() const { return sign_ < 0; }

    bool fits_u64() const {
        return sign_ >= 0 && limbs_.size() <= 2;
    }

    uint64_t to_u64() const {
        if (!fits_u64())
            throw std::overflow_error("BigInt: value does not fit in uint64");
        uint64_t v = 0;
        if (limbs_.size() > 1) v = static_cast<uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return v;
    }

    long long to_i64() const {
        if (limbs_.size() > 2)
            throw std::overflow_error("BigInt: value does not fit in int64");
        uint64_t m = limbs_.empty() ? 0
                   : (limbs_.size() == 1 ? limbs_[0]
                      : (static_cast<uint64_t>(limbs_[1]) << 32 | limbs_[0]));
        if (sign_ >= 0) {
            if (m > static_cast<uint64_t>(INT64_MAX))
                throw std::overflow_error("BigInt: value does not fit in int64");
            return static_cast<long long>(m);
        }
        if (m > static_cast<uint64_t>(INT64_MAX) + 1ULL)
            throw std::overflow_error("BigInt: value does not fit in int64");
        return -static_cast<long long>(m - 1) - 1;
    }

    size_t bit_length() const {
        if (limbs_.empty()) return 0;
        uint32_t top = limbs_.back();
        size_t b = 0;
        while (top) { ++b; top >>= 1; }
        return (limbs_.size() - 1) * 32 + b;
    }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.sign_ >= 0 ? c : -c;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.limbs_, b.limbs_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.limbs_ = sub_mag(a.limbs_, b.limbs_);
                r.sign_ = a.sign_;
            } else {
                r.limbs_ = sub_mag(b.limbs_, a.limbs_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (size_t i = 0; i < a.limbs_.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a.limbs_[i];
            for (size_t j = 0; j < b.limbs_.size(); ++j) {
                uint64_t cur = r.limbs_[i + j] + ai * b.limbs_[j] + carry;
                r.limbs_[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + b.limbs_.size();
            while (carry) {
                uint64_t cur = r.limbs_[k] + carry;
                r.limbs_[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        r.trim();
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
    BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
    BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

    /// Quotient and remainder by a small positive divisor. Requires *this >= 0.
    std::pair<BigInt, uint32_t> divmod_u32(uint32_t d) const {
        if (d == 0) throw std::domain_error("BigInt: division by zero");
        if (sign_ < 0) throw std::domain_error("BigInt: divmod_u32 needs nonnegative dividend");
        BigInt q;
        q.limbs_.assign(limbs_.size(), 0);
        uint64_t rem = 0;
        for (size_t i = limbs_.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | limbs_[i];
            q.limbs_[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        q.trim();
        q.sign_ = q.limbs_.empty() ? 0 : 1;
        return {std::move(q), static_cast<uint32_t>(rem)};
    }

    uint32_t mod_u32(uint32_t d) const {
        if (d == 0) throw std::domain_error("BigInt: division by zero");
        if (sign_ < 0) throw std::domain_error("BigInt: mod_u32 needs nonnegative dividend");
        uint64_t rem = 0;
        for (size_t i = limbs_.size(); i-- > 0;)
            rem = ((rem << 32) | limbs_[i]) % d;
        return static_cast<uint32_t>(rem);
    }

    /// Schoolbook long division, bit at a time. Requires *this >= 0, d > 0.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& d) {
        if (d.sign_ <= 0) throw std::domain_error("BigInt: divmod needs positive divisor");
        if (a.sign_ < 0) throw std::domain_error("BigInt: divmod needs nonnegative dividend");
        if (cmp_mag(a.limbs_, d.limbs_) < 0) return {BigInt(), a};
        if (d.limbs_.size() == 1) {
            auto [q, r] = a.divmod_u32(d.limbs_[0]);
            return {std::move(q), BigInt(static_cast<unsigned long long>(r))};
        }
        size_t bits = a.bit_length();
        BigInt q, rem;
        q.limbs_.assign((bits + 31) / 32, 0);
        for (size_t i = bits; i-- > 0;) {
            rem.shift_left_1();
            if (a.bit(i)) rem.set_bit(0);
            if (cmp_mag(rem.limbs_, d.limbs_) >= 0) {
                rem.limbs_ = sub_mag(rem.limbs_, d.limbs_);
                rem.sign_ = rem.limbs_.empty() ? 0 : 1;
                q.limbs_[i / 32] |= (1u << (i % 32));
            }
        }
        q.trim();
        q.sign_ = q.limbs_.empty() ? 0 : 1;
        return {std::move(q), std::move(rem)};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& d) { return divmod(a, d).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& d) { return divmod(a, d).second; }

    /// base^exp with a guard against runaway memory use.
    static BigInt pow(const BigInt& base, uint64_t exp) {
        constexpr size_t kMaxResultBits = 1u << 24;
        if (!base.is_zero() && exp > 0 &&
            static_cast<double>(base.bit_length()) * static_cast<double>(exp) > kMaxResultBits)
            throw std::overflow_error("BigInt: power result too large");
        BigInt result(1LL), b = base;
        while (exp) {
            if (exp & 1) result *= b;
            exp >>= 1;
            if (exp) b *= b;
        }
        return result;
    }

    /// Largest r >= 0 with r^d <= *this. Requires *this >= 0 and d >= 1.
    BigInt nth_root(uint64_t d) const {
        if (sign_ < 0) throw std::domain_error("BigInt: nth_root of negative value");
        if (d == 0) throw std::domain_error("BigInt: zeroth root");
        if (is_zero() || d == 1) return *this;
        BigInt lo(1LL), hi(1LL);
        size_t hb = bit_length() / d + 2;
        for (size_t i = 0; i < hb; ++i) hi.shift_left_1();
        while (lo < hi) {
            // mid = (lo + hi + 1) / 2
            BigInt mid = lo + hi + BigInt(1LL);
            mid = mid.divmod_u32(2).first;
            if (pow(mid, d) <= *this)
                lo = mid;
            else
                hi = mid - BigInt(1LL);
        }
        return lo;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        BigInt m = *this;
        m.sign_ = 1;
        std::string out;
        while (!m.is_zero()) {
            auto [q, r] = m.divmod_u32(1000000000u);
            std::string chunk = std::to_string(r);
            if (!q.is_zero())
                chunk = std::string(9 - chunk.size(), '0') + chunk;
            out = chunk + out;
            m = std::move(q);
        }
        return sign_ < 0 ? "-" + out : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& v) {
        return os << v.to_string();
    }

private:
    int sign_ = 0;
    std::vector<uint32_t> limbs_;

    void set_magnitude(unsigned long long v) {
        limbs_.clear();
        while (v) {
            limbs_.push_back(static_cast<uint32_t>(v));
            v >>= 32;
        }
    }

    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) sign_ = 0;
    }

    void mul_add_small(uint32_t mul, uint32_t add) {
        uint64_t carry = add;
        for (auto& limb : limbs_) {
            uint64_t cur = static_cast<uint64_t>(limb) * mul + carry;
            limb = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            limbs_.push_back(static_cast<uint32_t>(carry));
            carry >>= 32;
        }
    }

    bool bit(size_t i) const {
        size_t w = i / 32;
        if (w >= limbs_.size()) return false;
        return (limbs_[w] >> (i % 32)) & 1u;
    }

    void set_bit(size_t i) {
        size_t w = i / 32;
        if (w >= limbs_.size()) limbs_.resize(w + 1, 0);
        limbs_[w] |= (1u << (i % 32));
        sign_ = 1;
    }

    void shift_left_1() {
        uint32_t carry = 0;
        for (auto& limb : limbs_) {
            uint32_t next = limb >> 31;
            limb = (limb << 1) | carry;
            carry = next;
        }
        if (carry) limbs_.push_back(carry);
        if (!limbs_.empty()) sign_ = 1;
    }

    static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<uint32_t> out(big.size(), 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < big.size(); ++i) {
            uint64_t cur = static_cast<uint64_t>(big[i]) + (i < small.size() ? small[i] : 0) + carry;
            out[i] = static_cast<uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) out.push_back(static_cast<uint32_t>(carry));
        return out;
    }

    // requires |a| >= |b|
    static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
        std::vector<uint32_t> out(a.size(), 0);
        int64_t borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            int64_t cur = static_cast<int64_t>(a[i]) - (i < b.size() ? b[i] : 0) - borrow;
            if (cur < 0) {
                cur += (1LL << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            out[i] = static_cast<uint32_t>(cur);
        }
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    }
};

} // namespace rampr
