#ifndef PICARD_BIGINT_HPP
#define PICARD_BIGINT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "picard/common.hpp"
#include "picard/rng.hpp"

namespace picard {

// Unsigned arbitrary-precision integer, base 2^32.  Divisor counts grow
// like q^n, so 64 bits is not enough headroom once the CLI exposes the
// degree; everything the counting tables need is here and nothing more.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) {
        if (v) {
            d_.push_back(static_cast<std::uint32_t>(v));
            if (v >> 32) d_.push_back(static_cast<std::uint32_t>(v >> 32));
        }
    }

    bool is_zero() const { return d_.empty(); }

    static int cmp(const BigUint& a, const BigUint& b) {
        if (a.d_.size() != b.d_.size()) return a.d_.size() < b.d_.size() ? -1 : 1;
        for (size_t i = a.d_.size(); i-- > 0;)
            if (a.d_[i] != b.d_[i]) return a.d_[i] < b.d_[i] ? -1 : 1;
        return 0;
    }
    friend bool operator==(const BigUint& a, const BigUint& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) { return cmp(a, b) >= 0; }

    friend BigUint operator+(const BigUint& a, const BigUint& b) {
        BigUint r;
        const auto& x = a.d_.size() >= b.d_.size() ? a.d_ : b.d_;
        const auto& y = a.d_.size() >= b.d_.size() ? b.d_ : a.d_;
        r.d_.resize(x.size());
        std::uint64_t carry = 0;
        for (size_t i = 0; i < x.size(); ++i) {
            std::uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0);
            r.d_[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        if (carry) r.d_.push_back(static_cast<std::uint32_t>(carry));
        return r;
    }

    // requires a >= b
    friend BigUint operator-(const BigUint& a, const BigUint& b) {
        check(a >= b, "BigUint subtraction underflow");
        BigUint r;
        r.d_.resize(a.d_.size());
        std::int64_t borrow = 0;
        for (size_t i = 0; i < a.d_.size(); ++i) {
            std::int64_t s = std::int64_t(a.d_[i]) - borrow - (i < b.d_.size() ? b.d_[i] : 0);
            borrow = s < 0;
            if (s < 0) s += (std::int64_t{1} << 32);
            r.d_[i] = static_cast<std::uint32_t>(s);
        }
        r.trim();
        return r;
    }

    friend BigUint operator*(const BigUint& a, const BigUint& b) {
        if (a.is_zero() || b.is_zero()) return {};
        BigUint r;
        r.d_.assign(a.d_.size() + b.d_.size(), 0);
        for (size_t i = 0; i < a.d_.size(); ++i) {
            std::uint64_t carry = 0;
            for (size_t j = 0; j < b.d_.size(); ++j) {
                std::uint64_t s = std::uint64_t(a.d_[i]) * b.d_[j] + r.d_[i + j] + carry;
                r.d_[i + j] = static_cast<std::uint32_t>(s);
                carry = s >> 32;
            }
            r.d_[i + b.d_.size()] += static_cast<std::uint32_t>(carry);
        }
        r.trim();
        return r;
    }

    // in-place divide by a small divisor, returns remainder
    std::uint32_t div_small(std::uint32_t m) {
        require(m != 0, "division by zero");
        std::uint64_t rem = 0;
        for (size_t i = d_.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | d_[i];
            d_[i] = static_cast<std::uint32_t>(cur / m);
            rem = cur % m;
        }
        trim();
        return static_cast<std::uint32_t>(rem);
    }

    static BigUint pow(std::uint64_t base, unsigned exp) {
        BigUint r(1), b(base);
        while (exp) {
            if (exp & 1) r = r * b;
            b = b * b;
            exp >>= 1;
        }
        return r;
    }

    // C(n-1+l, l) with n a big count and l small
    static BigUint multiset_count(const BigUint& n, std::uint64_t l) {
        if (n.is_zero()) return l == 0 ? BigUint(1) : BigUint(0);
        BigUint r(1);
        for (std::uint64_t i = 1; i <= l; ++i) {
            r = r * (n + BigUint(i - 1));
            std::uint32_t rem = r.div_small(static_cast<std::uint32_t>(i));
            check(rem == 0, "binomial not integral");
        }
        return r;
    }

    // uniform value in [0, *this), requires nonzero
    BigUint uniform_below(Rng& rng) const {
        require(!is_zero(), "uniform_below(0)");
        size_t nb = d_.size();
        for (;;) {
            BigUint v;
            v.d_.resize(nb);
            for (size_t i = 0; i + 1 < nb; ++i)
                v.d_[i] = static_cast<std::uint32_t>(rng.next_u64());
            // top limb drawn below a power of two covering the top of *this
            std::uint32_t top = d_[nb - 1];
            std::uint32_t mask = 1;
            while (mask < top) mask = (mask << 1) | 1;
            v.d_[nb - 1] = static_cast<std::uint32_t>(rng.next_u64()) & mask;
            v.trim();
            if (v < *this) return v;
        }
    }

    std::uint64_t to_u64() const {
        check(d_.size() <= 2, "count exceeds 64 bits");
        std::uint64_t v = 0;
        if (d_.size() > 1) v = std::uint64_t(d_[1]) << 32;
        if (!d_.empty()) v |= d_[0];
        return v;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        BigUint t = *this;
        std::string s;
        while (!t.is_zero()) s.push_back(static_cast<char>('0' + t.div_small(10)));
        return std::string(s.rbegin(), s.rend());
    }

    static BigUint from_string(const std::string& s) {
        BigUint r;
        for (char c : s) {
            require(c >= '0' && c <= '9', "bad digit");
            r = r * BigUint(10) + BigUint(static_cast<std::uint64_t>(c - '0'));
        }
        return r;
    }

private:
    void trim() {
        while (!d_.empty() && d_.back() == 0) d_.pop_back();
    }
    std::vector<std::uint32_t> d_;  // little-endian limbs, no leading zeros
};

}  // namespace picard

#endif
