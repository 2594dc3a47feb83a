#ifndef PICARD_ZETA_HPP
#define PICARD_ZETA_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "picard/bigint.hpp"
#include "picard/common.hpp"

namespace picard {

// The numerator L_X of the zeta function Z_X = L_X / ((1-t)(1-qt)), together
// with everything the counting formulas need.  Power sums s_n of the inverse
// roots are derived through Newton's identities and the linear recurrence
// given by the coefficients.
class ZetaData {
public:
    ZetaData() = default;
    ZetaData(std::uint64_t q, unsigned g, std::vector<std::int64_t> coeffs)
        : q_(q), g_(g), L_(std::move(coeffs)) {
        validate();
        cache_ = {static_cast<std::int64_t>(2 * g_)};  // s_0 = number of inverse roots
    }

    // build from point counts #X(F_{q^i}) for i = 1..g
    static ZetaData from_point_counts(std::uint64_t q, unsigned g,
                                      const std::vector<std::int64_t>& counts) {
        require(counts.size() >= g, "need g point counts");
        std::vector<std::int64_t> s(g + 1, 0);
        std::int64_t qe = 1;
        for (unsigned i = 1; i <= g; ++i) {
            qe *= static_cast<std::int64_t>(q);
            s[i] = qe + 1 - counts[i - 1];
            double bound = 2.0 * g * std::pow(static_cast<double>(q), i / 2.0);
            require(std::abs(static_cast<double>(s[i])) <= bound + 1e-9,
                    "point counts violate the Weil bound");
        }
        std::vector<std::int64_t> a(2 * g + 1, 0);
        a[0] = 1;
        for (unsigned i = 1; i <= g; ++i) {
            std::int64_t acc = 0;
            for (unsigned j = 1; j <= i; ++j) acc += s[j] * a[i - j];
            require(acc % static_cast<std::int64_t>(i) == 0, "Newton identity not integral");
            a[i] = -acc / static_cast<std::int64_t>(i);
        }
        // functional equation fills the upper half
        std::int64_t qpow = 1;
        for (unsigned i = g; i-- > 0;) {
            qpow *= static_cast<std::int64_t>(q);
            a[2 * g - i] = qpow * a[i];
        }
        return ZetaData(q, g, std::move(a));
    }

    std::uint64_t q() const { return q_; }
    unsigned genus() const { return g_; }
    const std::vector<std::int64_t>& coeffs() const { return L_; }

    std::int64_t class_number() const {
        std::int64_t v = 0;
        for (auto c : L_) v += c;
        check(v >= 1, "class number must be positive");
        return v;
    }

    // power sum of the inverse roots, any n >= 1
    std::int64_t power_sum(unsigned n) const {
        std::vector<std::int64_t>& s = cache_;
        while (s.size() <= n) {
            unsigned m = static_cast<unsigned>(s.size());
            // chi(t) = t^{2g} L(1/t) is monic with coefficients a_j
            __int128 acc = 0;
            if (m <= 2 * g_) {
                for (unsigned j = 1; j < m; ++j) acc += static_cast<__int128>(L_[j]) * s[m - j];
                acc += static_cast<__int128>(m) * L_[m];
            } else {
                for (unsigned j = 1; j <= 2 * g_; ++j) acc += static_cast<__int128>(L_[j]) * s[m - j];
            }
            __int128 v = -acc;
            check(v <= INT64_MAX && v >= INT64_MIN, "power sum overflow");
            s.push_back(static_cast<std::int64_t>(v));
        }
        return s[n];
    }

    // number of effective divisors of degree n
    BigUint count_effective(unsigned n) const {
        // (1-t)(1-qt) Z = L  =>  z_n = L_n + (q+1) z_{n-1} - q z_{n-2}
        BigUint zm2(0), zm1(0), z(1);
        for (unsigned m = 1; m <= n; ++m) {
            zm2 = zm1;
            zm1 = z;
            std::int64_t Lm = m < L_.size() ? L_[m] : 0;
            BigUint plus = BigUint(q_ + 1) * zm1;
            BigUint minus = BigUint(q_) * zm2;
            if (Lm >= 0)
                plus = plus + BigUint(static_cast<std::uint64_t>(Lm));
            else
                minus = minus + BigUint(static_cast<std::uint64_t>(-Lm));
            z = plus - minus;
        }
        return z;
    }

    // number of prime divisors (closed points) of degree n
    std::int64_t count_prime_divisors(unsigned n) const {
        require(n >= 1, "degree must be positive");
        require(n * std::log2(static_cast<double>(q_)) < 62, "degree too large for prime counts");
        if (n == 1) return 1 + static_cast<std::int64_t>(q_) - power_sum(1);
        __int128 acc = 0;
        for (unsigned d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            int mu = moebius(n / d);
            if (mu == 0) continue;
            __int128 qd = 1;
            for (unsigned i = 0; i < d; ++i) qd *= q_;
            acc += mu * (qd - power_sum(d));
        }
        check(acc % n == 0 && acc >= 0, "prime divisor count not a nonnegative integer");
        __int128 v = acc / n;
        check(v <= INT64_MAX, "prime divisor count overflow");
        return static_cast<std::int64_t>(v);
    }

    // zeta data of the base extension of degree a: inverse roots become a-th powers
    ZetaData base_extend(unsigned a) const {
        require(a >= 1, "extension degree must be positive");
        if (a == 1) return *this;
        std::uint64_t qa = 1;
        for (unsigned i = 0; i < a; ++i) {
            check(std::log2(static_cast<double>(q_)) * (i + 1) < 62, "extension field too large");
            qa *= q_;
        }
        // Newton in reverse: from power sums s'_m = s_{a m} to coefficients
        std::vector<std::int64_t> b(2 * g_ + 1, 0);
        b[0] = 1;
        for (unsigned m = 1; m <= 2 * g_; ++m) {
            __int128 acc = power_sum(a * m);
            for (unsigned j = 1; j < m; ++j) acc += static_cast<__int128>(b[j]) * power_sum(a * (m - j));
            __int128 v = -acc / static_cast<__int128>(m);
            check(-acc % static_cast<__int128>(m) == 0, "base extension Newton not integral");
            check(v <= INT64_MAX && v >= INT64_MIN, "base extension coefficient overflow");
            b[m] = static_cast<std::int64_t>(v);
        }
        return ZetaData(qa, g_, std::move(b));
    }

    static int moebius(unsigned n) {
        int m = 1;
        for (unsigned d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                n /= d;
                if (n % d == 0) return 0;
                m = -m;
            }
        }
        if (n > 1) m = -m;
        return m;
    }

private:
    void validate() const {
        require(!L_.empty() && L_.size() == 2 * g_ + 1, "L must have degree 2g");
        require(L_[0] == 1, "L(0) must be 1");
        std::int64_t qg = 1;
        for (unsigned i = 0; i < g_; ++i) qg *= static_cast<std::int64_t>(q_);
        if (g_ > 0) require(L_[2 * g_] == qg, "leading coefficient must be q^g");
        std::int64_t qpow = 1;
        for (unsigned i = g_; i-- > 0;) {
            qpow *= static_cast<std::int64_t>(q_);
            require(L_[2 * g_ - i] == qpow * L_[i], "functional equation violated");
        }
        if (g_ > 0) check_root_moduli();
    }

    // Durand-Kerner on chi(t) = t^{2g} L(1/t): all roots must have |.| = sqrt(q)
    void check_root_moduli() const {
        using C = std::complex<double>;
        unsigned deg = 2 * g_;
        // chi(t) = t^{2g} L(1/t): coefficient of t^(deg-j) is L_j, monic
        std::vector<C> c(deg + 1);
        for (unsigned i = 0; i <= deg; ++i) c[i] = static_cast<double>(L_[i]);
        std::vector<C> r(deg);
        for (unsigned i = 0; i < deg; ++i) r[i] = std::pow(C(0.4, 0.9), static_cast<double>(i + 1));
        for (int it = 0; it < 500; ++it) {
            double moved = 0;
            for (unsigned i = 0; i < deg; ++i) {
                C num = c[0];
                for (unsigned j = 1; j <= deg; ++j) num = num * r[i] + c[j];
                C den(1, 0);
                for (unsigned j = 0; j < deg; ++j)
                    if (j != i) den *= (r[i] - r[j]);
                C delta = num / den;
                r[i] -= delta;
                moved += std::abs(delta);
            }
            if (moved < 1e-12) break;
        }
        double want = std::sqrt(static_cast<double>(q_));
        for (auto& root : r)
            require(std::abs(std::abs(root) - want) < 1e-6, "inverse root off the Weil circle");
    }

    std::uint64_t q_ = 0;
    unsigned g_ = 0;
    std::vector<std::int64_t> L_;
    mutable std::vector<std::int64_t> cache_{0};
};

}  // namespace picard

#endif
