#ifndef PICARD_SAMPLER_HPP
#define PICARD_SAMPLER_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "picard/bigint.hpp"
#include "picard/picard.hpp"

namespace picard {

// ---------------------------------------------------------------------------
// Frobenius on divisors and Picard elements

// entrywise q-power on the basis matrix; echelon form is preserved but the
// result is re-canonicalized anyway
inline Subspace frobenius_subspace(const Subspace& S, std::uint64_t q) {
    std::vector<Vec> rows;
    for (size_t i = 0; i < S.dim(); ++i) {
        Vec r = S.basis_row(i);
        for (auto& x : r) x = x.pow(q);
        rows.push_back(std::move(r));
    }
    return Subspace::from_rows(S.field(), S.ambient(), rows);
}

inline DivisorRep frobenius_divisor(const DivisorRep& D, std::uint64_t q) {
    return {D.X, D.level, frobenius_subspace(D.space, q)};
}

inline PicardElement frobenius_point(const PicardElement& x, std::uint64_t q) {
    return {x.X, frobenius_subspace(x.space, q)};
}

// trace of x in Pic^0(X_{k'}) down to Pic^0(X): sum of Frobenius conjugates,
// then descent (which cannot fail for a genuine trace)
inline PicardElement pic_trace(const NormalizationContext& base_ctx, const Curve& Xext,
                               const PicardElement& x) {
    const Curve& X = *base_ctx.X;
    require(Xext.field().extends(X.field()), "trace: no recorded embedding");
    unsigned a = Xext.field().degree() / X.field().degree();
    std::uint64_t q = X.field().q();
    PicardElement acc = x;
    PicardElement conj = x;
    for (unsigned i = 1; i < a; ++i) {
        conj = frobenius_point(conj, q);
        acc = pic_add(acc, conj);
    }
    auto down = descend(base_ctx, Xext, acc);
    check(down.has_value(), "trace failed to descend");
    return *down;
}

// ---------------------------------------------------------------------------
// counting tables for uniform sampling

// Memoized counts of m-smooth effective divisors, built from the zeta data:
//   #Eff^{lm}_{=m} = C(#PDiv^m - 1 + l, l)
//   #Eff^n_{<=m}   = sum_l #Eff^{lm}_{=m} #Eff^{n-lm}_{<=m-1}
class SmoothCountTable {
public:
    SmoothCountTable(const ZetaData& Z, unsigned nmax, unsigned mmax)
        : Z_(Z), nmax_(nmax), mmax_(std::max(1u, mmax)) {
        pdiv_.resize(mmax_ + 1, 0);
        for (unsigned d = 1; d <= mmax_; ++d) pdiv_[d] = Z_.count_prime_divisors(d);
        eff_le_.assign(mmax_ + 1, std::vector<BigUint>(nmax_ + 1));
        for (unsigned n = 0; n <= nmax_; ++n)
            eff_le_[1][n] = eff_eq(1, n);
        for (unsigned m = 2; m <= mmax_; ++m)
            for (unsigned n = 0; n <= nmax_; ++n) {
                BigUint acc(0);
                for (unsigned l = 0; l * m <= n; ++l)
                    acc = acc + eff_eq(m, l) * eff_le_[m - 1][n - l * m];
                eff_le_[m][n] = acc;
            }
    }

    const ZetaData& zeta() const { return Z_; }
    std::int64_t prime_count(unsigned d) const { return pdiv_.at(d); }

    // number of degree-lm divisors supported on primes of degree exactly m
    BigUint eff_eq(unsigned m, unsigned l) const {
        return BigUint::multiset_count(BigUint(static_cast<std::uint64_t>(pdiv_.at(m))), l);
    }

    const BigUint& eff_le(unsigned n, unsigned m) const {
        require(n <= nmax_ && m >= 1 && m <= mmax_, "count table range exceeded");
        return eff_le_[m][n];
    }

private:
    ZetaData Z_;
    unsigned nmax_, mmax_;
    std::vector<std::int64_t> pdiv_;
    std::vector<std::vector<BigUint>> eff_le_;
};

// ---------------------------------------------------------------------------
// uniform random generation

// uniformly random prime divisor of degree d, represented at level i
inline DivisorRep random_prime_divisor(const Curve& X, unsigned d, unsigned i, Rng& rng) {
    require(d >= 1, "prime degree must be positive");
    require(d + 2 * X.genus() <= i * X.deg_l(), "degree bound for prime sampling violated");
    require(2 * i + 2 <= X.trunc(), "prime sampling needs truncation level 2i+2");
    std::uint64_t denom = (static_cast<std::uint64_t>(i) * X.deg_l()) / d;
    std::uint64_t cap = trial_cap(32 * denom + 32);
    for (std::uint64_t it = 0; it < cap; ++it) {
        Vec s = X.full_space(i).random_nonzero(rng);
        DivisorRep D = divisor_of_section(X, i, s, i + 1);
        auto parts = decompose(D, rng);
        std::vector<const PrimeDivisorData*> irr;
        for (auto& p : parts)
            if (p.degree == d) irr.push_back(&p);
        std::uint64_t u = rng.below(denom);
        if (u < irr.size()) return change_level(irr[u]->prime, i);
    }
    throw cap_exceeded(
        "random prime divisor: trial cap exceeded (the degree may have no prime divisors)");
}

// decomposition type (l_1, ..., l_m) of a uniformly random m-smooth divisor
// of degree n
inline std::vector<unsigned> random_decomposition_type(const SmoothCountTable& table, unsigned n,
                                                       unsigned m, Rng& rng) {
    std::vector<unsigned> out(m, 0);
    unsigned rem = n;
    for (unsigned cur = m; cur >= 2; --cur) {
        const BigUint& total = table.eff_le(rem, cur);
        require(!total.is_zero(), "no divisors with the requested smoothness");
        BigUint x = total.uniform_below(rng);
        unsigned chosen = 0;
        for (unsigned l = 0; l * cur <= rem; ++l) {
            BigUint len = table.eff_eq(cur, l) * table.eff_le(rem - l * cur, cur - 1);
            if (x < len) {
                chosen = l;
                break;
            }
            x = x - len;
        }
        out[cur - 1] = chosen;
        rem -= chosen * cur;
    }
    out[0] = rem;
    return out;
}

// uniformly random multiset of given size from a set of known cardinality,
// using only a uniform sampler and an equality test
template <class T, class Sampler, class Equal>
std::vector<std::pair<T, unsigned>> random_multiset(const BigUint& set_size, unsigned l,
                                                    Sampler draw, Equal eq, Rng& rng) {
    require(!set_size.is_zero(), "multiset from an empty set");
    std::vector<std::pair<T, unsigned>> out;
    if (l == 0) return out;

    // random subset {x_1 < ... < x_l} of {1, ..., #S + l - 1}
    BigUint range = set_size + BigUint(l) - BigUint(1);
    std::vector<BigUint> xs;
    while (xs.size() < l) {
        BigUint v = range.uniform_below(rng) + BigUint(1);
        bool dup = false;
        for (auto& w : xs) dup = dup || (w == v);
        if (!dup) xs.push_back(v);
    }
    std::sort(xs.begin(), xs.end());
    // y_i = x_i - i is a sorted multiset from {0, ..., #S-1}; only its
    // multiplicity profile matters
    std::vector<unsigned> group_sizes;
    for (size_t t = 0; t < xs.size();) {
        BigUint y = xs[t] - BigUint(t + 1);
        size_t u = t;
        while (u < xs.size() && xs[u] - BigUint(u + 1) == y) ++u;
        group_sizes.push_back(static_cast<unsigned>(u - t));
        t = u;
    }
    // draw as many distinct elements as there are groups, in group order
    std::vector<T> distinct;
    std::uint64_t cap = trial_cap(4 * group_sizes.size() + 4);
    for (std::uint64_t it = 0; distinct.size() < group_sizes.size(); ++it) {
        if (it >= cap) throw cap_exceeded("could not draw enough distinct elements");
        T cand = draw();
        bool dup = false;
        for (auto& d : distinct) dup = dup || eq(d, cand);
        if (!dup) distinct.push_back(std::move(cand));
    }
    for (size_t t = 0; t < group_sizes.size(); ++t) out.emplace_back(distinct[t], group_sizes[t]);
    return out;
}

// uniformly random m-smooth effective divisor of degree n, at level i
inline DivisorRep random_divisor(const Curve& X, const SmoothCountTable& table, unsigned n,
                                 unsigned m, unsigned i, Rng& rng) {
    require(n + 2 * X.genus() <= i * X.deg_l(), "degree bound for divisor sampling violated");
    auto type = random_decomposition_type(table, n, m, rng);
    DivisorRep acc = zero_divisor(X, i);
    for (unsigned d = 1; d <= m; ++d) {
        if (type[d - 1] == 0) continue;
        // primes can be drawn at the smallest level allowed by the degree
        // bound (uniformity does not depend on the level)
        unsigned id = i;
        for (unsigned cand = 1; cand < i; ++cand)
            if (d + 2 * X.genus() <= cand * X.deg_l() && 2 * cand + 2 <= X.trunc()) {
                id = cand;
                break;
            }
        auto parts = random_multiset<DivisorRep>(
            BigUint(static_cast<std::uint64_t>(table.prime_count(d))), type[d - 1],
            [&] { return change_level(random_prime_divisor(X, d, id, rng), i); },
            [](const DivisorRep& a, const DivisorRep& b) { return a == b; }, rng);
        for (auto& [P, mult] : parts)
            for (unsigned t = 0; t < mult; ++t)
                acc = change_level(add_divisors(acc, P), i);
    }
    check(acc.degree() == n, "sampled divisor has wrong degree");
    return acc;
}

// uniformly random element of Pic^0: the fibres of D -> [L(-D)] over
// effective divisors of degree deg L all have the same size
inline PicardElement random_picard_element(const Curve& X, const SmoothCountTable& table,
                                           Rng& rng) {
    require(X.trunc() >= 6, "random Picard sampling needs truncation level >= 6");
    DivisorRep D = random_divisor(X, table, X.deg_l(), X.deg_l(), 2, rng);
    return class_of_divisor(D);
}

inline SmoothCountTable make_picard_sampling_table(const Curve& X) {
    return SmoothCountTable(X.zeta(), X.deg_l(), X.deg_l());
}

// Faster, non-uniform variant (CLI --biased): take a random hypersurface
// section and pick a uniformly random degree-n subdivisor of its divisor.
inline DivisorRep random_divisor_biased(const Curve& X, unsigned n, unsigned i, Rng& rng) {
    require(n + 2 * X.genus() <= i * X.deg_l(), "degree bound violated");
    unsigned ip = 1;
    while (ip * X.deg_l() < n + 2 * X.genus() + 1) ++ip;
    require(2 * (ip + 1) <= X.trunc(), "biased sampling needs a higher truncation level");
    std::uint64_t cap = trial_cap(16);
    for (std::uint64_t it = 0; it < cap; ++it) {
        Vec s = X.full_space(ip).random_nonzero(rng);
        DivisorRep D = divisor_of_section(X, ip, s, ip + 1);
        auto parts = decompose(D, rng);
        // count degree-n subdivisors by dynamic programming over the parts
        std::vector<BigUint> ways(n + 1);
        ways[0] = BigUint(1);
        for (auto& p : parts) {
            std::vector<BigUint> next(n + 1);
            for (unsigned t = 0; t <= n; ++t) {
                if (ways[t].is_zero()) continue;
                for (unsigned c = 0; c <= p.multiplicity && t + c * p.degree <= n; ++c)
                    next[t + c * p.degree] = next[t + c * p.degree] + ways[t];
            }
            ways = next;
        }
        if (ways[n].is_zero()) continue;
        // sample one subdivisor uniformly
        BigUint x = ways[n].uniform_below(rng);
        DivisorRep acc = zero_divisor(X, i);
        unsigned rem = n;
        for (size_t pi = parts.size(); pi-- > 0;) {
            // recompute counts over the first pi parts
            std::vector<BigUint> partial(rem + 1);
            partial[0] = BigUint(1);
            for (size_t t = 0; t < pi; ++t) {
                std::vector<BigUint> next(rem + 1);
                for (unsigned u = 0; u <= rem; ++u) {
                    if (partial[u].is_zero()) continue;
                    for (unsigned c = 0; c <= parts[t].multiplicity && u + c * parts[t].degree <= rem;
                         ++c)
                        next[u + c * parts[t].degree] = next[u + c * parts[t].degree] + partial[u];
                }
                partial = next;
            }
            unsigned chosen = 0;
            for (unsigned c = 0; c <= parts[pi].multiplicity && c * parts[pi].degree <= rem; ++c) {
                BigUint len = partial[rem - c * parts[pi].degree];
                if (x < len) {
                    chosen = c;
                    break;
                }
                x = x - len;
            }
            for (unsigned t = 0; t < chosen; ++t)
                acc = change_level(add_divisors(acc, change_level(parts[pi].prime, i)), i);
            rem -= chosen * parts[pi].degree;
        }
        check(rem == 0 && acc.degree() == n, "biased sampling bookkeeping failed");
        return acc;
    }
    throw cap_exceeded("biased sampling found no section with a degree-n subdivisor");
}

}  // namespace picard

#endif
