#ifndef PICARD_PICARD_HPP
#define PICARD_PICARD_HPP

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "picard/divisor.hpp"

namespace picard {

// An element of Pic^0 X in the medium model: the class of L(-D) for an
// effective divisor D of degree deg L, stored as Gamma(L^2(-D)).
struct PicardElement {
    const Curve* X = nullptr;
    Subspace space;

    friend bool operator==(const PicardElement& a, const PicardElement& b) {
        return a.X == b.X && a.space == b.space;  // same representative only
    }
};

inline PicardElement class_of_divisor(const DivisorRep& D) {
    require(D.level == 2, "medium model stores divisors at level 2");
    require(D.degree() == D.X->deg_l(), "representative must have degree deg L");
    return {D.X, D.space};
}

inline DivisorRep representative_divisor(const PicardElement& x) {
    return {x.X, 2, x.space};
}

// zero element u * Gamma(L); the deterministic flavor takes u = first basis
// vector (the section 1 on the affine models)
inline std::pair<PicardElement, Vec> zero_element_with_section(const Curve& X, Rng* rng = nullptr) {
    Vec u;
    if (rng)
        u = X.full_space(1).random_nonzero(*rng);
    else {
        u.assign(X.dim(1), X.field().zero());
        u[0] = X.field().one();
    }
    Subspace sp = X.mult_spans(1, std::vector<Vec>{u}, 1, subspace_rows(X.full_space(1)));
    check(sp.codim() == X.deg_l(), "zero element has wrong codimension");
    return {{&X, sp}, u};
}

inline PicardElement zero_element(const Curve& X) { return zero_element_with_section(X).first; }
inline PicardElement zero_element_random(const Curve& X, Rng& rng) {
    return zero_element_with_section(X, &rng).first;
}

// Zero test: x == 0 iff Gamma(L(-D)) is nonzero; returns a section of L with
// divisor D on success.
struct ZeroTestResult {
    bool is_zero = false;
    Vec section;  // in Gamma(L), only when is_zero
};

inline ZeroTestResult zero_test(const PicardElement& x) {
    const Curve& X = *x.X;
    Subspace W = X.divide(2, x.space, 1, X.bpf_pair(1));
    if (W.dim() == 0) return {false, {}};
    check(W.dim() == 1, "degree-0 bundle with more than one section");
    return {true, W.basis_row(0)};
}

// Addflip: z represents -x-y; also returns s in Gamma(L^3) with
// div s = D + E + F.
struct AddflipResult {
    PicardElement z;
    Vec section;  // in Gamma(L^3)
};

inline AddflipResult addflip(const PicardElement& x, const PicardElement& y) {
    const Curve& X = *x.X;
    require(x.X == y.X, "elements live on different curves");
    require(X.trunc() >= 5, "addflip needs truncation level >= 5");
    Subspace T4 = X.mult_spans(2, x.space, 2, y.space);
    Subspace W3 = X.divide(4, T4, 1, X.bpf_pair(1));  // Gamma(L^3(-D-E))
    check(W3.dim() >= 1, "empty addflip intermediate");
    Vec s = W3.basis_row(0);
    Subspace T5 = X.mult_spans(3, std::vector<Vec>{s}, 2, subspace_rows(X.full_space(2)));
    Subspace F = X.divide(5, T5, 3, subspace_rows(W3));
    check(F.codim() == X.deg_l(), "addflip result has wrong codimension");
    return {{&X, F}, s};
}

inline PicardElement pic_neg(const PicardElement& x) {
    return addflip(x, zero_element(*x.X)).z;
}
inline PicardElement pic_add(const PicardElement& x, const PicardElement& y) {
    return pic_neg(addflip(x, y).z);
}
inline PicardElement pic_sub(const PicardElement& x, const PicardElement& y) {
    return addflip(pic_neg(x), y).z;
}
inline bool pic_is_zero(const PicardElement& x) { return zero_test(x).is_zero; }
inline bool pic_equal(const PicardElement& x, const PicardElement& y) {
    if (x.space == y.space) return true;
    return pic_is_zero(pic_sub(x, y));
}

// ---------------------------------------------------------------------------
// anti-addition chains and scalar multiplication

// a_0 = 0, a_1 = 1, a_l = -a_{i(l)} - a_{j(l)}, ending at n
struct AntiAdditionChain {
    std::vector<std::int64_t> values;
    std::vector<std::pair<std::size_t, std::size_t>> deps;  // deps[l-2] for entry l

    void validate(std::int64_t n) const {
        check(values.size() >= 2 && values[0] == 0 && values[1] == 1, "chain must start 0, 1");
        for (std::size_t l = 2; l < values.size(); ++l) {
            auto [i, j] = deps[l - 2];
            check(i < l && j < l, "chain references a later entry");
            check(values[l] == -values[i] - values[j], "chain recurrence violated");
        }
        check(values.back() == n, "chain does not end at n");
    }
};

inline AntiAdditionChain find_anti_addition_chain(std::int64_t n) {
    require(n != 0, "no chain for zero");
    std::vector<std::int64_t> a{0, 1};
    std::vector<std::pair<std::size_t, std::size_t>> deps;
    auto push = [&](std::size_t i, std::size_t j) {
        a.push_back(-a[i] - a[j]);
        deps.emplace_back(i, j);
        return a.size() - 1;
    };
    std::size_t neg_one = 0;
    auto get_neg_one = [&] {
        if (!neg_one) neg_one = push(1, 0);
        return neg_one;
    };

    std::uint64_t N = static_cast<std::uint64_t>(n < 0 ? -n : n);
    int bits = 63;
    while (bits > 0 && !((N >> bits) & 1)) --bits;
    std::size_t cur = 1;
    int sign_flips = 0;
    for (int b = bits - 1; b >= 0; --b) {
        std::size_t w = push(cur, cur);  // sign flips under doubling
        ++sign_flips;
        if ((N >> b) & 1) {
            // -w - (-1)^t = (-1)^(t+1) (2p+1): flips once more
            std::size_t one_like = (sign_flips % 2 == 0) ? 1 : get_neg_one();
            cur = push(w, one_like);
            ++sign_flips;
        } else {
            cur = w;
        }
    }
    if (a[cur] != n) cur = push(cur, 0);
    check(a[cur] == n, "chain construction failed");

    // peephole: drop entries not feeding the result
    std::vector<bool> used(a.size(), false);
    used[0] = used[1] = true;
    used[cur] = true;
    for (std::size_t l = a.size(); l-- > 2;) {
        if (!used[l]) continue;
        used[deps[l - 2].first] = true;
        used[deps[l - 2].second] = true;
    }
    std::vector<std::size_t> remap(a.size());
    AntiAdditionChain out;
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (!used[l]) continue;
        remap[l] = out.values.size();
        out.values.push_back(a[l]);
        if (l >= 2) out.deps.emplace_back(remap[deps[l - 2].first], remap[deps[l - 2].second]);
    }
    out.validate(n);
    check(out.values.size() <= 4 * static_cast<std::size_t>(bits + 1) + 4, "chain too long");
    return out;
}

inline PicardElement scalar_mul(std::int64_t n, const PicardElement& x) {
    const Curve& X = *x.X;
    if (n == 0) return zero_element(X);
    AntiAdditionChain chain = find_anti_addition_chain(n);
    std::vector<PicardElement> z;
    z.push_back(zero_element(X));
    z.push_back(x);
    for (std::size_t l = 2; l < chain.values.size(); ++l) {
        auto [i, j] = chain.deps[l - 2];
        z.push_back(addflip(z[i], z[j]).z);
    }
    return z.back();
}

// ---------------------------------------------------------------------------
// normalised representatives and descent

// Per-(curve, rational point) tables: the spaces Gamma(L^2(-rO)) for
// deg L - g <= r <= deg L.
struct NormalizationContext {
    const Curve* X = nullptr;
    DivisorRep O;                    // degree-1 divisor at level 1
    std::vector<Subspace> rO_space;  // index r - (degL - g)
    unsigned r_min = 0, r_max = 0;
};

inline NormalizationContext make_normalization_context(const Curve& X, const DivisorRep& O) {
    require(O.X == &X && O.level == 1 && O.degree() == 1,
            "normalization needs a rational point divisor at level 1");
    require(X.trunc() >= 4, "normalisation needs truncation level >= 4");
    NormalizationContext ctx;
    ctx.X = &X;
    ctx.O = O;
    ctx.r_min = X.deg_l() - X.genus();
    ctx.r_max = X.deg_l();
    // build r*O at level 2 by repeated addition
    DivisorRep cur = change_level(O, 2);
    std::vector<Subspace> all{cur.space};  // r = 1
    for (unsigned r = 2; r <= ctx.r_max; ++r) {
        cur = change_level(add_divisors(cur, change_level(O, 2)), 2);
        all.push_back(cur.space);
    }
    for (unsigned r = ctx.r_min; r <= ctx.r_max; ++r) ctx.rO_space.push_back(all[r - 1]);
    return ctx;
}

struct NormalizedRep {
    unsigned r = 0;
    Subspace space;  // Gamma(L^2(-R)) with R = R' + rO, canonical for the class
};

inline NormalizedRep normalised_representative(const PicardElement& x,
                                               const NormalizationContext& ctx) {
    const Curve& X = *x.X;
    require(&X == ctx.X, "normalization context for a different curve");
    PicardElement mx = pic_neg(x);
    for (unsigned r = ctx.r_max;; --r) {
        require(r >= ctx.r_min, "no normalised representative found in the degree window");
        const Subspace& rO = ctx.rO_space[r - ctx.r_min];
        Subspace T4 = X.mult_spans(2, mx.space, 2, rO);
        Subspace W = X.divide(4, T4, 2, X.bpf_pair(2));  // Gamma(L^2(-D-rO))
        if (W.dim() == 0) continue;
        check(W.dim() == 1, "normalised section space must be one-dimensional");
        Vec s = W.basis_row(0);
        Subspace T = X.mult_spans(2, std::vector<Vec>{s}, 2, subspace_rows(X.full_space(2)));
        Subspace R = X.divide(4, T, 2, subspace_rows(mx.space));
        check(R.codim() == X.deg_l(), "normalised representative has wrong degree");
        return {r, R};
    }
}

// Descent along k -> k': decide whether x' on the base-changed curve comes
// from Pic^0 of the base curve, and produce the rational element if so.
inline std::optional<PicardElement> descend(const NormalizationContext& base_ctx,
                                            const Curve& Xext, const PicardElement& xext) {
    const Curve& X = *base_ctx.X;
    require(xext.X == &Xext, "element does not live on the extended curve");
    require(Xext.field().extends(X.field()), "extension curve lacks a recorded embedding");

    // normalise over k' with the base-extended point
    DivisorRep Oext{&Xext, 1, embed_subspace(base_ctx.O.space, Xext.field())};
    NormalizationContext ctx_ext = make_normalization_context(Xext, Oext);
    NormalizedRep nr = normalised_representative(xext, ctx_ext);

    Subspace V = rational_points_of_subspace(nr.space, X.field());
    if (V.codim() != X.deg_l()) return std::nullopt;
    return PicardElement{&X, V};
}

// class of L(-(P + (degL-1) O_inf)) for a rational point P on an affine
// model; P = nullopt means the point at infinity, giving the zero class
inline PicardElement point_class(const Curve& X, const std::optional<Curve::AffinePoint>& P) {
    unsigned r = X.deg_l() - (P.has_value() ? 1 : 0);
    Subspace sp = X.simple_divisor(2, P, r);
    check(sp.codim() == X.deg_l(), "point class has wrong codimension");
    return {&X, sp};
}

}  // namespace picard

#endif
