#ifndef PICARD_TORSION_HPP
#define PICARD_TORSION_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "picard/pairing.hpp"
#include "picard/sampler.hpp"

namespace picard {

// sample size making r uniform draws generate a d-dimensional space over a
// field of the given size with probability at least alpha
inline unsigned generation_sample_size(unsigned d, double alpha, std::uint64_t field_size) {
    require(alpha > 0 && alpha < 1, "alpha must lie in (0,1)");
    if (d == 0) return 0;
    double tail = 1.0 - std::pow(alpha, 1.0 / d);
    double extra = std::log(1.0 / tail) / std::log(static_cast<double>(field_size));
    return d - 1 + static_cast<unsigned>(std::ceil(extra - 1e-12));
}

// ---------------------------------------------------------------------------
// relations between l-torsion points via the Frey-Rueck pairing

struct RelationBasis {
    std::uint64_t l = 0;
    std::vector<std::vector<std::uint64_t>> vectors;  // coefficients mod l
};

// kernel of (c_1..c_n) -> sum c_i x_i for x_i in J[l](k); Las Vegas with the
// step-6 verification loop, so the output is always correct
inline RelationBasis find_relations(const Curve& X, const std::vector<PicardElement>& xs,
                                    std::uint64_t l, double alpha, Rng& rng) {
    const Field& k = X.field();
    require(l >= 2 && k.p() != l, "l must be a prime different from the characteristic");
    size_t n = xs.size();
    RelationBasis out;
    out.l = l;
    if (n == 0) return out;

    // minimal extension containing mu_l
    unsigned aa = 1;
    {
        std::uint64_t t = k.q() % l;
        while (t != 1) {
            t = (t * (k.q() % l)) % l;
            ++aa;
        }
    }
    std::shared_ptr<Curve> Xp;
    const Curve* Xk = &X;
    std::vector<PicardElement> xe = xs;
    if (aa > 1) {
        Field kp = make_extension(k, aa, rng);
        Xp = std::make_shared<Curve>(X.base_change(kp));
        Xk = Xp.get();
        xe.clear();
        for (auto& x : xs) xe.push_back(PicardElement{Xk, embed_subspace(x.space, kp)});
    }
    unsigned m = generation_sample_size(static_cast<unsigned>(n), alpha, l);
    SmoothCountTable table(X.zeta().base_extend(aa), Xk->deg_l(), Xk->deg_l());
    Field Fl = Field::prime(static_cast<std::uint32_t>(l));

    // one transcript per torsion point, reused against every y
    std::vector<FreyRuckEngine> engines;
    for (size_t j = 0; j < n; ++j) engines.emplace_back(xe[j], l, rng);

    std::uint64_t cap = trial_cap(8);
    for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
        std::vector<PicardElement> ys;
        for (unsigned i = 0; i < m; ++i) ys.push_back(random_picard_element(*Xk, table, rng));
        Mat M(Fl, m, n);
        for (unsigned i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j)
                M.at(i, j) = Fl.from_int(engines[j].pair_with(ys[i], rng).log);
        Subspace K = kernel(M);
        // verify each kernel vector kills the points
        bool ok = true;
        for (size_t r = 0; r < K.dim() && ok; ++r) {
            PicardElement acc = zero_element(*Xk);
            Vec c = K.basis_row(r);
            for (size_t j = 0; j < n; ++j) {
                std::uint64_t cj = c[j].coeffs()[0];
                if (cj) acc = pic_add(acc, scalar_mul(static_cast<std::int64_t>(cj), xe[j]));
            }
            ok = pic_is_zero(acc);
        }
        if (!ok) continue;
        for (size_t r = 0; r < K.dim(); ++r) {
            std::vector<std::uint64_t> v;
            for (size_t j = 0; j < n; ++j) v.push_back(K.basis_row(r)[j].coeffs()[0]);
            out.vectors.push_back(std::move(v));
        }
        return out;
    }
    throw cap_exceeded("relation search did not stabilize");
}

// ---------------------------------------------------------------------------
// Kummer data from the Frobenius characteristic polynomial

namespace detail {

// polynomials over Z/M as little-endian coefficient vectors
using ModPoly = std::vector<std::uint64_t>;

inline ModPoly pm_trim(ModPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}
inline ModPoly pm_mul(const ModPoly& a, const ModPoly& b, std::uint64_t M) {
    if (a.empty() || b.empty()) return {};
    ModPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (__int128)a[i] * b[j]) % M;
    return pm_trim(std::move(r));
}
inline ModPoly pm_sub(const ModPoly& a, const ModPoly& b, std::uint64_t M) {
    ModPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + M - y % M) % M;
    }
    return pm_trim(std::move(r));
}
// remainder modulo a monic divisor
inline ModPoly pm_mod(ModPoly a, const ModPoly& f, std::uint64_t M) {
    check(!f.empty() && f.back() == 1, "pm_mod needs a monic divisor");
    while (a.size() >= f.size()) {
        std::uint64_t c = a.back();
        size_t shift = a.size() - f.size();
        if (c)
            for (size_t i = 0; i < f.size(); ++i)
                a[shift + i] = (a[shift + i] + M - (__int128)c * f[i] % M) % M;
        a.pop_back();
        a = pm_trim(std::move(a));
        if (a.size() < f.size()) break;
    }
    return a;
}
// exact quotient by a monic divisor (remainder must vanish)
inline ModPoly pm_divexact(ModPoly a, const ModPoly& f, std::uint64_t M) {
    check(!f.empty() && f.back() == 1, "pm_divexact needs a monic divisor");
    if (a.size() < f.size()) {
        check(pm_trim(a).empty(), "division not exact");
        return {};
    }
    ModPoly q(a.size() - f.size() + 1, 0);
    for (size_t qi = q.size(); qi-- > 0;) {
        std::uint64_t c = a[qi + f.size() - 1] % M;
        q[qi] = c;
        if (c)
            for (size_t i = 0; i < f.size(); ++i)
                a[qi + i] = (a[qi + i] + M - (__int128)c * f[i] % M) % M;
    }
    check(pm_trim(a).empty(), "division not exact");
    return pm_trim(std::move(q));
}

inline ModPoly from_field_poly(const Poly& f) {
    ModPoly r;
    for (auto& c : f.coeffs()) r.push_back(c.coeffs()[0]);
    return r;
}

}  // namespace detail

// Everything needed to run the Kummer map of order l on the eigenvalue-1
// part G of J[l^infinity]: the Hensel-lifted factor f = (t-1)^b mod l of
// chi, the idempotent e cutting out G, and h_a with t^a - 1 = l h_a.
struct KummerData {
    std::uint64_t l = 0;
    std::vector<std::int64_t> chi;       // monic, degree 2g
    unsigned b = 0;                      // multiplicity of (t-1) in chi mod l
    unsigned a = 1;                      // l^gamma, minimal with l^gamma >= b
    unsigned c_a = 0;                    // #J(k_a) = l^{c_a} m_a
    std::uint64_t m_a = 1;
    std::uint64_t mod = 0;               // l^{c_a} (1 if c_a = 0)
    std::vector<std::uint64_t> e;        // idempotent mod l^{c_a}, deg < 2g
    std::vector<std::uint64_t> h_a;      // mod l, deg < b
    std::vector<std::uint64_t> f_lift;   // f mod l^{max(c_a,2)}, monic deg b
    std::vector<std::uint64_t> fp_lift;  // f_perp at the same precision
};

inline KummerData kummer_data(const ZetaData& Z, std::uint64_t l, std::uint32_t characteristic) {
    require(l >= 2 && l != characteristic, "l must differ from the characteristic");
    for (std::uint64_t d = 2; d * d <= l; ++d) require(l % d != 0, "l must be prime");
    unsigned g = Z.genus();
    KummerData kd;
    kd.l = l;
    kd.chi.assign(2 * g + 1, 0);
    for (unsigned i = 0; i <= 2 * g; ++i) kd.chi[2 * g - i] = Z.coeffs()[i];

    // chi mod l and the (t-1)-multiplicity
    Field Fl = Field::prime(static_cast<std::uint32_t>(l));
    std::vector<FieldElement> cc;
    for (auto c : kd.chi) {
        std::int64_t v = c % static_cast<std::int64_t>(l);
        if (v < 0) v += static_cast<std::int64_t>(l);
        cc.push_back(Fl.from_int(static_cast<std::uint64_t>(v)));
    }
    Poly chibar(Fl, std::move(cc));
    Poly tm1(Fl, {Fl.from_int(l - 1), Fl.one()});  // t - 1
    Poly rest = chibar;
    while (rest.degree() > 0 || kd.b == 0) {
        Poly q, r;
        Poly::divmod(rest, tm1, q, r);
        if (!r.is_zero()) break;
        rest = q;
        ++kd.b;
        if (rest.degree() == 0) break;
    }

    // a = l^gamma with l^gamma >= b, minimal
    kd.a = 1;
    while (kd.a < kd.b) kd.a *= static_cast<unsigned>(l);

    // #J(k_a) = l^{c_a} m_a from the zeta data
    std::int64_t ja = Z.base_extend(kd.a).class_number();
    kd.m_a = static_cast<std::uint64_t>(ja);
    while (kd.m_a % l == 0) {
        kd.m_a /= l;
        ++kd.c_a;
    }
    kd.mod = 1;
    for (unsigned i = 0; i < kd.c_a; ++i) kd.mod *= l;

    if (kd.b == 0) {
        kd.e.clear();
        kd.h_a.clear();
        return kd;
    }

    // Hensel lift of chibar = (t-1)^b * fbar_perp to precision l^P
    unsigned P = std::max(kd.c_a, 2u);
    std::uint64_t lP = 1;
    for (unsigned i = 0; i < P; ++i) {
        check(lP < (std::uint64_t(1) << 55) / l, "l-adic precision overflow");
        lP *= l;
    }
    Poly fbar = Poly::one(Fl);
    for (unsigned i = 0; i < kd.b; ++i) fbar = fbar * tm1;
    Poly fpbar = rest;  // chibar / (t-1)^b
    Poly s, t;
    Poly gcd1 = Poly::xgcd(fbar, fpbar, s, t);
    require(gcd1.is_one(), "(t-1)^b must be coprime to the cofactor mod l");

    detail::ModPoly chiM(2 * g + 1);
    for (unsigned i = 0; i <= 2 * g; ++i) {
        std::int64_t v = kd.chi[i] % static_cast<std::int64_t>(lP);
        if (v < 0) v += static_cast<std::int64_t>(lP);
        chiM[i] = static_cast<std::uint64_t>(v);
    }
    detail::ModPoly f = detail::from_field_poly(fbar);
    detail::ModPoly fp = detail::from_field_poly(fpbar);
    detail::ModPoly sbar = detail::from_field_poly(s);
    detail::ModPoly tbar = detail::from_field_poly(t);

    std::uint64_t le = l;
    while (le < lP) {
        // error E = (chi - f fp) / l^e, then delta_f = t E mod fbar etc.
        detail::ModPoly prod = detail::pm_mul(f, fp, lP);
        detail::ModPoly err = detail::pm_sub(chiM, prod, lP);
        detail::ModPoly Ebar;
        for (auto c : err) {
            check(c % le == 0, "Hensel error not divisible");
            Ebar.push_back((c / le) % l);
        }
        Ebar = detail::pm_trim(std::move(Ebar));
        detail::ModPoly df = detail::pm_mod(detail::pm_mul(tbar, Ebar, l), detail::from_field_poly(fbar), l);
        detail::ModPoly num = detail::pm_sub(Ebar, detail::pm_mul(df, fp, l), l);
        detail::ModPoly dg = detail::pm_divexact(num, detail::from_field_poly(fbar), l);
        // f += l^e df, fp += l^e dg
        if (f.size() < kd.b + 1) f.resize(kd.b + 1, 0);
        for (size_t i = 0; i < df.size(); ++i) f[i] = (f[i] + le * df[i]) % lP;
        if (fp.size() < static_cast<size_t>(fpbar.degree()) + 1) fp.resize(fpbar.degree() + 1, 0);
        for (size_t i = 0; i < dg.size(); ++i) fp[i] = (fp[i] + le * dg[i]) % lP;
        le *= l;
    }
    kd.f_lift = f;
    kd.fp_lift = fp;

    // Bezout at precision l^{c_a}: U f + V fp = 1, then e = V fp mod chi
    if (kd.c_a >= 1) {
        std::uint64_t lc = kd.mod;
        detail::ModPoly U = sbar, V = tbar;
        detail::ModPoly fc = f, fpc = fp;
        for (auto& c : fc) c %= lc;
        for (auto& c : fpc) c %= lc;
        fc = detail::pm_trim(std::move(fc));
        fpc = detail::pm_trim(std::move(fpc));
        std::uint64_t cur = l;
        while (cur < lc) {
            detail::ModPoly one{1};
            detail::ModPoly uf = detail::pm_mul(U, fc, lc);
            detail::ModPoly vg = detail::pm_mul(V, fpc, lc);
            detail::ModPoly sum(std::max(uf.size(), vg.size()), 0);
            for (size_t i = 0; i < sum.size(); ++i)
                sum[i] = ((i < uf.size() ? uf[i] : 0) + (i < vg.size() ? vg[i] : 0)) % lc;
            sum = detail::pm_trim(std::move(sum));
            detail::ModPoly B = detail::pm_sub(sum, one, lc);
            detail::ModPoly Bbar;
            for (auto c : B) {
                check(c % cur == 0, "Bezout lift error not divisible");
                Bbar.push_back((c / cur) % l);
            }
            Bbar = detail::pm_trim(std::move(Bbar));
            // delta_U fbar + delta_V fpbar = -Bbar
            detail::ModPoly negB;
            for (auto c : Bbar) negB.push_back((l - c % l) % l);
            negB = detail::pm_trim(std::move(negB));
            detail::ModPoly dU =
                detail::pm_mod(detail::pm_mul(sbar, negB, l), detail::from_field_poly(fpbar), l);
            detail::ModPoly num =
                detail::pm_sub(negB, detail::pm_mul(dU, detail::from_field_poly(fbar), l), l);
            detail::ModPoly dV = detail::pm_divexact(num, detail::from_field_poly(fpbar), l);
            if (U.size() < dU.size()) U.resize(dU.size(), 0);
            for (size_t i = 0; i < dU.size(); ++i) U[i] = (U[i] + cur * dU[i]) % lc;
            if (V.size() < dV.size()) V.resize(dV.size(), 0);
            for (size_t i = 0; i < dV.size(); ++i) V[i] = (V[i] + cur * dV[i]) % lc;
            cur *= l;
        }
        detail::ModPoly chiC = chiM;
        for (auto& c : chiC) c %= lc;
        detail::ModPoly e = detail::pm_mod(detail::pm_mul(V, fpc, lc), chiC, lc);
        e.resize(2 * g, 0);
        kd.e = e;
        // sanity: e^2 = e mod (chi, l^{c_a})
        detail::ModPoly e2 = detail::pm_mod(detail::pm_mul(e, e, lc), chiC, lc);
        check(detail::pm_trim(detail::pm_sub(e2, e, lc)).empty(), "idempotent check failed");
    } else {
        kd.e.assign(2 * g, 0);  // G is trivial modulo l^0 = 1
    }

    // h_a mod l: (t^a - 1)/l in Z_l[t]/(f), needing f at precision l^2
    {
        std::uint64_t l2 = l * l;
        detail::ModPoly f2 = f;
        for (auto& c : f2) c %= l2;
        f2 = detail::pm_trim(std::move(f2));
        // t^a mod f2
        detail::ModPoly ta{1};
        detail::ModPoly tpoly{0, 1};
        unsigned e = kd.a;
        detail::ModPoly base = tpoly;
        while (e) {
            if (e & 1) ta = detail::pm_mod(detail::pm_mul(ta, base, l2), f2, l2);
            base = detail::pm_mod(detail::pm_mul(base, base, l2), f2, l2);
            e >>= 1;
        }
        detail::ModPoly tam1 = detail::pm_sub(ta, detail::ModPoly{1}, l2);
        kd.h_a.clear();
        kd.h_a.resize(kd.b, 0);
        for (size_t i = 0; i < tam1.size(); ++i) {
            check(tam1[i] % l == 0, "t^a - 1 is not divisible by l modulo f");
            if (i < kd.b) kd.h_a[i] = (tam1[i] / l) % l;
        }
    }
    return kd;
}

// ---------------------------------------------------------------------------
// random elements of G[l](k_a) and the l-torsion basis

// apply an integer polynomial in the q-power Frobenius to a Picard element
inline PicardElement frobenius_polynomial(const std::vector<std::uint64_t>& coeffs,
                                          std::uint64_t q, const PicardElement& x) {
    const Curve& X = *x.X;
    PicardElement acc = zero_element(X);
    PicardElement cur = x;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i])
            acc = pic_add(acc, scalar_mul(static_cast<std::int64_t>(coeffs[i]), cur));
        if (i + 1 < coeffs.size()) cur = frobenius_point(cur, q);
    }
    return acc;
}

// uniformly random element of G[l](k_a), via m_a, the idempotent and the
// Kummer map h_a(F_q)
inline PicardElement random_Gl_element(const Curve& Xa, const SmoothCountTable& table_a,
                                       const KummerData& kd, std::uint64_t q_base, Rng& rng) {
    PicardElement y = random_picard_element(Xa, table_a, rng);
    if (kd.b == 0) return zero_element(Xa);
    PicardElement z = scalar_mul(static_cast<std::int64_t>(kd.m_a), y);
    z = frobenius_polynomial(kd.e, q_base, z);
    z = frobenius_polynomial(kd.h_a, q_base, z);
    return z;
}

struct TorsionBasis {
    std::shared_ptr<Curve> Xa;             // curve over k_a (elements point into it)
    KummerData kd;
    std::vector<PicardElement> basis;      // F_l-basis of J[l](k), defined over k_a
    std::vector<std::vector<std::uint64_t>> frobenius_matrix;  // of F_q on G[l](k_a)
};

inline TorsionBasis l_torsion_basis(const Curve& X, std::uint64_t l, double alpha, Rng& rng) {
    const Field& k = X.field();
    require(X.trunc() >= 7, "l-torsion basis needs truncation level >= 7");
    TorsionBasis out;
    out.kd = kummer_data(X.zeta(), l, k.p());
    const KummerData& kd = out.kd;

    Field ka = kd.a == 1 ? k : make_extension(k, kd.a, rng);
    out.Xa = std::make_shared<Curve>(kd.a == 1 ? X : X.base_change(ka));
    const Curve& Xa = *out.Xa;
    if (kd.b == 0) return out;

    SmoothCountTable table(X.zeta().base_extend(kd.a), Xa.deg_l(), Xa.deg_l());
    unsigned r = generation_sample_size(kd.b, alpha, l);
    Field Fl = Field::prime(static_cast<std::uint32_t>(l));

    std::uint64_t cap = trial_cap(8);
    for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
        std::vector<PicardElement> xs;
        for (unsigned i = 0; i < r; ++i)
            xs.push_back(random_Gl_element(Xa, table, kd, k.q(), rng));
        RelationBasis rel = find_relations(Xa, xs, l, alpha, rng);
        if (rel.vectors.size() > r - kd.b) continue;  // not generating yet
        check(rel.vectors.size() == r - kd.b, "kernel smaller than possible");

        // subsequence forming a basis: non-pivot columns of the kernel
        Mat K(Fl, rel.vectors.size(), r);
        for (size_t i = 0; i < rel.vectors.size(); ++i)
            for (unsigned j = 0; j < r; ++j) K.at(i, j) = Fl.from_int(rel.vectors[i][j]);
        auto piv = K.rref();
        std::vector<bool> is_piv(r, false);
        for (size_t c : piv) is_piv[c] = true;
        std::vector<PicardElement> ys;
        for (unsigned j = 0; j < r; ++j)
            if (!is_piv[j]) ys.push_back(xs[j]);
        check(ys.size() == kd.b, "basis extraction failed");

        // matrix of F_q on the basis
        std::vector<PicardElement> combined = ys;
        for (unsigned i = 0; i < kd.b; ++i) combined.push_back(frobenius_point(ys[i], k.q()));
        RelationBasis rel2 = find_relations(Xa, combined, l, alpha, rng);
        if (rel2.vectors.size() != kd.b) continue;  // ys not independent after all
        Mat A(Fl, kd.b, kd.b), C(Fl, kd.b, kd.b);
        for (unsigned i = 0; i < kd.b; ++i)
            for (unsigned j = 0; j < kd.b; ++j) {
                A.at(i, j) = Fl.from_int(rel2.vectors[i][j]);
                C.at(i, j) = Fl.from_int(rel2.vectors[i][kd.b + j]);
            }
        auto Cinv = C.inverse();
        if (!Cinv.has_value()) continue;
        Mat FM = (*Cinv) * A;  // F(y_i) = -sum_j FM[i][j] y_j
        // matrix of F_q - id, acting on coordinates
        Mat MmI(Fl, kd.b, kd.b);
        for (unsigned i = 0; i < kd.b; ++i)
            for (unsigned j = 0; j < kd.b; ++j) {
                FieldElement mji = -FM.at(i, j);  // F(y_i) = sum_j mji y_j
                MmI.at(j, i) = (i == j) ? mji - Fl.one() : mji;
            }
        out.frobenius_matrix.assign(kd.b, std::vector<std::uint64_t>(kd.b, 0));
        for (unsigned i = 0; i < kd.b; ++i)
            for (unsigned j = 0; j < kd.b; ++j)
                out.frobenius_matrix[j][i] = (-FM.at(i, j)).coeffs()[0];

        Subspace fixed = kernel(MmI);
        for (size_t t = 0; t < fixed.dim(); ++t) {
            Vec c = fixed.basis_row(t);
            PicardElement z = zero_element(Xa);
            for (unsigned j = 0; j < kd.b; ++j) {
                std::uint64_t cj = c[j].coeffs()[0];
                if (cj) z = pic_add(z, scalar_mul(static_cast<std::int64_t>(cj), ys[j]));
            }
            out.basis.push_back(std::move(z));
        }
        return out;
    }
    throw cap_exceeded("l-torsion basis search did not stabilize");
}

// optional descent of the basis to the base curve, given a rational point
inline std::vector<PicardElement> descend_basis(const NormalizationContext& ctx,
                                                const TorsionBasis& tb) {
    std::vector<PicardElement> out;
    for (auto& z : tb.basis) {
        auto d = descend(ctx, *tb.Xa, z);
        check(d.has_value(), "Frobenius-fixed class failed to descend");
        out.push_back(*d);
    }
    return out;
}

}  // namespace picard

#endif
