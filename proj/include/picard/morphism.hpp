#ifndef PICARD_MORPHISM_HPP
#define PICARD_MORPHISM_HPP

#include <optional>
#include <string>
#include <vector>

#include "picard/sampler.hpp"

namespace picard {

// A finite morphism f : X -> Y between projective curves, given by the
// graded pullback maps f^#_i : Gamma(Y, L_Y^i) -> Gamma(X, L_X^i).  The
// construction enforces that f^# really is a graded ring homomorphism.
class FiniteMorphism {
public:
    FiniteMorphism(const Curve& X, const Curve& Y, std::vector<Mat> maps, bool validate = true)
        : X_(&X), Y_(&Y), maps_(std::move(maps)) {
        require(X.deg_l() % Y.deg_l() == 0, "deg L_X must be a multiple of deg L_Y");
        deg_ = X.deg_l() / Y.deg_l();
        unsigned h = std::min(X.trunc(), Y.trunc());
        require(maps_.size() >= h, "need pullback maps up to the truncation level");
        for (unsigned i = 1; i <= h; ++i)
            require(maps_[i - 1].rows() == X.dim(i) && maps_[i - 1].cols() == Y.dim(i),
                    "pullback map has wrong shape");
        if (validate) validate_homomorphism();
    }

    const Curve& source() const { return *X_; }
    const Curve& target() const { return *Y_; }
    unsigned degree() const { return deg_; }
    const Mat& pullback_map(unsigned i) const { return maps_.at(i - 1); }

    // u -> u^m, v -> v^m on P^1; X has degree m*d, Y degree d
    static FiniteMorphism power_map_p1(const Curve& X, const Curve& Y, unsigned m) {
        require(X.kind() == Curve::Kind::p1 && Y.kind() == Curve::Kind::p1,
                "power map is between projective lines");
        require(X.deg_l() == m * Y.deg_l(), "degree of L_X must be m deg L_Y");
        require(X.field().same(Y.field()), "power map needs a common base field");
        unsigned h = std::min(X.trunc(), Y.trunc());
        std::vector<Mat> maps;
        for (unsigned i = 1; i <= h; ++i) {
            Mat M(X.field(), X.dim(i), Y.dim(i));
            for (size_t t = 0; t < Y.dim(i); ++t) M.at(m * t, t) = X.field().one();
            maps.push_back(std::move(M));
        }
        return FiniteMorphism(X, Y, std::move(maps));
    }

    // the x-coordinate map E -> P^1; E carries L = O(6m infinity) and P^1
    // carries O(3m), so that the pullback of L_Y is L_X
    static FiniteMorphism x_map(const Curve& X, const Curve& Y) {
        require(X.kind() == Curve::Kind::elliptic && Y.kind() == Curve::Kind::p1,
                "x_map: source elliptic, target P^1");
        require(X.deg_l() == 2 * Y.deg_l(), "x_map needs deg L_X = 2 deg L_Y");
        require(X.field().same(Y.field()), "x_map needs a common base field");
        unsigned h = std::min(X.trunc(), Y.trunc());
        std::vector<Mat> maps;
        for (unsigned i = 1; i <= h; ++i) {
            unsigned m = i * Y.deg_l();  // degree of the forms on P^1
            Mat M(X.field(), X.dim(i), Y.dim(i));
            for (unsigned t = 0; t <= m; ++t)
                M.at(X.monomial_index(i, m - t, 0), t) = X.field().one();
            maps.push_back(std::move(M));
        }
        return FiniteMorphism(X, Y, std::move(maps));
    }

    FiniteMorphism base_change(const Curve& XK, const Curve& YK) const {
        const Field& K = XK.field();
        std::vector<Mat> maps;
        for (auto& M : maps_) {
            Mat MK(K, M.rows(), M.cols());
            for (size_t i = 0; i < M.rows(); ++i)
                for (size_t j = 0; j < M.cols(); ++j) MK.at(i, j) = K.embed(M.at(i, j));
            maps.push_back(std::move(MK));
        }
        return FiniteMorphism(XK, YK, std::move(maps), /*validate=*/false);
    }

private:
    void validate_homomorphism() const {
        // injectivity in degree 1
        Mat m1 = maps_[0];
        check(kernel(m1).dim() == 0, "pullback is not injective in degree 1");
        // compatibility with multiplication on all basis pairs
        unsigned h = std::min(X_->trunc(), Y_->trunc());
        for (unsigned i = 1; i < h; ++i)
            for (unsigned j = i; i + j <= h; ++j)
                for (size_t a = 0; a < Y_->dim(i); ++a)
                    for (size_t b = 0; b < Y_->dim(j); ++b) {
                        Vec ea(Y_->dim(i), Y_->field().zero());
                        ea[a] = Y_->field().one();
                        Vec eb(Y_->dim(j), Y_->field().zero());
                        eb[b] = Y_->field().one();
                        Vec lhs = maps_[i + j - 1].apply(Y_->mult_sections(i, ea, j, eb));
                        Vec rhs = X_->mult_sections(i, maps_[i - 1].apply(ea), j,
                                                    maps_[j - 1].apply(eb));
                        require(lhs == rhs, "pullback maps do not respect multiplication");
                    }
    }

    const Curve* X_;
    const Curve* Y_;
    std::vector<Mat> maps_;
    unsigned deg_ = 1;
};

// schematic image of an effective divisor: inverse image of the section
// space under the pullback
inline DivisorRep image_divisor(const FiniteMorphism& f, const DivisorRep& D) {
    require(D.X == &f.source(), "divisor lives on the wrong curve");
    Subspace pre = preimage(f.pullback_map(D.level), D.space);
    return {&f.target(), D.level, pre};
}

// pull-back f^* E, computed by inflating the pullback of the section space
inline DivisorRep pull_back(const FiniteMorphism& f, const DivisorRep& E, unsigned helper_j = 0) {
    const Curve& X = f.source();
    const Curve& Y = f.target();
    require(E.X == &Y, "divisor lives on the wrong curve");
    unsigned i = E.level;
    unsigned j = helper_j ? helper_j : i + 1;  // makes the inflation inequality automatic
    require(f.degree() * E.degree() + 2 * X.genus() <= i * X.deg_l(),
            "pull-back degree bound on X violated");
    require(E.degree() + 2 * Y.genus() <= i * Y.deg_l(), "pull-back degree bound on Y violated");
    require(i + j <= X.trunc(), "pull-back exceeds the truncation level");

    std::vector<Vec> W;
    for (size_t r = 0; r < E.space.dim(); ++r)
        W.push_back(f.pullback_map(i).apply(E.space.basis_row(r)));
    Subspace T = X.mult_spans(i, W, j, subspace_rows(X.full_space(j)));
    Subspace res = X.divide(i + j, T, j, X.bpf_pair(j));
    check(res.codim() == f.degree() * E.degree(), "pull-back has wrong degree");
    return {&X, i, res};
}

// push-forward f_* D = sum n_P [k(P):k(f(P))] f(P)
inline DivisorRep push_forward(const FiniteMorphism& f, const DivisorRep& D, Rng& rng) {
    const Curve& X = f.source();
    const Curve& Y = f.target();
    require(D.X == &X, "divisor lives on the wrong curve");
    unsigned i = D.level;
    require(D.degree() + 2 * X.genus() + 1 <= i * X.deg_l(), "push-forward degree bound on X");
    require(D.degree() + 2 * Y.genus() <= i * Y.deg_l(), "push-forward degree bound on Y");
    auto parts = decompose(D, rng);
    DivisorRep acc = zero_divisor(Y, i);
    for (auto& p : parts) {
        DivisorRep fP = image_divisor(f, p.prime);
        unsigned dfP = fP.degree();
        check(dfP >= 1 && p.degree % dfP == 0, "residue degree is not multiplicative");
        unsigned count = p.multiplicity * (p.degree / dfP);
        for (unsigned t = 0; t < count; ++t) acc = change_level(add_divisors(acc, fP), i);
    }
    return acc;
}

// multiplicity of P in f^*(f(P))
inline unsigned ramification_index(const FiniteMorphism& f, const DivisorRep& P, Rng& rng) {
    DivisorRep fP = image_divisor(f, P);
    DivisorRep pb = pull_back(f, fP);
    for (auto& part : decompose(pb, rng))
        if (part.prime.space == P.space) return part.multiplicity;
    throw internal_error("P does not occur in the pull-back of its image");
}

// ---------------------------------------------------------------------------
// push-forward of a divisor by a rational function psi = s/t

// homogeneous polynomial in u, v of degree d, coefficients indexed by the
// v-degree (same convention as the P^1 monomial bases)
using HomogPoly = std::vector<FieldElement>;

inline HomogPoly homog_mul(const Field& k, const HomogPoly& a, const HomogPoly& b) {
    HomogPoly r(a.size() + b.size() - 1, k.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

inline HomogPoly push_forward_by_function(const Curve& X, unsigned i, const Vec& s, const Vec& t,
                                          const DivisorRep& D, Rng& rng) {
    const Field& k = X.field();
    require(D.X == &X && D.level == 2, "divisor must live on X at level 2");
    require(D.degree() <= X.deg_l(), "divisor degree must be at most deg L");
    require(!vec_is_zero(s) && !vec_is_zero(t), "psi needs two nonzero sections");

    // no common zeros: gcd of the section divisors is trivial
    {
        DivisorRep ds = divisor_of_section(X, i, s, i + 1);
        DivisorRep dt = divisor_of_section(X, i, t, i + 1);
        DivisorRep g = gcd_divisors(ds, dt);
        require(g.degree() == 0, "the two sections have a common zero");
    }

    auto parts = decompose(D, rng);
    HomogPoly out{k.one()};
    for (auto& p : parts) {
        unsigned dQ = p.degree;
        HomogPoly fQ;
        if (dQ == 1) {
            Subspace Qi = change_level(p.prime, i).space;
            Subspace line = intersect(Qi, Subspace::from_rows(k, X.dim(i), {s, t}));
            check(line.dim() == 1, "psi not single-valued at a point of the divisor");
            Vec w = line.basis_row(0);
            Mat M(k, X.dim(i), 2);
            for (size_t r = 0; r < X.dim(i); ++r) {
                M.at(r, 0) = s[r];
                M.at(r, 1) = t[r];
            }
            auto co = solve(M, w);
            check(co.has_value(), "intersection not in the pencil");
            // w = b s - a t: psi(Q') = (a : b)
            fQ = {(*co)[0], (*co)[1]};
        } else {
            Field kQ = make_extension(k, dQ, rng);
            Curve XQ = X.base_change(kQ);
            DivisorRep Qe{&XQ, 2, embed_subspace(p.prime.space, kQ)};
            auto sub = decompose(Qe, rng);
            // pick the lexicographically smallest rational component
            const Subspace* best = nullptr;
            std::string best_key;
            for (auto& c : sub) {
                check(c.degree == 1 && c.multiplicity == 1, "base change of a prime not reduced");
                std::string key;
                for (size_t r = 0; r < c.prime.space.dim(); ++r)
                    for (auto& x : c.prime.space.basis_row(r))
                        for (auto cc : x.coeffs()) key += static_cast<char>('a' + (cc % 26));
                if (!best || key < best_key) {
                    best = &c.prime.space;
                    best_key = key;
                }
            }
            check(best != nullptr, "no rational point over the residue field");
            Subspace Qi = change_level(DivisorRep{&XQ, 2, *best}, i).space;
            Vec sQ, tQ;
            for (auto& x : s) sQ.push_back(kQ.embed(x));
            for (auto& x : t) tQ.push_back(kQ.embed(x));
            Subspace line = intersect(Qi, Subspace::from_rows(kQ, XQ.dim(i), {sQ, tQ}));
            check(line.dim() == 1, "psi not single-valued at a point of the divisor");
            Vec w = line.basis_row(0);
            Mat M(kQ, XQ.dim(i), 2);
            for (size_t r = 0; r < XQ.dim(i); ++r) {
                M.at(r, 0) = sQ[r];
                M.at(r, 1) = tQ[r];
            }
            auto co = solve(M, w);
            check(co.has_value(), "intersection not in the pencil");
            // norm of (b u - a v) down to k
            FieldElement b = (*co)[0], a = -(*co)[1];
            HomogPoly acc{b, -a};  // coefficients by v-degree: b u - a v
            FieldElement bc = b, ac = a;
            for (unsigned e = 1; e < dQ; ++e) {
                bc = bc.pow(k.q());
                ac = ac.pow(k.q());
                acc = homog_mul(kQ, acc, HomogPoly{bc, -ac});
            }
            fQ.clear();
            for (auto& c : acc) {
                auto down = unembed(kQ, k, c);
                check(down.has_value(), "norm form is not rational");
                fQ.push_back(*down);
            }
        }
        for (unsigned m = 0; m < p.multiplicity; ++m) out = homog_mul(k, out, fQ);
    }
    // normalize: leading (lowest v-degree) nonzero coefficient becomes 1
    for (auto& c : out)
        if (!c.is_zero()) {
            FieldElement inv = c.inverse();
            for (auto& x : out) x = x * inv;
            break;
        }
    check(out.size() == static_cast<size_t>(D.degree()) + 1, "norm form has wrong degree");
    return out;
}

// ---------------------------------------------------------------------------
// Picard and Albanese maps

inline PicardElement picard_map(const FiniteMorphism& f, const PicardElement& y) {
    const Curve& Y = f.target();
    require(y.X == &Y, "element lives on the wrong curve");
    require(f.source().trunc() >= 4 && Y.trunc() >= 4, "picard map needs truncation level >= 4");
    DivisorRep E = representative_divisor(y);
    DivisorRep pbE = pull_back(f, E, 2);
    return class_of_divisor(pbE);
}

inline PicardElement albanese_map(const FiniteMorphism& f, const PicardElement& x,
                                  const NormalizationContext& ctxY, Rng& rng) {
    const Curve& X = f.source();
    const Curve& Y = f.target();
    require(x.X == &X, "element lives on the wrong curve");
    require(ctxY.X == &Y, "normalization context must live on the target");
    require(X.trunc() >= 6 && Y.trunc() >= 6, "albanese map needs truncation level >= 6");
    const Field& k = X.field();
    unsigned dLY = Y.deg_l();

    auto point_plus_multiple_of_O = [&](const Curve& Ycur, const DivisorRep& pt,
                                        const Subspace& O2) {
        // pt + (deg L_Y - 1) O at level 2
        DivisorRep acc = pt;  // level 2, degree 1
        DivisorRep O{&Ycur, 2, O2};
        for (unsigned r = 0; r + 1 < dLY; ++r)
            acc = change_level(add_divisors(acc, O), 2);
        return acc;
    };

    DivisorRep D = representative_divisor(x);
    auto parts = decompose(D, rng);
    PicardElement y_acc = zero_element(Y);
    Subspace O2_base = change_level(ctxY.O, 2).space;
    for (auto& p : parts) {
        PicardElement yP;
        if (p.degree == 1) {
            DivisorRep fP = image_divisor(f, p.prime);
            check(fP.degree() == 1, "image of a rational point is rational");
            yP = class_of_divisor(point_plus_multiple_of_O(Y, fP, O2_base));
        } else {
            Field kP = make_extension(k, p.degree, rng);
            Curve XP = X.base_change(kP);
            Curve YP = Y.base_change(kP);
            FiniteMorphism fP = f.base_change(XP, YP);
            DivisorRep Pe{&XP, 2, embed_subspace(p.prime.space, kP)};
            auto sub = decompose(Pe, rng);
            const Subspace* best = nullptr;
            std::string best_key;
            for (auto& c : sub) {
                check(c.degree == 1, "residue field change must split the prime");
                std::string key;
                for (size_t r = 0; r < c.prime.space.dim(); ++r)
                    for (auto& xx : c.prime.space.basis_row(r))
                        for (auto cc : xx.coeffs()) key += static_cast<char>('a' + (cc % 26));
                if (!best || key < best_key) {
                    best = &c.prime.space;
                    best_key = key;
                }
            }
            DivisorRep fPp = image_divisor(fP, DivisorRep{&XP, 2, *best});
            check(fPp.degree() == 1, "image of a rational point is rational");
            Subspace O2P = embed_subspace(O2_base, kP);
            PicardElement yPp = class_of_divisor(point_plus_multiple_of_O(YP, fPp, O2P));
            yP = pic_trace(ctxY, YP, yPp);
        }
        y_acc = pic_add(y_acc, scalar_mul(static_cast<std::int64_t>(p.multiplicity), yP));
    }
    PicardElement y0{&Y, ctxY.rO_space.back()};  // class of Gamma(L^2(-degL O))
    std::int64_t c = static_cast<std::int64_t>(f.degree()) * (dLY - 1);
    return pic_sub(y_acc, scalar_mul(c, y0));
}

}  // namespace picard

#endif
