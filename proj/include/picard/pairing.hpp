#ifndef PICARD_PAIRING_HPP
#define PICARD_PAIRING_HPP

#include <utility>
#include <vector>

#include "picard/picard.hpp"

namespace picard {

// The sections of a line bundle restricted to an effective divisor E:
// Gamma(E, L^t(-A)) = Gamma(L^t(-A)) / Gamma(L^t(-A-E)), with a fixed basis.
// All norm trivializations are determinants with respect to these bases, so
// a frame is built once per computation and shared.
class DivQuot {
public:
    DivQuot() = default;
    DivQuot(const Curve& X, unsigned level, Subspace big, const Subspace& small_ambient)
        : X_(&X), level_(level), big_(std::move(big)) {
        std::vector<Vec> rows;
        for (size_t i = 0; i < small_ambient.dim(); ++i)
            rows.push_back(big_.coords(small_ambient.basis_row(i)));
        small_in_big_ = Subspace::from_rows(X.field(), big_.dim(), rows);
        dim_ = small_in_big_.codim();
        to_custom_ = Mat::identity(X.field(), dim_);
        custom_ = false;
    }

    const Curve& curve() const { return *X_; }
    unsigned level() const { return level_; }
    size_t dim() const { return dim_; }

    // canonical representative of the r-th basis class
    Vec rep(size_t r) const {
        if (!custom_) {
            Vec c(big_.dim(), X_->field().zero());
            c[small_in_big_.copivots()[r]] = X_->field().one();
            return big_.from_coords(c);
        }
        return custom_reps_[r];
    }

    Vec lift(const Vec& qcoords_vec) const {
        Vec acc(big_.ambient(), X_->field().zero());
        for (size_t r = 0; r < dim_; ++r)
            if (!qcoords_vec[r].is_zero()) acc = vec_add(acc, vec_scale(rep(r), qcoords_vec[r]));
        return acc;
    }

    // coordinates of the class of v (v must lie in the big space)
    Vec qcoords(const Vec& v) const {
        Vec canonical = small_in_big_.quotient_coords(big_.coords(v));
        return to_custom_.apply(canonical);
    }

    // replace the basis by explicit representatives (their classes must be
    // a basis); used for the image-of-u basis of Gamma(E, L^3(-D_0))
    void set_custom_basis(std::vector<Vec> reps) {
        check(reps.size() == dim_, "custom basis has wrong size");
        Mat B(X_->field(), dim_, dim_);
        for (size_t c = 0; c < dim_; ++c) {
            Vec qc = small_in_big_.quotient_coords(big_.coords(reps[c]));
            for (size_t r = 0; r < dim_; ++r) B.at(r, c) = qc[r];
        }
        auto inv = B.inverse();
        check(inv.has_value(), "custom representatives are not a basis");
        to_custom_ = *inv;
        custom_reps_ = std::move(reps);
        custom_ = true;
    }

private:
    const Curve* X_ = nullptr;
    unsigned level_ = 0;
    Subspace big_;
    Subspace small_in_big_;
    size_t dim_ = 0;
    Mat to_custom_;
    std::vector<Vec> custom_reps_;
    bool custom_ = false;
};

// Gamma(E, L^t(-A)) from the divisor data: big = Gamma(L^t(-A)), small =
// Gamma(L^t(-A-E))
inline DivQuot make_divisor_quotient(const Curve& X, const DivisorRep& A, const DivisorRep& E2,
                                     unsigned t) {
    Subspace big = change_level(A, t).space;
    DivisorRep AE = add_divisors(A, E2);  // level A.level + 2
    Subspace small = change_level(AE, t).space;
    return DivQuot(X, t, std::move(big), small);
}

// matrix of multiplication by a fixed section class: A -> C, where b_lift is
// an ambient representative at level tb and C.level = A.level + tb
inline Mat quotient_mult_map(const Curve& X, const DivQuot& A, const Vec& b_lift, unsigned tb,
                             const DivQuot& C) {
    check(A.level() + tb == C.level(), "quotient multiplication levels mismatch");
    Mat M(X.field(), C.dim(), A.dim());
    for (size_t r = 0; r < A.dim(); ++r) {
        Vec prod = X.mult_sections(A.level(), A.rep(r), tb, b_lift);
        Vec qc = C.qcoords(prod);
        for (size_t i = 0; i < C.dim(); ++i) M.at(i, r) = qc[i];
    }
    return M;
}

// Linearity of the norm functor: the scalar lambda relating the product of
// the trivializations of N_E M and N_E N to the trivialization of N_E P,
// where M = L^i(-D1), N = L^j(-D2), P = M tensor N.  The quotient frames,
// including the three auxiliary product frames, are supplied by the caller
// so trivializations stay consistent across calls.
struct NormLinearityFrames {
    const DivQuot* base;  // Gamma(E, L^2)
    const DivQuot* M;     // Gamma(E, L^(i+2)(-D1))
    const DivQuot* N;     // Gamma(E, L^(j+2)(-D2))
    const DivQuot* P;     // Gamma(E, L^(i+j+2)(-D1-D2))
    const DivQuot* auxM;  // Gamma(E, L^(i+4)(-D1))
    const DivQuot* auxN;  // Gamma(E, L^(j+4)(-D2))
    const DivQuot* auxP;  // Gamma(E, L^(i+j+4)(-D1-D2))
};

inline FieldElement norm_linearity_lambda(const Curve& X, const NormLinearityFrames& F,
                                          Rng& rng) {
    const Field& k = X.field();
    size_t dE = F.base->dim();
    auto random_class = [&] {
        Vec c(dE, k.zero());
        for (auto& x : c) x = k.random(rng);
        return c;
    };
    auto find_generator = [&](const DivQuot& Q, auto test) {
        std::uint64_t cap = trial_cap(64);
        for (std::uint64_t it = 0; it < cap; ++it) {
            Vec c = random_class();
            Vec lifted = Q.lift(c);
            if (vec_is_zero(c)) continue;
            if (test(lifted)) return lifted;
        }
        throw cap_exceeded("no module generator found for the norm frame");
    };

    // generators beta0, beta1, beta2 of the rank-1 modules
    Vec beta0 = find_generator(*F.base, [&](const Vec& b) {
        return quotient_mult_map(X, *F.M, b, F.base->level(), *F.auxM).inverse().has_value();
    });
    Vec beta1 = find_generator(*F.M, [&](const Vec& b) {
        return quotient_mult_map(X, *F.base, b, F.M->level(), *F.auxM).inverse().has_value();
    });
    Vec beta2 = find_generator(*F.N, [&](const Vec& b) {
        return quotient_mult_map(X, *F.base, b, F.N->level(), *F.auxN).inverse().has_value();
    });

    Mat m0M = quotient_mult_map(X, *F.M, beta0, F.base->level(), *F.auxM);
    Mat m0N = quotient_mult_map(X, *F.N, beta0, F.base->level(), *F.auxN);
    Mat m0P = quotient_mult_map(X, *F.P, beta0, F.base->level(), *F.auxP);
    auto i0M = m0M.inverse();
    auto i0N = m0N.inverse();
    auto i0P = m0P.inverse();
    check(i0M.has_value() && i0N.has_value() && i0P.has_value(),
          "beta0 does not act invertibly on all frames");

    Mat alpha1 = *i0M * quotient_mult_map(X, *F.base, beta1, F.M->level(), *F.auxM);
    Mat alpha2 = *i0N * quotient_mult_map(X, *F.base, beta2, F.N->level(), *F.auxN);
    Mat alpha3 = *i0P * (quotient_mult_map(X, *F.M, beta2, F.N->level(), *F.auxP) * alpha1);

    FieldElement d1 = alpha1.det(), d2 = alpha2.det(), d3 = alpha3.det();
    check(!d1.is_zero() && !d2.is_zero() && !d3.is_zero(), "norm frame map is singular");
    return d3 * (d1 * d2).inverse();
}

// ---------------------------------------------------------------------------
// trivialization transcripts for the Frey-Rueck pairing

// The data accumulated while expressing L(-D)^n as a trivial bundle along an
// anti-addition chain: divisors D_l, addflip sections s_l, the initial
// section u and the final section v.
struct PairingTranscript {
    const Curve* X = nullptr;
    AntiAdditionChain chain;
    std::vector<DivisorRep> D;        // D_l at level 2
    std::vector<DivisorRep> pair4;    // D_{i(l)} + D_{j(l)} at level 4 (l >= 2)
    std::vector<DivisorRep> triple5;  // D_l + D_{i(l)} + D_{j(l)} at level 5 (l >= 2)
    Vec u;                            // in Gamma(L), div u = D_0
    std::vector<Vec> s;               // s[l] in Gamma(L^3), l >= 2
    Vec v;                            // in Gamma(L), div v = D_m
};

// Run the addflip chain on x with n x = 0; throws domain_error when x is not
// n-torsion.  Validates div(s_l) = D_l + D_i + D_j along the way.
inline PairingTranscript make_pairing_transcript(const PicardElement& x, std::uint64_t n,
                                                 Rng& rng) {
    const Curve& X = *x.X;
    require(X.trunc() >= 7, "pairing transcripts need truncation level >= 7");
    PairingTranscript T;
    T.X = &X;
    T.chain = find_anti_addition_chain(static_cast<std::int64_t>(n));
    size_t m = T.chain.values.size() - 1;

    auto [z0, u] = zero_element_with_section(X, &rng);
    T.u = u;
    std::vector<PicardElement> z{z0, x};
    T.D.push_back(representative_divisor(z0));
    T.D.push_back(representative_divisor(x));
    T.s.assign(m + 1, {});
    T.pair4.assign(m + 1, DivisorRep{});
    T.triple5.assign(m + 1, DivisorRep{});
    for (size_t l = 2; l <= m; ++l) {
        auto [i, j] = T.chain.deps[l - 2];
        AddflipResult r = addflip(z[i], z[j]);
        z.push_back(r.z);
        T.D.push_back(representative_divisor(r.z));
        T.s[l] = r.section;
        T.pair4[l] = add_divisors(T.D[i], T.D[j]);
        T.triple5[l] = change_level(add_divisors(T.D[l], T.pair4[l]), 5);
        // div(s_l) = D_l + D_i + D_j
        DivisorRep div_s = divisor_of_section(X, 3, T.s[l], 4);
        check(change_level(div_s, 5) == T.triple5[l], "addflip section has the wrong divisor");
    }
    ZeroTestResult zt = zero_test(z[m]);
    if (!zt.is_zero) throw domain_error("element is not n-torsion");
    T.v = zt.section;
    return T;
}

// The element of k^* (defined up to n-th powers) expressing the composite
// trivialization I^E_{s,t} of the n-th power of L(-D) along E.
inline FieldElement compute_I_Est(const PairingTranscript& T, const DivisorRep& E, Rng& rng) {
    const Curve& X = *T.X;
    const Field& k = X.field();
    require(E.level == 2 && E.degree() == X.deg_l(), "E must be effective of degree deg L");
    size_t m = T.chain.values.size() - 1;

    // frames fixed once: Gamma(E, L^2) and Gamma(E, L^3(-D_l))
    DivQuot base(X, 2, X.full_space(2), E.space);
    std::vector<DivQuot> Q3(m + 1);
    for (size_t l = 0; l <= m; ++l) Q3[l] = make_divisor_quotient(X, T.D[l], E, 3);
    {
        // basis of Gamma(E, L^3(-D_0)): image of the base basis under u
        std::vector<Vec> reps;
        for (size_t r = 0; r < base.dim(); ++r)
            reps.push_back(X.mult_sections(1, T.u, 2, base.rep(r)));
        Q3[0].set_custom_basis(std::move(reps));
    }

    std::vector<FieldElement> gamma(m + 1, k.one());
    for (size_t l = 2; l <= m; ++l) {
        auto [i, j] = T.chain.deps[l - 2];
        DivQuot Q4 = make_divisor_quotient(X, T.pair4[l], E, 4);
        DivQuot Q5 = make_divisor_quotient(X, T.triple5[l], E, 5);
        // lambda^(1): M = L(-D_i), N = L(-D_j), P = L^2(-D_i-D_j)
        DivQuot aux5i = make_divisor_quotient(X, T.D[i], E, 5);
        DivQuot aux5j = make_divisor_quotient(X, T.D[j], E, 5);
        DivQuot aux6 = make_divisor_quotient(X, T.pair4[l], E, 6);
        NormLinearityFrames F1{&base, &Q3[i], &Q3[j], &Q4, &aux5i, &aux5j, &aux6};
        FieldElement lam1 = norm_linearity_lambda(X, F1, rng);
        // lambda^(2): M = L(-D_l), N = L^2(-D_i-D_j), P = L^3(-D_l-D_i-D_j)
        DivQuot aux5l = make_divisor_quotient(X, T.D[l], E, 5);
        DivQuot aux7 = make_divisor_quotient(X, T.triple5[l], E, 7);
        NormLinearityFrames F2{&base, &Q3[l], &Q4, &Q5, &aux5l, &aux6, &aux7};
        FieldElement lam2 = norm_linearity_lambda(X, F2, rng);

        FieldElement sigma = quotient_mult_map(X, base, T.s[l], 3, Q5).det();
        check(!sigma.is_zero(), "sigma is singular");
        FieldElement lam = lam1 * lam2;
        gamma[l] = lam * (sigma * gamma[i] * gamma[j]).inverse();
    }
    FieldElement delta = quotient_mult_map(X, base, T.v, 1, Q3[m]).det();
    check(!delta.is_zero(), "delta is singular");
    return (gamma[m] * delta).inverse();
}

// ---------------------------------------------------------------------------
// the Frey-Rueck (Tate-Lichtenbaum) pairing

struct FreyRuckResult {
    FieldElement value;  // in mu_n(k)
    std::uint64_t log;   // with respect to g^((q-1)/n) for the smallest generator g
};

// Caches everything that depends only on the n-torsion argument x: the
// addflip transcript and the trivialization along E^+ = div(w).  Pairing
// against many second arguments then costs one I_Est each.
class FreyRuckEngine {
public:
    FreyRuckEngine(const PicardElement& x, std::uint64_t n, Rng& rng) : X_(x.X), n_(n) {
        const Field& k = X_->field();
        require(n >= 1 && (k.q() - 1) % n == 0, "n must divide #k^x");
        if (!pic_is_zero(scalar_mul(static_cast<std::int64_t>(n), x)))
            throw domain_error("x is not n-torsion");
        T_ = make_pairing_transcript(x, n, rng);
        Vec w = X_->full_space(1).random_nonzero(rng);
        Subspace wspace =
            X_->mult_spans(1, std::vector<Vec>{w}, 1, subspace_rows(X_->full_space(1)));
        DivisorRep Eplus{X_, 2, wspace};
        Iplus_ = compute_I_Est(T_, Eplus, rng);
        zeta_ = multiplicative_generator(k).pow((k.q() - 1) / n);
    }

    FreyRuckResult pair_with(const PicardElement& y, Rng& rng) const {
        require(y.X == X_, "pairing arguments live on different curves");
        const Field& k = X_->field();
        DivisorRep Eminus = representative_divisor(y);
        FieldElement Im = compute_I_Est(T_, Eminus, rng);
        FieldElement val = (Iplus_ * Im.inverse()).pow((k.q() - 1) / n_);
        check(val.pow(n_).is_one(), "pairing value is not an n-th root of unity");
        return {val, discrete_log_mu_l(zeta_, val, n_)};
    }

private:
    const Curve* X_;
    std::uint64_t n_;
    PairingTranscript T_;
    FieldElement Iplus_;
    FieldElement zeta_;
};

inline FreyRuckResult frey_ruck(const PicardElement& x, const PicardElement& y, std::uint64_t n,
                                Rng& rng) {
    FreyRuckEngine engine(x, n, rng);
    return engine.pair_with(y, rng);
}

}  // namespace picard

#endif
