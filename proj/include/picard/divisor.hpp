#ifndef PICARD_DIVISOR_HPP
#define PICARD_DIVISOR_HPP

#include <cmath>
#include <vector>

#include "picard/curve.hpp"
#include "picard/finalg.hpp"

namespace picard {

// An effective divisor D, stored as the full section space Gamma(L^i(-D))
// inside Gamma(L^i).  The codimension of the space is the degree.  All
// constructors keep the representability bound deg D <= i degL - 2g, so the
// space really is saturated and basepoint-free.
struct DivisorRep {
    const Curve* X = nullptr;
    unsigned level = 0;
    Subspace space;

    unsigned degree() const { return static_cast<unsigned>(space.codim()); }

    friend bool operator==(const DivisorRep& a, const DivisorRep& b) {
        return a.X == b.X && a.level == b.level && a.space == b.space;
    }
    friend bool operator!=(const DivisorRep& a, const DivisorRep& b) { return !(a == b); }
};

inline DivisorRep zero_divisor(const Curve& X, unsigned level) {
    return {&X, level, X.full_space(level)};
}

inline DivisorRep divisor_from_space(const Curve& X, unsigned level, Subspace W) {
    require(W.ambient() == X.dim(level), "divisor space has wrong ambient dimension");
    require(W.codim() + 2 * X.genus() <= static_cast<size_t>(level) * X.deg_l(),
            "divisor degree exceeds the representability bound");
    return {&X, level, std::move(W)};
}

inline std::vector<Vec> subspace_rows(const Subspace& S) {
    std::vector<Vec> rows;
    rows.reserve(S.dim());
    for (size_t i = 0; i < S.dim(); ++i) rows.push_back(S.basis_row(i));
    return rows;
}

// divisor of a nonzero section s of L^j, represented at the given level
inline DivisorRep divisor_of_section(const Curve& X, unsigned j, const Vec& s,
                                     unsigned out_level) {
    require(!vec_is_zero(s), "divisor of the zero section");
    require(out_level >= j + 1, "output level too small to saturate");
    require(out_level <= X.trunc(), "output level exceeds truncation");
    Subspace sp = X.mult_spans(j, std::vector<Vec>{s}, out_level - j,
                               subspace_rows(X.full_space(out_level - j)));
    check(sp.codim() == static_cast<size_t>(j) * X.deg_l(), "section divisor has wrong degree");
    return {&X, out_level, sp};
}

// raise or lower the representation level of a divisor
inline DivisorRep change_level(const DivisorRep& D, unsigned new_level) {
    const Curve& X = *D.X;
    if (new_level == D.level) return D;
    if (new_level > D.level) {
        require(new_level <= X.trunc(), "level exceeds truncation");
        Subspace sp = X.mult_spans(D.level, D.space, new_level - D.level,
                                   X.full_space(new_level - D.level));
        check(sp.codim() == D.degree(), "degree changed while raising level");
        return {&X, new_level, sp};
    }
    require(D.degree() + 2 * X.genus() <= new_level * X.deg_l(),
            "divisor does not fit at the lower level");
    unsigned j = D.level - new_level;
    Subspace sp = X.divide(D.level, D.space, j, X.bpf_pair(j));
    check(sp.codim() == D.degree(), "degree changed while lowering level");
    return {&X, new_level, sp};
}

// D + E at level i+j (product of the section spaces)
inline DivisorRep add_divisors(const DivisorRep& D, const DivisorRep& E) {
    const Curve& X = *D.X;
    require(D.X == E.X, "divisors live on different curves");
    require(D.level + E.level <= X.trunc(), "sum exceeds truncation level");
    Subspace sp = X.mult_spans(D.level, D.space, E.level, E.space);
    check(sp.codim() == D.degree() + E.degree(), "degrees not additive in divisor sum");
    return {&X, D.level + E.level, sp};
}

// D - E at level D.level - E.level; requires E <= D
inline DivisorRep subtract_divisors(const DivisorRep& D, const DivisorRep& E) {
    const Curve& X = *D.X;
    require(D.X == E.X, "divisors live on different curves");
    require(D.level > E.level, "subtraction needs a positive output level");
    Subspace sp = X.divide(D.level, D.space, E.level, subspace_rows(E.space));
    if (sp.codim() != D.degree() - E.degree())
        throw domain_error("subtrahend is not a subdivisor");
    return {&X, D.level - E.level, sp};
}

// full space Gamma(L^i(-D)) recovered from a basepoint-free subspace of it
inline Subspace inflate(const Curve& X, unsigned i, const std::vector<Vec>& V,
                        unsigned helper_j = 0) {
    require(!V.empty(), "inflating an empty set of sections");
    unsigned j = helper_j ? helper_j : i + 1;  // (j-i) degL + deg D >= 2g-1 automatically
    require(i + j <= X.trunc(), "inflation exceeds the truncation level");
    Subspace T = X.mult_spans(i, V, j, subspace_rows(X.full_space(j)));
    return X.divide(i + j, T, j, X.bpf_pair(j));
}

// small basepoint-free subspace with the same common divisor as D's space
inline std::vector<Vec> deflate(const DivisorRep& D, Rng& rng) {
    const Curve& X = *D.X;
    size_t cap_dim = std::max<size_t>(
        2, static_cast<size_t>(std::ceil(std::log2(static_cast<double>(D.level) * X.deg_l()))));
    if (D.space.dim() <= 2) return subspace_rows(D.space);
    std::uint64_t cap = trial_cap(16);
    for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
        std::vector<Vec> V{D.space.random_nonzero(rng)};
        while (V.size() < cap_dim) {
            V.push_back(D.space.random_nonzero(rng));
            if (inflate(X, D.level, V) == D.space) return V;
        }
    }
    throw cap_exceeded("deflation found no small generating set");
}

// Is W of the form Gamma(L^2(-D)) for an effective divisor of the expected
// degree?  Saturation round trip: multiply up to level 4 and divide back.
inline bool is_valid_divisor_space(const Curve& X, const Subspace& W, unsigned expected_degree) {
    if (W.ambient() != X.dim(2) || W.codim() != expected_degree) return false;
    if (X.trunc() < 4) throw domain_error("validity test needs truncation level >= 4");
    if (W.dim() == 0) return false;
    Subspace P = X.mult_spans(2, subspace_rows(W), 2, subspace_rows(X.full_space(2)));
    if (P.codim() != expected_degree) return false;
    Subspace back = X.divide(4, P, 2, X.bpf_pair(2));
    return back == W;
}

// gcd (largest common subdivisor), at the common level of the inputs
inline DivisorRep gcd_divisors(const DivisorRep& D, const DivisorRep& E) {
    require(D.X == E.X && D.level == E.level, "gcd needs equal levels on one curve");
    const Curve& X = *D.X;
    // the common divisor of the sum of the spaces is min(D, E); inflation
    // saturates it
    Subspace s = sum(D.space, E.space);
    Subspace full = inflate(X, D.level, subspace_rows(s));
    return {&X, D.level, full};
}

// ---------------------------------------------------------------------------
// decomposition into prime divisors

struct PrimeDivisorData {
    DivisorRep prime;
    unsigned degree = 0;
    unsigned multiplicity = 0;
};

// Gamma(D, L^i) as the canonical quotient of Gamma(L^i) by W, with the
// induced multiplication into the quotient at level 2i.
inline std::vector<PrimeDivisorData> decompose(const DivisorRep& D, Rng& rng) {
    const Curve& X = *D.X;
    unsigned i = D.level;
    unsigned d0 = D.degree();
    require(d0 + 2 * X.genus() <= i * X.deg_l() + 1, "degree too large for decomposition");
    require(2 * i <= X.trunc(), "decomposition needs truncation level 2i");
    if (d0 == 0) return {};

    if (d0 == 1)  // a degree-1 divisor is already prime
        return {PrimeDivisorData{D, 1, 1}};

    const Subspace& Wi = D.space;
    Subspace W2i = change_level(D, 2 * i).space;

    // mu^D on the canonical quotient bases (unit vectors at non-pivot columns)
    auto copiv = Wi.copivots();
    BilinearMap mu;
    mu.k = X.field();
    mu.dimM = d0;
    mu.dimO = d0;
    mu.tensor.assign(d0, std::vector<Vec>(d0));
    for (unsigned a = 0; a < d0; ++a)
        for (unsigned b = a; b < d0; ++b) {
            Vec ea(X.dim(i), X.field().zero()), eb(X.dim(i), X.field().zero());
            ea[copiv[a]] = X.field().one();
            eb[copiv[b]] = X.field().one();
            Vec prod = X.mult_sections(i, ea, i, eb);
            mu.tensor[a][b] = W2i.quotient_coords(prod);
            mu.tensor[b][a] = mu.tensor[a][b];
        }

    // the span of the reconstructed matrices is associative a priori
    auto mats = algebra_from_bilinear_map(mu, rng);
    FiniteAlgebra A = algebra_from_matrix_basis(X.field(), mats, &rng, /*trusted=*/true);
    auto locals = primary_decomposition(A, rng);

    // quotient map Gamma(L^i) -> Gamma(D, L^i)
    Mat Q(X.field(), d0, X.dim(i));
    for (size_t c = 0; c < X.dim(i); ++c) {
        Vec e(X.dim(i), X.field().zero());
        e[c] = X.field().one();
        Vec qc = Wi.quotient_coords(e);
        for (unsigned r = 0; r < d0; ++r) Q.at(r, c) = qc[r];
    }

    std::vector<PrimeDivisorData> out;
    unsigned total = 0;
    for (auto& lf : locals) {
        // ideal of A cutting this prime: kernel of A -> A_t / P_t
        size_t dt = lf.local.dim();
        Mat comp(X.field(), lf.max_ideal.codim(), A.dim());
        for (size_t c = 0; c < A.dim(); ++c) {
            Vec e(A.dim(), X.field().zero());
            e[c] = X.field().one();
            Vec qc = lf.max_ideal.quotient_coords(lf.projection.apply(e));
            for (size_t r = 0; r < qc.size(); ++r) comp.at(r, c) = qc[r];
        }
        Subspace ideal = kernel(comp);

        // P_A * Gamma(D, L^i) inside the quotient
        std::vector<Vec> span_rows;
        for (size_t r = 0; r < ideal.dim(); ++r) {
            // matrix of the ideal element acting on the quotient module
            Mat act(X.field(), d0, d0);
            Vec coords = ideal.basis_row(r);
            for (size_t t = 0; t < A.dim(); ++t)
                if (!coords[t].is_zero())
                    for (unsigned u = 0; u < d0; ++u)
                        for (unsigned v = 0; v < d0; ++v)
                            act.at(u, v) = act.at(u, v) + coords[t] * mats[t].at(u, v);
            for (unsigned s = 0; s < d0; ++s) span_rows.push_back(act.col(s));
        }
        Subspace PM = Subspace::from_rows(X.field(), d0, span_rows);

        Subspace prime_space = preimage(Q, PM);
        check(prime_space.codim() == lf.residue_degree, "prime subspace has wrong degree");
        check(dt % lf.residue_degree == 0, "local dimension not divisible by residue degree");

        PrimeDivisorData pd;
        pd.prime = divisor_from_space(X, i, prime_space);
        pd.degree = static_cast<unsigned>(lf.residue_degree);
        pd.multiplicity = static_cast<unsigned>(dt / lf.residue_degree);
        total += pd.degree * pd.multiplicity;
        out.push_back(std::move(pd));
    }
    check(total == d0, "multiplicities do not add up to the degree");
    return out;
}

}  // namespace picard

#endif
