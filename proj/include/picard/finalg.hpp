#ifndef PICARD_FINALG_HPP
#define PICARD_FINALG_HPP

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "picard/linalg.hpp"

namespace picard {

// Process-wide cache of auxiliary extensions keyed by the exact base field
// instance.  The defining polynomial is found once with a fixed seed, so the
// cached field is the same in every run.
inline Field cached_extension(const Field& base, unsigned degree) {
    static std::mutex mu;
    static std::map<std::pair<const FieldData*, unsigned>, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(base.data(), degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Rng rng(0xabcdef12u + 0x9e37u * degree);
    Field K = make_extension(base, degree, rng);
    cache.emplace(key, K);
    return K;
}

// Finite commutative k-algebra given by structure constants on a basis
// e_1..e_d.  Construction validates commutativity, associativity (all basis
// triples for d <= 12, sampled above) and the identity element.  Internal
// constructions that are associative a priori (spans of commuting matrices)
// pass trusted = true to skip the cubic associativity sweep.
class FiniteAlgebra {
public:
    FiniteAlgebra() = default;
    FiniteAlgebra(const Field& k, std::vector<std::vector<Vec>> table, Vec one, Rng* rng = nullptr,
                  bool trusted = false)
        : k_(k), d_(table.size()), c_(std::move(table)), one_(std::move(one)) {
        validate(rng, trusted);
    }

    const Field& field() const { return k_; }
    size_t dim() const { return d_; }
    const Vec& one() const { return one_; }

    Vec mul(const Vec& a, const Vec& b) const {
        Vec r(d_, k_.zero());
        for (size_t i = 0; i < d_; ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < d_; ++j) {
                if (b[j].is_zero()) continue;
                FieldElement f = a[i] * b[j];
                for (size_t t = 0; t < d_; ++t) r[t] = r[t] + f * c_[i][j][t];
            }
        }
        return r;
    }

    Mat mult_matrix(const Vec& a) const {
        Mat m(k_, d_, d_);
        for (size_t j = 0; j < d_; ++j) {
            Vec ej(d_, k_.zero());
            ej[j] = k_.one();
            Vec col = mul(a, ej);
            for (size_t i = 0; i < d_; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    bool is_unit(const Vec& a) const { return mult_matrix(a).inverse().has_value(); }

    Vec random_element(Rng& rng) const {
        Vec v;
        for (size_t i = 0; i < d_; ++i) v.push_back(k_.random(rng));
        return v;
    }

    // minimal polynomial of a as an element of the algebra (Krylov)
    Poly min_poly(const Vec& a) const {
        std::vector<Vec> pows{one_};
        Vec cur = one_;
        for (size_t i = 1; i <= d_ + 1; ++i) {
            cur = mul(cur, a);
            Subspace sp = Subspace::from_rows(k_, d_, pows);
            if (sp.contains(cur)) {
                Mat M(k_, d_, pows.size());
                for (size_t c = 0; c < pows.size(); ++c)
                    for (size_t r = 0; r < d_; ++r) M.at(r, c) = pows[c][r];
                auto sol = solve(M, cur);
                check(sol.has_value(), "min_poly: solve failed");
                std::vector<FieldElement> coeffs;
                for (auto& x : *sol) coeffs.push_back(-x);
                coeffs.push_back(k_.one());
                return Poly(k_, std::move(coeffs));
            }
            pows.push_back(cur);
        }
        throw internal_error("min_poly: no dependency up to dimension");
    }

    Vec eval_poly(const Poly& f, const Vec& a) const {
        Vec acc(d_, k_.zero());
        for (int i = f.degree(); i >= 0; --i) {
            acc = mul(acc, a);
            FieldElement ci = f.coeff(i);
            if (!ci.is_zero())
                for (size_t t = 0; t < d_; ++t) acc[t] = acc[t] + ci * one_[t];
        }
        return acc;
    }

    // nilradical, computed over the prime field as the kernel of x -> x^(p^m)
    // with p^m >= d (the map is additive in characteristic p)
    Subspace radical() const {
        std::uint32_t p = k_.p(), nk = k_.degree();
        unsigned m = 0;
        std::uint64_t pm = 1;
        while (pm < d_) {
            pm *= p;
            ++m;
        }
        Field Fp = Field::prime(p);
        Mat A(Fp, nk * d_, nk * d_);
        for (size_t j = 0; j < d_; ++j)
            for (std::uint32_t r = 0; r < nk; ++r) {
                Vec x(d_, k_.zero());
                std::vector<std::uint32_t> cc(nk, 0);
                cc[r] = 1;
                x[j] = k_.element(std::move(cc));
                Vec y = x;
                for (unsigned t = 0; t < m; ++t) y = pow_vec(y, p);
                for (size_t i = 0; i < d_; ++i) {
                    const auto& co = y[i].coeffs();
                    for (std::uint32_t t = 0; t < nk; ++t)
                        A.at(i * nk + t, j * nk + r) = Fp.from_int(co[t]);
                }
            }
        Subspace ker = kernel(A);
        // regroup the F_p-kernel into k-vectors; the radical is a k-subspace
        std::vector<Vec> rows;
        for (size_t i = 0; i < ker.dim(); ++i) {
            Vec fp = ker.basis_row(i);
            Vec kv;
            for (size_t j = 0; j < d_; ++j) {
                std::vector<std::uint32_t> cc(nk);
                for (std::uint32_t r = 0; r < nk; ++r) cc[r] = fp[j * nk + r].coeffs()[0];
                kv.push_back(k_.element(std::move(cc)));
            }
            rows.push_back(std::move(kv));
        }
        Subspace rad = Subspace::from_rows(k_, d_, rows);
        check(rad.dim() * nk == ker.dim(), "radical is not a k-subspace");
        return rad;
    }

private:
    Vec pow_vec(const Vec& a, std::uint64_t e) const {
        Vec r = one_, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    void validate(Rng* rng, bool trusted) const {
        require(d_ >= 1 && one_.size() == d_, "algebra must have positive dimension");
        for (size_t i = 0; i < d_; ++i)
            for (size_t j = 0; j < d_; ++j)
                require(c_[i][j] == c_[j][i], "structure constants not commutative");
        auto basis = [&](size_t i) {
            Vec e(d_, k_.zero());
            e[i] = k_.one();
            return e;
        };
        for (size_t i = 0; i < d_; ++i)
            require(mul(one_, basis(i)) == basis(i), "identity element fails to act as identity");
        if (trusted) return;
        if (d_ <= 12) {
            for (size_t i = 0; i < d_; ++i)
                for (size_t j = 0; j < d_; ++j)
                    for (size_t t = 0; t < d_; ++t)
                        require(mul(mul(basis(i), basis(j)), basis(t)) ==
                                    mul(basis(i), mul(basis(j), basis(t))),
                                "structure constants not associative");
        } else if (rng) {
            for (int s = 0; s < 64; ++s) {
                Vec a = random_element(*rng), b = random_element(*rng), c = random_element(*rng);
                require(mul(mul(a, b), c) == mul(a, mul(b, c)),
                        "structure constants not associative");
            }
        }
    }

    Field k_;
    size_t d_ = 0;
    std::vector<std::vector<Vec>> c_;
    Vec one_;
};

// One local factor of a primary decomposition: the projection out of the
// ambient algebra, the factor itself, and its maximal ideal.
struct LocalFactor {
    Mat projection;           // dim(local) x dim(A)
    FiniteAlgebra local;
    Subspace max_ideal;       // subspace of the local factor
    size_t residue_degree = 0;
};

namespace detail {

// subalgebra eps*A for an idempotent eps, with projection matrix
inline std::pair<FiniteAlgebra, Mat> idempotent_component(const FiniteAlgebra& A, const Vec& eps) {
    Mat Me = A.mult_matrix(eps);
    Subspace im = image(Me);
    size_t dd = im.dim();
    std::vector<std::vector<Vec>> table(dd, std::vector<Vec>(dd));
    for (size_t i = 0; i < dd; ++i)
        for (size_t j = 0; j < dd; ++j)
            table[i][j] = im.coords(A.mul(im.basis_row(i), im.basis_row(j)));
    Vec one_local = im.coords(A.mul(eps, eps));
    Mat proj(A.field(), dd, A.dim());
    for (size_t j = 0; j < A.dim(); ++j) {
        Vec ej(A.dim(), A.field().zero());
        ej[j] = A.field().one();
        Vec col = im.coords(A.mul(eps, ej));
        for (size_t i = 0; i < dd; ++i) proj.at(i, j) = col[i];
    }
    return {FiniteAlgebra(A.field(), std::move(table), std::move(one_local)), proj};
}

// split A along a coprime factorization of the minimal polynomial of b,
// if one exists; the idempotent is exact because uv kills b
inline bool try_split(const FiniteAlgebra& A, const Vec& b, Rng& rng,
                      std::pair<Vec, Vec>* out_idem) {
    Poly m = A.min_poly(b);
    auto fac = factor_poly(m, rng);
    if (fac.size() < 2) return false;
    Poly u = Poly::one(A.field());
    for (unsigned i = 0; i < fac[0].second; ++i) u = u * fac[0].first;
    Poly v = m / u;
    Poly s, t;
    Poly g = Poly::xgcd(u, v, s, t);
    check(g.is_one(), "coprime factors with nontrivial gcd");
    Vec eps = A.eval_poly(t * v, b);
    check(A.mul(eps, eps) == eps, "split element is not idempotent");
    Vec co = A.one();
    for (size_t i = 0; i < co.size(); ++i) co[i] = co[i] - eps[i];
    check(!vec_is_zero(eps) && !vec_is_zero(co), "trivial idempotent in split");
    *out_idem = {eps, co};
    return true;
}

}  // namespace detail

// Primary decomposition: repeatedly split off exact idempotents found from
// minimal polynomials of basis and random elements; a piece is certified
// local once its residue ring modulo the nilradical is seen to be a field.
inline std::vector<LocalFactor> primary_decomposition(const FiniteAlgebra& A, Rng& rng) {
    if (A.dim() == 1) {
        LocalFactor lf;
        lf.projection = Mat::identity(A.field(), 1);
        lf.local = A;
        lf.max_ideal = Subspace::zero_space(A.field(), 1);
        lf.residue_degree = 1;
        return {lf};
    }

    auto recurse_on = [&](const std::pair<Vec, Vec>& idem) {
        std::vector<LocalFactor> out;
        for (const Vec& e : {idem.first, idem.second}) {
            auto [sub, proj] = detail::idempotent_component(A, e);
            for (LocalFactor& lf : primary_decomposition(sub, rng)) {
                lf.projection = lf.projection * proj;
                out.push_back(std::move(lf));
            }
        }
        return out;
    };

    std::pair<Vec, Vec> idem;
    for (size_t i = 0; i < A.dim(); ++i) {
        Vec e(A.dim(), A.field().zero());
        e[i] = A.field().one();
        if (detail::try_split(A, e, rng, &idem)) return recurse_on(idem);
    }

    Subspace rad = A.radical();
    size_t qdim = A.dim() - rad.dim();
    auto make_local = [&]() {
        LocalFactor lf;
        lf.projection = Mat::identity(A.field(), A.dim());
        lf.local = A;
        lf.max_ideal = rad;
        lf.residue_degree = qdim;
        return std::vector<LocalFactor>{lf};
    };
    if (qdim == 1) return make_local();

    // quotient algebra A / rad
    auto copiv = rad.copivots();
    auto lift = [&](const Vec& qv) {
        Vec v(A.dim(), A.field().zero());
        for (size_t i = 0; i < copiv.size(); ++i) v[copiv[i]] = qv[i];
        return v;
    };
    std::vector<std::vector<Vec>> qtable(qdim, std::vector<Vec>(qdim));
    for (size_t i = 0; i < qdim; ++i)
        for (size_t j = 0; j < qdim; ++j) {
            Vec ei(qdim, A.field().zero()), ej(qdim, A.field().zero());
            ei[i] = A.field().one();
            ej[j] = A.field().one();
            qtable[i][j] = rad.quotient_coords(A.mul(lift(ei), lift(ej)));
        }
    FiniteAlgebra Q(A.field(), std::move(qtable), rad.quotient_coords(A.one()));

    std::uint64_t cap = trial_cap(8 * A.dim());
    for (std::uint64_t it = 0; it < cap; ++it) {
        Vec c = Q.random_element(rng);
        Poly m = Q.min_poly(c);
        auto fac = factor_poly(m, rng);
        if (fac.size() >= 2) {
            // a splitting element of the quotient lifts to a splitting
            // element of A: the lift's minimal polynomial keeps both factors
            bool ok = detail::try_split(A, lift(c), rng, &idem);
            check(ok, "lifted element failed to split");
            return recurse_on(idem);
        }
        if (fac[0].second == 1 && static_cast<size_t>(fac[0].first.degree()) == qdim)
            return make_local();  // residue ring certified to be a field
    }
    throw cap_exceeded("primary decomposition: no progress within trial cap");
}

// ---------------------------------------------------------------------------
// reconstructing an algebra from a perfect bilinear map

// mu : M x N -> O, given by its coefficient tensor on fixed bases; dim M =
// dim N, and some commutative algebra A makes all three free of rank 1 with
// mu perfect.
struct BilinearMap {
    Field k;
    size_t dimM = 0, dimO = 0;
    std::vector<std::vector<Vec>> tensor;  // tensor[i][j] = mu(m_i, n_j) in O

    Vec apply(const Vec& m, const Vec& n) const {
        Vec r(dimO, k.zero());
        for (size_t i = 0; i < dimM; ++i) {
            if (m[i].is_zero()) continue;
            for (size_t j = 0; j < dimM; ++j) {
                if (n[j].is_zero()) continue;
                FieldElement f = m[i] * n[j];
                for (size_t t = 0; t < dimO; ++t) r[t] = r[t] + f * tensor[i][j][t];
            }
        }
        return r;
    }

    // matrix of mu(., n) : M -> O
    Mat right_matrix(const Vec& n) const {
        Mat A(k, dimO, dimM);
        for (size_t i = 0; i < dimM; ++i) {
            Vec ei(dimM, k.zero());
            ei[i] = k.one();
            Vec col = apply(ei, n);
            for (size_t t = 0; t < dimO; ++t) A.at(t, i) = col[t];
        }
        return A;
    }

    BilinearMap base_extend(const Field& K) const {
        BilinearMap out;
        out.k = K;
        out.dimM = dimM;
        out.dimO = dimO;
        out.tensor.assign(dimM, std::vector<Vec>(dimM));
        for (size_t i = 0; i < dimM; ++i)
            for (size_t j = 0; j < dimM; ++j) {
                Vec v;
                for (auto& x : tensor[i][j]) v.push_back(K.embed(x));
                out.tensor[i][j] = v;
            }
        return out;
    }
};

namespace detail {

// common core: given an invertible mu(., g), produce the endomorphisms a_n
inline std::vector<Mat> endomorphisms_from_generator(const BilinearMap& mu, const Mat& Rg_inv) {
    std::vector<Mat> out;
    for (size_t j = 0; j < mu.dimM; ++j) {
        Vec ej(mu.dimM, mu.k.zero());
        ej[j] = mu.k.one();
        out.push_back(Rg_inv * mu.right_matrix(ej));
    }
    return out;
}

inline Vec flatten(const Mat& m) {
    Vec v;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
    return v;
}

}  // namespace detail

// Reconstruct the image of A in End_k(M) from a perfect bilinear map over a
// finite field; base-extends so that random elements of N generate with
// probability at least 1/2, then intersects back with End_k M.
inline std::vector<Mat> algebra_from_bilinear_map(const BilinearMap& mu, Rng& rng) {
    const Field& k = mu.k;
    size_t d = mu.dimM;
    require(d >= 1, "empty module");

    // degree of the auxiliary extension: ceil(log max(2d, q) / log q)
    unsigned ext = 1;
    {
        std::uint64_t target = std::max<std::uint64_t>(2 * d, k.q());
        std::uint64_t have = k.q();
        while (have < target) {
            have *= k.q();
            ++ext;
        }
    }
    Field K = ext == 1 ? k : cached_extension(k, ext);
    BilinearMap muK = ext == 1 ? mu : mu.base_extend(K);

    std::uint64_t cap = trial_cap(2);
    Mat Rg_inv;
    bool found = false;
    for (std::uint64_t it = 0; it < cap && !found; ++it) {
        Vec g;
        for (size_t i = 0; i < d; ++i) g.push_back(K.random(rng));
        auto inv = muK.right_matrix(g).inverse();
        if (inv.has_value()) {
            Rg_inv = *inv;
            found = true;
        }
    }
    if (!found) throw cap_exceeded("no generator of N found (is mu perfect?)");

    std::vector<Mat> aK = detail::endomorphisms_from_generator(muK, Rg_inv);
    if (ext == 1) {
        // already over k: echelonize for a canonical basis
        std::vector<Vec> rows;
        for (auto& m : aK) rows.push_back(detail::flatten(m));
        Subspace sp = Subspace::from_rows(k, d * d, rows);
        check(sp.dim() == d, "reconstructed algebra has wrong dimension");
        std::vector<Mat> out;
        for (size_t i = 0; i < d; ++i) {
            Mat m(k, d, d);
            Vec r = sp.basis_row(i);
            for (size_t a = 0; a < d; ++a)
                for (size_t b = 0; b < d; ++b) m.at(a, b) = r[a * d + b];
            out.push_back(std::move(m));
        }
        return out;
    }

    std::vector<Vec> rows;
    for (auto& m : aK) rows.push_back(detail::flatten(m));
    Subspace spK = Subspace::from_rows(K, d * d, rows);
    Subspace spk = rational_points_of_subspace(spK, k);
    check(spk.dim() == d, "reconstructed algebra has wrong dimension over k");
    std::vector<Mat> out;
    for (size_t i = 0; i < d; ++i) {
        Mat m(k, d, d);
        Vec r = spk.basis_row(i);
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) m.at(a, b) = r[a * d + b];
        out.push_back(std::move(m));
    }
    return out;
}

// Large-field variant: g is drawn with coefficients from an explicit subset
// Sigma of k with #Sigma >= 2 dim M; no base extension, no intersection.
inline std::vector<Mat> algebra_from_bilinear_map_sigma(const BilinearMap& mu,
                                                        const std::vector<FieldElement>& sigma,
                                                        Rng& rng) {
    require(sigma.size() >= 2 * mu.dimM, "Sigma must have at least 2 dim(M) elements");
    std::uint64_t cap = trial_cap(2);
    for (std::uint64_t it = 0; it < cap; ++it) {
        Vec g;
        for (size_t i = 0; i < mu.dimM; ++i) g.push_back(sigma[rng.below(sigma.size())]);
        auto inv = mu.right_matrix(g).inverse();
        if (!inv.has_value()) continue;
        return detail::endomorphisms_from_generator(mu, *inv);
    }
    throw cap_exceeded("no Sigma-combination generates N");
}

// Build a FiniteAlgebra from a basis of commuting matrices that spans a
// multiplicatively closed space containing the identity.
inline FiniteAlgebra algebra_from_matrix_basis(const Field& k, const std::vector<Mat>& basis,
                                               Rng* rng = nullptr, bool trusted = false) {
    size_t d = basis.size();
    size_t amb = basis[0].rows() * basis[0].cols();
    Mat C(k, amb, d);
    for (size_t j = 0; j < d; ++j) {
        Vec f = detail::flatten(basis[j]);
        for (size_t i = 0; i < amb; ++i) C.at(i, j) = f[i];
    }
    LeftInverse L(C);
    auto coords_of = [&](const Mat& m) {
        Vec f = detail::flatten(m);
        Vec x = L.solve(f);
        check(C.apply(x) == f, "product not in the span of the matrix basis");
        return x;
    };
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) table[i][j] = coords_of(basis[i] * basis[j]);
    Vec one = coords_of(Mat::identity(k, basis[0].rows()));
    return FiniteAlgebra(k, std::move(table), std::move(one), rng, trusted);
}

}  // namespace picard

#endif
