#ifndef PICARD_LINALG_HPP
#define PICARD_LINALG_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "picard/gf.hpp"

namespace picard {

using Vec = std::vector<FieldElement>;

inline bool vec_is_zero(const Vec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

inline Vec vec_scale(const Vec& a, const FieldElement& c) {
    Vec r = a;
    for (auto& x : r) x = x * c;
    return r;
}

// Dense row-major matrix over a finite field.
class Mat {
public:
    Mat() = default;
    Mat(const Field& F, size_t rows, size_t cols)
        : F_(F), rows_(rows), cols_(cols), a_(rows * cols, F.zero()) {}

    static Mat identity(const Field& F, size_t n) {
        Mat m(F, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = F.one();
        return m;
    }
    static Mat from_rows(const Field& F, size_t cols, const std::vector<Vec>& rows) {
        Mat m(F, rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            check(rows[i].size() == cols, "row length mismatch");
            for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const Field& field() const { return F_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    FieldElement& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const FieldElement& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Vec row(size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
    Vec col(size_t j) const {
        Vec v;
        v.reserve(rows_);
        for (size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
        return v;
    }

    Mat transpose() const {
        Mat t(F_, cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        check(a.cols_ == b.rows_, "matrix product shape mismatch");
        Mat r(a.F_, a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                const FieldElement& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
            }
        return r;
    }

    Vec apply(const Vec& x) const {
        check(x.size() == cols_, "matrix apply shape mismatch");
        Vec r(rows_, F_.zero());
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * x[j];
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    // in-place reduced row echelon form; returns pivot column indices
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t r = 0;
        for (size_t c = 0; c < cols_ && r < rows_; ++c) {
            size_t sel = r;
            while (sel < rows_ && at(sel, c).is_zero()) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            FieldElement inv = at(r, c).inverse();
            for (size_t j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
            for (size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                FieldElement f = at(i, c);
                for (size_t j = c; j < cols_; ++j) at(i, j) = at(i, j) - f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    FieldElement det() const {
        require(rows_ == cols_, "determinant of non-square matrix");
        Mat m = *this;
        FieldElement d = F_.one();
        for (size_t c = 0; c < cols_; ++c) {
            size_t sel = c;
            while (sel < rows_ && m.at(sel, c).is_zero()) ++sel;
            if (sel == rows_) return F_.zero();
            if (sel != c) {
                for (size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(c, j));
                d = -d;
            }
            d = d * m.at(c, c);
            FieldElement inv = m.at(c, c).inverse();
            for (size_t i = c + 1; i < rows_; ++i) {
                if (m.at(i, c).is_zero()) continue;
                FieldElement f = m.at(i, c) * inv;
                for (size_t j = c; j < cols_; ++j) m.at(i, j) = m.at(i, j) - f * m.at(c, j);
            }
        }
        return d;
    }

    std::optional<Mat> inverse() const {
        require(rows_ == cols_, "inverse of non-square matrix");
        Mat aug(F_, rows_, 2 * cols_);
        for (size_t i = 0; i < rows_; ++i) {
            for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = F_.one();
        }
        auto piv = aug.rref();
        if (piv.size() < rows_ || piv.back() >= cols_) return std::nullopt;
        Mat inv(F_, rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

private:
    Field F_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> a_;
};

// A linear subspace of F^n in canonical form: the reduced-row-echelon basis
// matrix is the unique representative, so subspace equality is matrix
// equality.
class Subspace {
public:
    Subspace() = default;

    static Subspace from_rows(const Field& F, size_t ambient, const std::vector<Vec>& rows) {
        Mat m = Mat::from_rows(F, ambient, rows);
        auto piv = m.rref();
        Subspace s;
        s.F_ = F;
        s.ambient_ = ambient;
        s.pivots_ = piv;
        s.basis_ = Mat(F, piv.size(), ambient);
        for (size_t i = 0; i < piv.size(); ++i)
            for (size_t j = 0; j < ambient; ++j) s.basis_.at(i, j) = m.at(i, j);
        return s;
    }
    static Subspace zero_space(const Field& F, size_t ambient) {
        return from_rows(F, ambient, {});
    }
    static Subspace full(const Field& F, size_t ambient) {
        std::vector<Vec> rows;
        for (size_t i = 0; i < ambient; ++i) {
            Vec e(ambient, F.zero());
            e[i] = F.one();
            rows.push_back(std::move(e));
        }
        return from_rows(F, ambient, rows);
    }

    const Field& field() const { return F_; }
    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.rows(); }
    size_t codim() const { return ambient_ - dim(); }
    const Mat& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }
    Vec basis_row(size_t i) const { return basis_.row(i); }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    // canonical residue: v minus its projection onto the subspace, zero at
    // all pivot columns
    Vec reduce(const Vec& v) const {
        check(v.size() == ambient_, "reduce: ambient mismatch");
        Vec r = v;
        for (size_t i = 0; i < basis_.rows(); ++i) {
            FieldElement c = r[pivots_[i]];
            if (c.is_zero()) continue;
            for (size_t j = 0; j < ambient_; ++j) r[j] = r[j] - c * basis_.at(i, j);
        }
        return r;
    }

    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

    bool contains(const Subspace& other) const {
        for (size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_row(i))) return false;
        return true;
    }

    // coordinates with respect to the echelon basis (requires membership)
    Vec coords(const Vec& v) const {
        check(contains(v), "coords: vector not in subspace");
        Vec c;
        c.reserve(dim());
        for (size_t i = 0; i < dim(); ++i) c.push_back(v[pivots_[i]]);
        return c;
    }

    Vec from_coords(const Vec& c) const {
        check(c.size() == dim(), "from_coords: length mismatch");
        Vec v(ambient_, F_.zero());
        for (size_t i = 0; i < dim(); ++i)
            if (!c[i].is_zero())
                for (size_t j = 0; j < ambient_; ++j) v[j] = v[j] + c[i] * basis_.at(i, j);
        return v;
    }

    // indices of the non-pivot columns: the canonical quotient coordinates
    std::vector<size_t> copivots() const {
        std::vector<size_t> out;
        size_t k = 0;
        for (size_t j = 0; j < ambient_; ++j) {
            if (k < pivots_.size() && pivots_[k] == j)
                ++k;
            else
                out.push_back(j);
        }
        return out;
    }

    // canonical coordinates of v in F^n / this
    Vec quotient_coords(const Vec& v) const {
        Vec r = reduce(v);
        Vec out;
        for (size_t j : copivots()) out.push_back(r[j]);
        return out;
    }

    Vec random_vector(Rng& rng) const {
        Vec c;
        c.reserve(dim());
        for (size_t i = 0; i < dim(); ++i) c.push_back(F_.random(rng));
        return from_coords(c);
    }

    Vec random_nonzero(Rng& rng) const {
        require(dim() >= 1, "random nonzero vector of the zero space");
        for (;;) {
            Vec c;
            bool nz = false;
            for (size_t i = 0; i < dim(); ++i) {
                c.push_back(F_.random(rng));
                nz = nz || !c.back().is_zero();
            }
            if (nz) return from_coords(c);
        }
    }

private:
    Field F_;
    size_t ambient_ = 0;
    Mat basis_;
    std::vector<size_t> pivots_;
};

// {x : M x = 0}
inline Subspace kernel(const Mat& M) {
    Mat m = M;
    auto piv = m.rref();
    std::vector<bool> is_pivot(M.cols(), false);
    for (size_t c : piv) is_pivot[c] = true;
    std::vector<Vec> rows;
    for (size_t c = 0; c < M.cols(); ++c) {
        if (is_pivot[c]) continue;
        Vec v(M.cols(), M.field().zero());
        v[c] = M.field().one();
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m.at(i, c);
        rows.push_back(std::move(v));
    }
    return Subspace::from_rows(M.field(), M.cols(), rows);
}

// column space of M, as a subspace of F^rows
inline Subspace image(const Mat& M) {
    std::vector<Vec> rows;
    for (size_t j = 0; j < M.cols(); ++j) rows.push_back(M.col(j));
    return Subspace::from_rows(M.field(), M.rows(), rows);
}

// one solution of M x = v, if any
inline std::optional<Vec> solve(const Mat& M, const Vec& v) {
    require(v.size() == M.rows(), "solve: dimension mismatch");
    Mat aug(M.field(), M.rows(), M.cols() + 1);
    for (size_t i = 0; i < M.rows(); ++i) {
        for (size_t j = 0; j < M.cols(); ++j) aug.at(i, j) = M.at(i, j);
        aug.at(i, M.cols()) = v[i];
    }
    auto piv = aug.rref();
    if (!piv.empty() && piv.back() == M.cols()) return std::nullopt;
    Vec x(M.cols(), M.field().zero());
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(i, M.cols());
    return x;
}

inline Subspace intersect(const Subspace& U, const Subspace& V) {
    require(U.ambient() == V.ambient(), "intersect: ambient mismatch");
    // coefficients a with sum a_i u_i in V
    Mat A(U.field(), U.ambient(), U.dim());
    for (size_t i = 0; i < U.dim(); ++i) {
        Vec r = V.reduce(U.basis_row(i));
        for (size_t j = 0; j < U.ambient(); ++j) A.at(j, i) = r[j];
    }
    Subspace K = kernel(A);
    std::vector<Vec> rows;
    for (size_t i = 0; i < K.dim(); ++i) rows.push_back(U.from_coords(K.basis_row(i)));
    return Subspace::from_rows(U.field(), U.ambient(), rows);
}

inline Subspace sum(const Subspace& U, const Subspace& V) {
    require(U.ambient() == V.ambient(), "sum: ambient mismatch");
    std::vector<Vec> rows;
    for (size_t i = 0; i < U.dim(); ++i) rows.push_back(U.basis_row(i));
    for (size_t i = 0; i < V.dim(); ++i) rows.push_back(V.basis_row(i));
    return Subspace::from_rows(U.field(), U.ambient(), rows);
}

// {x : M x in V}
inline Subspace preimage(const Mat& M, const Subspace& V) {
    require(M.rows() == V.ambient(), "preimage: shape mismatch");
    Mat A(M.field(), M.rows(), M.cols());
    for (size_t j = 0; j < M.cols(); ++j) {
        Vec r = V.reduce(M.col(j));
        for (size_t i = 0; i < M.rows(); ++i) A.at(i, j) = r[i];
    }
    return kernel(A);
}

// Precomputed left inverse of a full-column-rank matrix, for repeated solves.
class LeftInverse {
public:
    LeftInverse() = default;
    explicit LeftInverse(const Mat& A) : rows_(A.rows()), cols_(A.cols()) {
        Mat aug(A.field(), A.rows(), A.cols() + A.rows());
        for (size_t i = 0; i < A.rows(); ++i) {
            for (size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
            aug.at(i, A.cols() + i) = A.field().one();
        }
        auto piv = aug.rref();
        check(piv.size() >= cols_ && piv[cols_ - 1] == cols_ - 1,
              "LeftInverse: matrix does not have full column rank");
        T_ = Mat(A.field(), cols_, rows_);
        for (size_t i = 0; i < cols_; ++i)
            for (size_t j = 0; j < rows_; ++j) T_.at(i, j) = aug.at(i, A.cols() + j);
    }

    // solve A x = b (b must lie in the column space)
    Vec solve(const Vec& b) const { return T_.apply(b); }

private:
    size_t rows_ = 0, cols_ = 0;
    Mat T_;
};

// ---------------------------------------------------------------------------
// change of scalars

// k-basis of a larger field K with a recorded embedding of k, plus
// coordinate maps; used to flatten K-valued data into k-linear algebra.
class RelativeBasis {
public:
    RelativeBasis() = default;
    RelativeBasis(const Field& K, const Field& k) : K_(K), k_(k), Fp_(Field::prime(K.p())) {
        check(K.extends(k), "RelativeBasis: no recorded embedding");
        check(K.degree() % k.degree() == 0, "RelativeBasis: degree mismatch");
        m_ = K.degree() / k.degree();
        std::uint32_t nk = k.degree(), nK = K.degree();
        const Field& Fp = Fp_;

        std::vector<FieldElement> alpha_pows;
        FieldElement a = K_.embed(k.gen());
        FieldElement cur = K_.one();
        for (std::uint32_t r = 0; r < nk; ++r) {
            alpha_pows.push_back(cur);
            cur = cur * a;
        }
        alpha_pows_ = alpha_pows;

        // greedy: extend an F_p-span that is closed under multiplication by k
        std::vector<Vec> span_rows;
        Subspace span = Subspace::zero_space(Fp, nK);
        FieldElement cand = K_.one();
        FieldElement gamma = K_.gen();
        while (beta_.size() < m_) {
            Vec cv = fp_vec(Fp, cand);
            if (!span.contains(cv)) {
                beta_.push_back(cand);
                for (std::uint32_t r = 0; r < nk; ++r)
                    span_rows.push_back(fp_vec(Fp, cand * alpha_pows[r]));
                span = Subspace::from_rows(Fp, nK, span_rows);
            }
            cand = cand * gamma;
        }

        Mat T(Fp, nK, nK);
        for (size_t j = 0; j < m_; ++j)
            for (std::uint32_t r = 0; r < nk; ++r) {
                Vec col = fp_vec(Fp, beta_[j] * alpha_pows[r]);
                for (std::uint32_t i = 0; i < nK; ++i) T.at(i, j * nk + r) = col[i];
            }
        auto inv = T.inverse();
        check(inv.has_value(), "RelativeBasis: basis matrix not invertible");
        Tinv_ = *inv;
    }

    size_t rel_degree() const { return m_; }

    // k-coordinates of xi with respect to the chosen basis
    std::vector<FieldElement> to_k_coords(const FieldElement& xi) const {
        Vec y = Tinv_.apply(fp_vec(Fp_, xi));
        std::uint32_t nk = k_.degree();
        std::vector<FieldElement> out;
        for (size_t j = 0; j < m_; ++j) {
            std::vector<std::uint32_t> c(nk);
            for (std::uint32_t r = 0; r < nk; ++r) c[r] = y[j * nk + r].coeffs()[0];
            out.push_back(k_.element(std::move(c)));
        }
        return out;
    }

    FieldElement from_k_coords(const std::vector<FieldElement>& c) const {
        check(c.size() == m_, "from_k_coords: length mismatch");
        FieldElement acc = K_.zero();
        for (size_t j = 0; j < m_; ++j) acc = acc + K_.embed(c[j]) * beta_[j];
        return acc;
    }

private:
    static Vec fp_vec(const Field& Fp, const FieldElement& x) {
        Vec v;
        for (auto cc : x.coeffs()) v.push_back(Fp.from_int(cc));
        return v;
    }
    Field K_, k_, Fp_;
    size_t m_ = 0;
    std::vector<FieldElement> beta_;
    std::vector<FieldElement> alpha_pows_;
    Mat Tinv_;
};

// inverse of Field::embed on its image: the element of k mapping to x, if any
inline std::optional<FieldElement> unembed(const Field& K, const Field& k, const FieldElement& x) {
    check(K.extends(k), "unembed: no recorded embedding");
    if (K.data() == k.data()) return x;
    Field Fp = Field::prime(K.p());
    Mat M(Fp, K.degree(), k.degree());
    FieldElement img = K.embed(k.gen());
    FieldElement cur = K.one();
    for (std::uint32_t r = 0; r < k.degree(); ++r) {
        for (std::uint32_t i = 0; i < K.degree(); ++i) M.at(i, r) = Fp.from_int(cur.coeffs()[i]);
        cur = cur * img;
    }
    Vec rhs;
    for (auto c : x.coeffs()) rhs.push_back(Fp.from_int(c));
    auto sol = solve(M, rhs);
    if (!sol.has_value()) return std::nullopt;
    std::vector<std::uint32_t> out;
    for (auto& c : *sol) out.push_back(c.coeffs()[0]);
    return k.element(std::move(out));
}

// embed a subspace over k into K coefficient-wise (echelon form is preserved)
inline Subspace embed_subspace(const Subspace& S, const Field& K) {
    std::vector<Vec> rows;
    for (size_t i = 0; i < S.dim(); ++i) {
        Vec r;
        for (auto& x : S.basis_row(i)) r.push_back(K.embed(x));
        rows.push_back(std::move(r));
    }
    return Subspace::from_rows(K, S.ambient(), rows);
}

// {v in k^N : embed(v) in W}, for W a subspace of K^N over an extension K
// of k.  Computed over the prime field and regrouped into k-vectors.
inline Subspace rational_points_of_subspace(const Subspace& W, const Field& k) {
    const Field& K = W.field();
    check(K.extends(k), "rational points: no recorded embedding");
    size_t N = W.ambient();
    std::uint32_t nk = k.degree(), nK = K.degree();
    Field Fp = Field::prime(K.p());

    // residues of the ambient unit vectors modulo W
    std::vector<Vec> res;
    for (size_t j = 0; j < N; ++j) {
        Vec e(N, K.zero());
        e[j] = K.one();
        res.push_back(W.reduce(e));
    }
    FieldElement a = K.embed(k.gen());
    std::vector<FieldElement> alpha_pows;
    {
        FieldElement cur = K.one();
        for (std::uint32_t r = 0; r < nk; ++r) {
            alpha_pows.push_back(cur);
            cur = cur * a;
        }
    }

    Mat A(Fp, N * nK, N * nk);
    for (size_t j = 0; j < N; ++j)
        for (std::uint32_t r = 0; r < nk; ++r) {
            size_t colidx = j * nk + r;
            for (size_t i = 0; i < N; ++i) {
                FieldElement val = alpha_pows[r] * res[j][i];
                const auto& cc = val.coeffs();
                for (std::uint32_t t = 0; t < nK; ++t)
                    A.at(i * nK + t, colidx) = Fp.from_int(cc[t]);
            }
        }
    Subspace Kker = kernel(A);

    std::vector<Vec> rows;
    for (size_t i = 0; i < Kker.dim(); ++i) {
        Vec fpv = Kker.basis_row(i);
        Vec kv;
        for (size_t j = 0; j < N; ++j) {
            std::vector<std::uint32_t> c(nk);
            for (std::uint32_t r = 0; r < nk; ++r) c[r] = fpv[j * nk + r].coeffs()[0];
            kv.push_back(k.element(std::move(c)));
        }
        rows.push_back(std::move(kv));
    }
    return Subspace::from_rows(k, N, rows);
}

}  // namespace picard

#endif
