#ifndef PICARD_CURVE_HPP
#define PICARD_CURVE_HPP

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "picard/linalg.hpp"
#include "picard/zeta.hpp"

namespace picard {

// The truncated homogeneous coordinate ring of a curve embedded by a line
// bundle L of degree >= 2g+1: the graded pieces Gamma(X, L^i) for i <= h,
// with multiplication done pointwise at a fixed evaluation divisor.
//
// Sections are always handled as coordinate vectors with respect to fixed
// monomial bases (so base change and Frobenius act coefficient-wise); the
// evaluation data is internal machinery only.
//
// Supported models:
//   p1             X = P^1, L = O(d); basis of Gamma(L^i): u^(di-t) v^t
//   elliptic       Weierstrass curve, L = O(3m * infinity)
//   hyperelliptic  y^2 = f(x), f squarefree of odd degree 2g+1, char != 2,
//                  L = O((2g+1)m * infinity)
// For the two affine models the basis of Gamma(L^i) is x^a y^b with
// 2a + (2g+1)b <= i degL and b <= 1, ordered by pole order at infinity.
class Curve {
public:
    enum class Kind { p1, elliptic, hyperelliptic };

    struct AffinePoint {
        FieldElement x, y;
    };

    static Curve p1(const Field& k, unsigned d, unsigned h) {
        require(d >= 1, "p1: d must be >= 1");
        Curve c;
        c.kind_ = Kind::p1;
        c.k_ = k;
        c.g_ = 0;
        c.degL_ = d;
        c.h_ = std::max(h, 2u);
        c.finish_setup();
        return c;
    }

    // a = (a1, a2, a3, a4, a6)
    static Curve elliptic(const Field& k, const std::array<FieldElement, 5>& a, unsigned h,
                          unsigned multiplier = 1) {
        require(multiplier >= 1, "elliptic: multiplier must be >= 1");
        Curve c;
        c.kind_ = Kind::elliptic;
        c.k_ = k;
        c.g_ = 1;
        c.degL_ = 3 * multiplier;
        c.h_ = std::max(h, 2u);
        c.a_ = a;
        require(!c.elliptic_discriminant().is_zero(), "elliptic: singular Weierstrass equation");
        c.finish_setup();
        return c;
    }

    static Curve hyperelliptic(const Field& k, const Poly& f, unsigned h, unsigned multiplier = 1) {
        require(k.p() != 2, "hyperelliptic: characteristic 2 not supported");
        require(f.degree() >= 3 && f.degree() % 2 == 1, "hyperelliptic: f must have odd degree >= 3");
        Poly g = Poly::gcd(f, f.derivative());
        require(g.degree() == 0, "hyperelliptic: f must be squarefree");
        Curve c;
        c.kind_ = Kind::hyperelliptic;
        c.k_ = k;
        c.g_ = static_cast<unsigned>((f.degree() - 1) / 2);
        c.degL_ = static_cast<unsigned>(f.degree()) * multiplier;
        c.h_ = std::max(h, 2u);
        c.f_ = f;
        c.finish_setup();
        return c;
    }

    Kind kind() const { return kind_; }
    const Field& field() const { return k_; }
    unsigned genus() const { return g_; }
    unsigned deg_l() const { return degL_; }
    unsigned trunc() const { return h_; }
    const std::array<FieldElement, 5>& weierstrass() const { return a_; }
    const Poly& hyper_poly() const { return f_; }

    size_t dim(unsigned i) const {
        require(i >= 1 && i <= h_, "graded degree out of range");
        return static_cast<size_t>(i) * degL_ + 1 - g_;
    }

    Subspace full_space(unsigned i) const { return Subspace::full(k_, dim(i)); }

    // same curve over an extension field (recorded embedding required)
    Curve base_change(const Field& K) const {
        require(K.extends(k_), "base_change: field does not extend the base");
        switch (kind_) {
            case Kind::p1:
                return p1(K, degL_, h_);
            case Kind::elliptic: {
                std::array<FieldElement, 5> a;
                for (int i = 0; i < 5; ++i) a[i] = K.embed(a_[i]);
                return elliptic(K, a, h_, degL_ / 3);
            }
            case Kind::hyperelliptic: {
                std::vector<FieldElement> c;
                for (auto& x : f_.coeffs()) c.push_back(K.embed(x));
                return hyperelliptic(K, Poly(K, std::move(c)), h_,
                                     degL_ / static_cast<unsigned>(f_.degree()));
            }
        }
        throw internal_error("unreachable");
    }

    // --- section arithmetic -------------------------------------------------

    // coordinates of s*t in Gamma(L^(i+j))
    Vec mult_sections(unsigned i, const Vec& s, unsigned j, const Vec& t) const {
        auto vs = section_values(i, s);
        auto vt = section_values(j, t);
        for (size_t P = 0; P < ev_.N; ++P) vs[P] = vs[P] * vt[P];
        return coords_from_values(i + j, vs);
    }

    // echelonized span of all pairwise products of the given section lists
    Subspace mult_spans(unsigned i, const std::vector<Vec>& A, unsigned j,
                        const std::vector<Vec>& B) const {
        require(i + j <= h_, "product exceeds the truncation level");
        std::vector<std::vector<FieldElement>> va, vb;
        for (auto& s : A) va.push_back(section_values(i, s));
        for (auto& t : B) vb.push_back(section_values(j, t));
        std::vector<Vec> rows;
        std::vector<FieldElement> prod(ev_.N, ev_.K.zero());
        for (auto& x : va)
            for (auto& y : vb) {
                for (size_t P = 0; P < ev_.N; ++P) prod[P] = x[P] * y[P];
                rows.push_back(coords_from_values(i + j, prod));
            }
        return Subspace::from_rows(k_, dim(i + j), rows);
    }

    Subspace mult_spans(unsigned i, const Subspace& A, unsigned j, const Subspace& B) const {
        std::vector<Vec> ra, rb;
        for (size_t t = 0; t < A.dim(); ++t) ra.push_back(A.basis_row(t));
        for (size_t t = 0; t < B.dim(); ++t) rb.push_back(B.basis_row(t));
        return mult_spans(i, ra, j, rb);
    }

    // {s in Gamma(L^i) : s v in T for all v in divisor_basis}, where T lives
    // in Gamma(L^(i+j)) and divisor_basis in Gamma(L^j)
    Subspace divide(unsigned target_level, const Subspace& T, unsigned j,
                    const std::vector<Vec>& divisor_basis) const {
        require(target_level > j, "divide: output level must be positive");
        unsigned i = target_level - j;
        require(T.ambient() == dim(target_level), "divide: target has wrong ambient");
        size_t di = dim(i);
        std::vector<std::vector<FieldElement>> vv;
        for (auto& v : divisor_basis) vv.push_back(section_values(j, v));
        auto copiv_count = T.codim();
        Mat M(k_, divisor_basis.size() * copiv_count, di);
        std::vector<FieldElement> prod(ev_.N, ev_.K.zero());
        for (size_t b = 0; b < di; ++b) {
            const auto& vb = ev_.vals[i - 1][b];
            for (size_t vi = 0; vi < vv.size(); ++vi) {
                for (size_t P = 0; P < ev_.N; ++P) prod[P] = vb[P] * vv[vi][P];
                Vec w = coords_from_values(i + j, prod);
                Vec qc = T.quotient_coords(w);
                for (size_t r = 0; r < copiv_count; ++r) M.at(vi * copiv_count + r, b) = qc[r];
            }
        }
        return kernel(M);
    }

    // fixed 2-dimensional basepoint-free subspace of Gamma(L^j) with common
    // divisor zero, used as the division helper
    std::vector<Vec> bpf_pair(unsigned j) const {
        unsigned m = j * degL_;
        size_t dj = dim(j);
        Vec s1(dj, k_.zero()), s2(dj, k_.zero());
        if (kind_ == Kind::p1) {
            s1[0] = k_.one();       // u^m : vanishes only where u = 0
            s2[dj - 1] = k_.one();  // v^m : vanishes only at infinity
        } else {
            // "1" (vanishes only at infinity) and a monomial of exact pole
            // order m (vanishes only at affine points)
            s1[0] = k_.one();
            unsigned wy = 2 * g_ + 1;
            unsigned a, b;
            if (m % 2 == 0) {
                a = m / 2;
                b = 0;
            } else {
                a = (m - wy) / 2;
                b = 1;
            }
            size_t idx = monomial_index(j, a, b);
            s2[idx] = k_.one();
        }
        return {s1, s2};
    }

    // --- divisors from explicit points ---------------------------------------

    // p1: divisor sum of (a_t : 1) with multiplicities plus r * infinity
    Subspace p1_divisor(unsigned i, const std::vector<std::pair<FieldElement, unsigned>>& affine,
                        unsigned inf_mult) const {
        require(kind_ == Kind::p1, "p1_divisor on a non-rational curve");
        unsigned m = i * degL_;
        size_t di = dim(i);
        std::vector<Vec> conds;
        // order >= r at infinity: v^r | s, i.e. the first r coefficients vanish
        for (unsigned t = 0; t < inf_mult; ++t) {
            Vec c(di, k_.zero());
            c[t] = k_.one();
            conds.push_back(c);
        }
        for (auto& [a, r] : affine) {
            // Taylor coefficients of s(u,1) at u = a: shift by a
            // s(u,1) = sum_t c_t u^(m-t); coefficient of w^e in s(w+a,1) is
            // sum_t c_t C(m-t, e) a^(m-t-e)
            for (unsigned e = 0; e < r; ++e) {
                Vec c(di, k_.zero());
                for (unsigned t = 0; t <= m; ++t) {
                    unsigned du = m - t;
                    if (du < e) continue;
                    std::uint64_t binom = binom_mod_p(du, e);
                    if (binom == 0) continue;
                    c[t] = k_.from_int(binom) * a.pow(du - e);
                }
                conds.push_back(c);
            }
        }
        return conditions_to_subspace(i, conds);
    }

    // elliptic / hyperelliptic: divisor P + r * infinity with P an optional
    // affine rational point (multiplicity 1)
    Subspace simple_divisor(unsigned i, const std::optional<AffinePoint>& affine,
                            unsigned inf_mult) const {
        require(kind_ != Kind::p1, "simple_divisor: use p1_divisor on P^1");
        size_t di = dim(i);
        unsigned m = i * degL_;
        std::vector<Vec> conds;
        // order at infinity of x^a y^b is m - 2a - (2g+1)b, all distinct:
        // order >= r kills the monomials of pole order > m - r
        if (inf_mult > 0) {
            for (size_t b = 0; b < di; ++b) {
                unsigned pole = 2 * mono_[i - 1][b].first + (2 * g_ + 1) * mono_[i - 1][b].second;
                if (pole > m - inf_mult) {
                    Vec c(di, k_.zero());
                    c[b] = k_.one();
                    conds.push_back(c);
                }
            }
        }
        if (affine.has_value()) {
            Vec c(di, k_.zero());
            for (size_t b = 0; b < di; ++b)
                c[b] = affine->x.pow(mono_[i - 1][b].first) *
                       affine->y.pow(mono_[i - 1][b].second);
            conds.push_back(c);
        }
        return conditions_to_subspace(i, conds);
    }

    // --- points and counting --------------------------------------------------

    // all affine points over an extension K of the base field, in a
    // deterministic order (x by index, then y by element order)
    std::vector<AffinePoint> affine_points(const Field& K, Rng& rng) const {
        require(kind_ != Kind::p1, "affine_points: meaningful for the affine models only");
        std::vector<AffinePoint> pts;
        for (std::uint64_t ix = 0; ix < K.q(); ++ix) {
            FieldElement x0 = K.from_index(ix);
            for (auto& y0 : y_roots(K, x0, rng)) pts.push_back({x0, y0});
        }
        return pts;
    }

    std::int64_t count_points(unsigned e) const {
        require(std::pow(static_cast<double>(k_.q()), e) <= 5e4,
                "point counting limited to q^e <= 5*10^4");
        Rng rng(0x9e3779b9u ^ e);
        if (kind_ == Kind::p1) {
            std::int64_t qe = 1;
            for (unsigned t = 0; t < e; ++t) qe *= static_cast<std::int64_t>(k_.q());
            return qe + 1;
        }
        Field K = e == 1 ? k_ : make_extension(k_, e, rng);
        std::int64_t n = 1;  // the point at infinity
        for (std::uint64_t ix = 0; ix < K.q(); ++ix)
            n += static_cast<std::int64_t>(y_roots(K, K.from_index(ix), rng).size());
        return n;
    }

    const ZetaData& zeta() const {
        if (!zeta_.has_value()) {
            std::vector<std::int64_t> counts;
            for (unsigned e = 1; e <= g_; ++e) counts.push_back(count_points(e));
            zeta_ = ZetaData::from_point_counts(k_.q(), g_, counts);
        }
        return *zeta_;
    }

    // y-coordinates over K of the affine points above x0
    std::vector<FieldElement> y_roots(const Field& K, const FieldElement& x0, Rng& rng) const {
        if (kind_ == Kind::elliptic) {
            // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6)
            FieldElement c1 = K.embed(a_[0]) * x0 + K.embed(a_[2]);
            FieldElement c0 = ((x0 + K.embed(a_[1])) * x0 + K.embed(a_[3])) * x0 + K.embed(a_[4]);
            Poly quad(K, {-c0, c1, K.one()});
            return poly_roots(quad, rng);
        }
        if (kind_ == Kind::hyperelliptic) {
            std::vector<FieldElement> fc;
            for (auto& c : f_.coeffs()) fc.push_back(K.embed(c));
            FieldElement v = Poly(K, std::move(fc)).eval(x0);
            Poly quad(K, {-v, K.zero(), K.one()});
            return poly_roots(quad, rng);
        }
        throw internal_error("y_roots on P^1");
    }

    // index of the monomial x^a y^b in the basis of Gamma(L^i)
    size_t monomial_index(unsigned i, unsigned a, unsigned b) const {
        const auto& list = mono_[i - 1];
        for (size_t t = 0; t < list.size(); ++t)
            if (list[t].first == a && list[t].second == b) return t;
        throw internal_error("monomial not in basis");
    }
    const std::vector<std::pair<unsigned, unsigned>>& monomials(unsigned i) const {
        return mono_[i - 1];
    }

    // deterministic hash of the curve description, used to pin serialized
    // values to their curve
    std::uint64_t description_hash() const {
        std::uint64_t hsh = 1469598103934665603ull;
        auto mix = [&](std::uint64_t v) {
            hsh ^= v;
            hsh *= 1099511628211ull;
        };
        mix(static_cast<std::uint64_t>(kind_));
        mix(k_.p());
        mix(k_.degree());
        for (auto c : k_.data()->modulus) mix(c);
        mix(g_);
        mix(degL_);
        mix(h_);
        if (kind_ == Kind::elliptic)
            for (auto& x : a_)
                for (auto c : x.coeffs()) mix(c);
        if (kind_ == Kind::hyperelliptic)
            for (auto& x : f_.coeffs())
                for (auto c : x.coeffs()) mix(c);
        return hsh;
    }

private:
    Curve() = default;

    FieldElement elliptic_discriminant() const {
        const FieldElement &a1 = a_[0], &a2 = a_[1], &a3 = a_[2], &a4 = a_[3], &a6 = a_[4];
        auto I = [&](std::uint64_t v) { return k_.from_int(v); };
        FieldElement b2 = a1 * a1 + I(4) * a2;
        FieldElement b4 = I(2) * a4 + a1 * a3;
        FieldElement b6 = a3 * a3 + I(4) * a6;
        FieldElement b8 = a1 * a1 * a6 + I(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        return -(b2 * b2 * b8) - I(8) * (b4 * b4 * b4) - I(27) * (b6 * b6) + I(9) * b2 * b4 * b6;
    }

    std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t r) const {
        // Lucas' theorem
        std::uint32_t p = k_.p();
        std::uint64_t out = 1;
        while (n || r) {
            std::uint64_t ni = n % p, ri = r % p;
            if (ri > ni) return 0;
            // C(ni, ri) mod p by multiplicative formula
            std::uint64_t num = 1, den = 1;
            for (std::uint64_t t = 0; t < ri; ++t) {
                num = (num * ((ni - t) % p)) % p;
                den = (den * ((t + 1) % p)) % p;
            }
            std::uint64_t deninv = 1;
            // den != 0 mod p
            std::uint64_t e = p - 2, b = den % p;
            while (e) {
                if (e & 1) deninv = deninv * b % p;
                b = b * b % p;
                e >>= 1;
            }
            out = out * (num * deninv % p) % p;
            n /= p;
            r /= p;
        }
        return out;
    }

    Subspace conditions_to_subspace(unsigned i, const std::vector<Vec>& conds) const {
        size_t di = dim(i);
        Mat M(k_, conds.size(), di);
        for (size_t r = 0; r < conds.size(); ++r)
            for (size_t c = 0; c < di; ++c) M.at(r, c) = conds[r][c];
        return kernel(M);
    }

    std::vector<FieldElement> section_values(unsigned i, const Vec& coords) const {
        require(coords.size() == dim(i), "section has wrong coordinate length");
        std::vector<FieldElement> out(ev_.N, ev_.K.zero());
        for (size_t b = 0; b < coords.size(); ++b) {
            if (coords[b].is_zero()) continue;
            FieldElement c = ev_.K.embed(coords[b]);
            const auto& vb = ev_.vals[i - 1][b];
            for (size_t P = 0; P < ev_.N; ++P) out[P] = out[P] + c * vb[P];
        }
        return out;
    }

    Vec coords_from_values(unsigned i, const std::vector<FieldElement>& values) const {
        size_t m = ev_.rel.rel_degree();
        Vec rhs;
        rhs.reserve(ev_.N * m);
        for (size_t P = 0; P < ev_.N; ++P)
            for (auto& c : ev_.rel.to_k_coords(values[P])) rhs.push_back(c);
        return ev_.solver[i - 1].solve(rhs);
    }

    void finish_setup() {
        require(degL_ >= 2 * g_ + 1, "deg L must be at least 2g+1");
        require(h_ >= 2, "truncation level must be at least 2");
        // monomial bases for the affine models
        if (kind_ != Kind::p1) {
            unsigned wy = 2 * g_ + 1;
            mono_.resize(h_);
            for (unsigned i = 1; i <= h_; ++i) {
                unsigned m = i * degL_;
                std::vector<std::pair<unsigned, unsigned>> list;
                for (unsigned pole = 0; pole <= m; ++pole) {
                    // at most one (a, b) with 2a + wy b = pole, b <= 1
                    if (pole % 2 == 0)
                        list.emplace_back(pole / 2, 0);
                    else if (pole >= wy && (pole - wy) % 2 == 0)
                        list.emplace_back((pole - wy) / 2, 1);
                }
                check(list.size() == dim(i), "monomial count does not match Riemann-Roch");
                mono_[i - 1] = std::move(list);
            }
        }
        build_evaluation();
    }

    void build_evaluation() {
        Rng rng(0x0c0ffee5u);
        size_t N = static_cast<size_t>(h_) * degL_ + 1;
        ev_.N = N;

        std::vector<AffinePoint> pts;
        for (unsigned m = 1;; ++m) {
            require(m * k_.degree() * std::log2(static_cast<double>(k_.p())) < 40,
                    "cannot find a small enough evaluation field");
            Field K = m == 1 ? k_ : make_extension(k_, m, rng);
            if (kind_ == Kind::p1) {
                if (K.q() + 1 >= N) {
                    ev_.K = K;
                    break;
                }
                continue;
            }
            pts.clear();
            for (std::uint64_t ix = 0; ix < K.q() && pts.size() < N; ++ix) {
                FieldElement x0 = K.from_index(ix);
                for (auto& y0 : y_roots(K, x0, rng)) {
                    pts.push_back({x0, y0});
                    if (pts.size() == N) break;
                }
            }
            if (pts.size() == N) {
                ev_.K = K;
                break;
            }
        }
        ev_.rel = RelativeBasis(ev_.K, k_);

        ev_.vals.assign(h_, {});
        for (unsigned i = 1; i <= h_; ++i) {
            size_t di = dim(i);
            ev_.vals[i - 1].assign(di, std::vector<FieldElement>(N, ev_.K.zero()));
            if (kind_ == Kind::p1) {
                unsigned m = i * degL_;
                for (size_t t = 0; t < di; ++t) {
                    // point 0 is infinity (1:0): value = coefficient of u^m
                    ev_.vals[i - 1][t][0] = (t == 0) ? ev_.K.one() : ev_.K.zero();
                    for (size_t P = 1; P < N; ++P) {
                        FieldElement a = ev_.K.from_index(P - 1);
                        ev_.vals[i - 1][t][P] = a.pow(m - t);
                    }
                }
            } else {
                for (size_t b = 0; b < di; ++b) {
                    auto [ax, by] = mono_[i - 1][b];
                    for (size_t P = 0; P < N; ++P)
                        ev_.vals[i - 1][b][P] = pts[P].x.pow(ax) * pts[P].y.pow(by);
                }
            }
        }

        // solvers: coordinates from stacked k-coordinates of the values
        size_t m = ev_.rel.rel_degree();
        ev_.solver.resize(h_);
        for (unsigned i = 1; i <= h_; ++i) {
            size_t di = dim(i);
            Mat E(k_, N * m, di);
            for (size_t b = 0; b < di; ++b)
                for (size_t P = 0; P < N; ++P) {
                    auto kc = ev_.rel.to_k_coords(ev_.vals[i - 1][b][P]);
                    for (size_t j = 0; j < m; ++j) E.at(P * m + j, b) = kc[j];
                }
            ev_.solver[i - 1] = LeftInverse(E);  // full column rank = injectivity
        }
    }

    struct Eval {
        Field K;
        RelativeBasis rel;
        size_t N = 0;
        std::vector<std::vector<std::vector<FieldElement>>> vals;  // [i-1][basis][point]
        std::vector<LeftInverse> solver;                           // [i-1]
    };

    Kind kind_ = Kind::p1;
    Field k_;
    unsigned g_ = 0, degL_ = 0, h_ = 0;
    std::array<FieldElement, 5> a_{};
    Poly f_;
    std::vector<std::vector<std::pair<unsigned, unsigned>>> mono_;  // affine models
    Eval ev_;
    mutable std::optional<ZetaData> zeta_;
};

}  // namespace picard

#endif
