#ifndef PICARD_ACCEPTANCE_HPP
#define PICARD_ACCEPTANCE_HPP

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "picard/morphism.hpp"
#include "picard/torsion.hpp"
#include "picard/weierstrass.hpp"

// End-to-end verification suites.  Every suite checks the library against an
// independent reference: the chord-tangent group law, exhaustive point or
// divisor enumeration, direct counting, or plain statistics on seeded draws.

namespace picard {

struct SuiteReport {
    std::string name;
    bool pass = false;
    std::string details;
};

namespace suites {

inline Curve ell_f2(unsigned h = 6) {
    Field k = Field::prime(2);
    return Curve::elliptic(k, {k.zero(), k.zero(), k.one(), k.zero(), k.zero()}, h);
}
inline Curve ell_f5(unsigned h = 6) {
    Field k = Field::prime(5);
    return Curve::elliptic(k, {k.zero(), k.zero(), k.zero(), k.one(), k.zero()}, h);
}
inline Curve ell_f7(unsigned h = 6) {
    Field k = Field::prime(7);
    return Curve::elliptic(k, {k.zero(), k.zero(), k.zero(), k.from_int(2), k.one()}, h);
}
inline Curve genus2_f7(unsigned h = 6) {
    Field k = Field::prime(7);
    Poly f(k, {k.one(), k.zero(), k.zero(), k.zero(), k.zero(), k.one()});  // x^5 + 1
    return Curve::hyperelliptic(k, f, h);
}

inline PicardElement iota(const Curve& X, const WeierstrassLaw::Point& P) {
    return P ? point_class(X, Curve::AffinePoint{P->first, P->second}) : zero_element(X);
}

// chi-square statistic for observed counts against a uniform expectation
inline double chi_square_uniform(const std::vector<int>& counts, int total) {
    double expect = static_cast<double>(total) / counts.size();
    double stat = 0;
    for (int c : counts) stat += (c - expect) * (c - expect) / expect;
    return stat;
}

// 1. add(iota(P), iota(Q)) = iota(P + Q) exhaustively on three curves
inline SuiteReport elliptic_oracle() {
    SuiteReport rep{"elliptic-oracle", true, ""};
    std::ostringstream os;
    for (auto make : {&ell_f2, &ell_f5, &ell_f7}) {
        Curve E = make(6);
        WeierstrassLaw law(E.field(), E.weierstrass());
        Rng rng(7777);
        auto pts = law.points(E.field(), rng);
        int checked = 0;
        for (auto& P : pts)
            for (auto& Q : pts) {
                PicardElement lhs = pic_add(iota(E, P), iota(E, Q));
                PicardElement rhs = iota(E, law.add(P, Q));
                if (!pic_equal(lhs, rhs)) {
                    rep.pass = false;
                    os << "mismatch over F_" << E.field().q() << "; ";
                }
                ++checked;
            }
        os << "q=" << E.field().q() << ": " << checked << " pairs; ";
    }
    rep.details = os.str();
    return rep;
}

// 2. scalar_mul(L(1), x) = 0 for 20 seeded random classes per curve
inline SuiteReport class_number_lagrange() {
    SuiteReport rep{"class-number-lagrange", true, ""};
    std::ostringstream os;
    std::vector<Curve> curves;
    curves.push_back(ell_f2());
    curves.push_back(ell_f5());
    curves.push_back(ell_f7());
    curves.push_back(genus2_f7());
    for (auto& X : curves) {
        std::int64_t hnum = X.zeta().class_number();
        SmoothCountTable table = make_picard_sampling_table(X);
        Rng rng(20250 + X.deg_l());
        for (int t = 0; t < 20; ++t) {
            PicardElement x = random_picard_element(X, table, rng);
            if (!pic_is_zero(scalar_mul(hnum, x))) {
                rep.pass = false;
                os << "nonzero h*x (q=" << X.field().q() << ", g=" << X.genus() << "); ";
            }
        }
        os << "q=" << X.field().q() << " g=" << X.genus() << " h=" << hnum << " ok; ";
    }
    rep.details = os.str();
    return rep;
}

// 3. count_prime_divisors vs Frobenius-orbit counting of enumerated points
inline SuiteReport zeta_primes() {
    SuiteReport rep{"zeta-primes", true, ""};
    std::ostringstream os;
    std::vector<Curve> curves;
    curves.push_back(Curve::p1(Field::prime(2), 3, 4));
    curves.push_back(Curve::p1(Field::prime(3), 2, 4));
    curves.push_back(ell_f2(4));
    curves.push_back(ell_f5(4));
    curves.push_back(genus2_f7(4));
    for (auto& X : curves) {
        const ZetaData& Z = X.zeta();
        // brute-force counts #X(F_{q^e}) by enumeration, then Moebius
        std::vector<std::int64_t> pointcounts(5, 0);
        for (unsigned e = 1; e <= 4; ++e) pointcounts[e] = X.count_points(e);
        for (unsigned d = 1; d <= 4; ++d) {
            __int128 acc = 0;
            for (unsigned e = 1; e <= d; ++e)
                if (d % e == 0) acc += ZetaData::moebius(d / e) * pointcounts[e];
            std::int64_t brute = static_cast<std::int64_t>(acc / d);
            std::int64_t viazeta = Z.count_prime_divisors(d);
            if (brute != viazeta) {
                rep.pass = false;
                os << "q=" << X.field().q() << " d=" << d << ": " << viazeta
                   << " != " << brute << "; ";
            }
        }
        os << "q=" << X.field().q() << " g=" << X.genus() << " d<=4 ok; ";
    }
    // the stated P^1/F_2 values
    {
        Curve X = Curve::p1(Field::prime(2), 3, 4);
        std::vector<std::int64_t> expect{3, 1, 2, 3};
        for (unsigned d = 1; d <= 4; ++d)
            if (X.zeta().count_prime_divisors(d) != expect[d - 1]) rep.pass = false;
    }
    rep.details = os.str();
    return rep;
}

// 4. uniformity of divisor and Picard sampling
inline SuiteReport uniform_sampling() {
    SuiteReport rep{"uniform-sampling", true, ""};
    std::ostringstream os;
    {
        // 7000 degree-2 divisors on P^1/F_2 (7 outcomes)
        Curve X = Curve::p1(Field::prime(2), 1, 6);
        SmoothCountTable table(X.zeta(), 2, 2);
        Rng rng(424242);
        std::map<std::string, int> counts;
        int l2_ones = 0;
        const int N = 7000;
        for (int t = 0; t < N; ++t) {
            auto type = random_decomposition_type(table, 2, 2, rng);
            l2_ones += type[1];
            DivisorRep D = random_divisor(X, table, 2, 2, 2, rng);
            std::string key;
            for (size_t r = 0; r < D.space.dim(); ++r)
                for (auto& x : D.space.basis_row(r))
                    for (auto c : x.coeffs()) key += static_cast<char>('0' + c);
            ++counts[key];
        }
        std::vector<int> vec;
        for (auto& [k, c] : counts) vec.push_back(c);
        double chi2 = counts.size() == 7 ? chi_square_uniform(vec, N) : 1e9;
        os << "P1/F_2 deg-2: " << counts.size() << " outcomes, chi2(6dof)=" << chi2 << "; ";
        if (!(counts.size() == 7 && chi2 < 16.81)) rep.pass = false;
        // marginal nu^2_2: P(l_2 = 1) = 1/7
        double p = 1.0 / 7, sigma = std::sqrt(N * p * (1 - p));
        os << "l2-marginal " << l2_ones << " vs " << N * p << "; ";
        if (std::abs(l2_ones - N * p) > 4 * sigma) rep.pass = false;
    }
    // Picard sampling, classes identified by normalised representatives
    auto pic_uniform = [&](const Curve& E, int classes_expected, int draws,
                           std::uint64_t seed) {
        DivisorRep O{&E, 1, E.simple_divisor(1, std::nullopt, 1)};
        NormalizationContext ctx = make_normalization_context(E, O);
        SmoothCountTable table = make_picard_sampling_table(E);
        Rng rng(seed);
        std::map<std::string, int> counts;
        for (int t = 0; t < draws; ++t) {
            PicardElement x = random_picard_element(E, table, rng);
            NormalizedRep nr = normalised_representative(x, ctx);
            std::string key;
            for (size_t r = 0; r < nr.space.dim(); ++r)
                for (auto& e : nr.space.basis_row(r))
                    for (auto c : e.coeffs()) key += static_cast<char>('0' + c);
            ++counts[key];
        }
        bool ok = static_cast<int>(counts.size()) == classes_expected;
        double p = 1.0 / classes_expected;
        double sigma = std::sqrt(draws * p * (1 - p));
        for (auto& [k, c] : counts)
            if (std::abs(c - draws * p) > 4 * sigma) ok = false;
        os << "Pic0 q=" << E.field().q() << ": " << counts.size() << " classes";
        for (auto& [k, c] : counts) os << " " << c;
        os << (ok ? " ok; " : " FAIL; ");
        return ok;
    };
    {
        Curve E2 = ell_f2();
        if (!pic_uniform(E2, 3, 1800, 5150)) rep.pass = false;
        Curve E5 = ell_f5();
        if (!pic_uniform(E5, 4, 1600, 5151)) rep.pass = false;
    }
    rep.details = os.str();
    return rep;
}

// 5. Frey-Rueck pairing on y^2 = x^3 + x over F_5 with n = 2
inline SuiteReport pairing_perfect() {
    SuiteReport rep{"pairing-perfect", true, ""};
    std::ostringstream os;
    Curve E = ell_f5(7);
    Field k = E.field();
    WeierstrassLaw law(k, E.weierstrass());
    Rng rng(6868);
    auto pts = law.points(k, rng);  // 4 points, full 2-torsion
    auto cls = [&](int i) { return iota(E, pts[i]); };

    // [0, y] = 1 for all classes
    for (int b = 0; b < 4; ++b)
        if (frey_ruck(zero_element(E), cls(b), 2, rng).log != 0) rep.pass = false;

    // full pairing table
    std::uint64_t tab[4][4];
    for (int a = 0; a < 4; ++a) {
        FreyRuckEngine eng(cls(a), 2, rng);
        for (int b = 0; b < 4; ++b) tab[a][b] = eng.pair_with(cls(b), rng).log;
    }
    auto index_of = [&](const WeierstrassLaw::Point& P) {
        for (int c = 0; c < 4; ++c) {
            if (!P && !pts[c]) return c;
            if (P && pts[c] && pts[c]->first == P->first && pts[c]->second == P->second) return c;
        }
        return -1;
    };
    // bilinearity, exhaustively in both arguments
    for (int a1 = 0; a1 < 4; ++a1)
        for (int a2 = 0; a2 < 4; ++a2) {
            int as = index_of(law.add(pts[a1], pts[a2]));
            for (int b = 0; b < 4; ++b)
                if (tab[as][b] != (tab[a1][b] + tab[a2][b]) % 2) rep.pass = false;
        }
    for (int b1 = 0; b1 < 4; ++b1)
        for (int b2 = 0; b2 < 4; ++b2) {
            int bs = index_of(law.add(pts[b1], pts[b2]));
            for (int a = 0; a < 4; ++a)
                if (tab[a][bs] != (tab[a][b1] + tab[a][b2]) % 2) rep.pass = false;
        }
    // injectivity of J[2] -> Hom(J/2J, mu_2)
    for (int a = 1; a < 4; ++a) {
        bool all0 = true;
        for (int b = 0; b < 4; ++b) all0 = all0 && tab[a][b] == 0;
        if (all0) rep.pass = false;
    }
    // rank 2 on a basis
    std::uint64_t det = (tab[1][1] * tab[2][2] + tab[1][2] * tab[2][1]) % 2;
    if (det != 1) rep.pass = false;
    os << "table rank 2, bilinear, [0,-] trivial; ";

    // determinism over 5 seeds
    for (int s = 0; s < 5; ++s) {
        Rng r2(900 + s);
        if (frey_ruck(cls(1), cls(2), 2, r2).log != tab[1][2]) rep.pass = false;
    }
    os << "5 seeds identical; ";
    rep.details = os.str();
    return rep;
}

// 6. l-torsion bases on the elliptic test curves
inline SuiteReport l_torsion() {
    SuiteReport rep{"l-torsion", true, ""};
    std::ostringstream os;
    struct Case {
        std::function<Curve()> make;
        std::uint64_t l;
        size_t expect;
    };
    std::vector<Case> cases{{[] { return ell_f5(7); }, 2, 2},
                            {[] { return ell_f2(7); }, 3, 1},
                            {[] { return ell_f2(7); }, 5, 0}};
    for (auto& c : cases) {
        Curve X = c.make();
        Rng rng(31337 + c.l);
        TorsionBasis tb = l_torsion_basis(X, c.l, 0.9, rng);
        os << "q=" << X.field().q() << " l=" << c.l << ": size " << tb.basis.size() << "; ";
        if (tb.basis.size() != c.expect) rep.pass = false;
        for (auto& z : tb.basis) {
            if (!pic_is_zero(scalar_mul(static_cast<std::int64_t>(c.l), z))) rep.pass = false;
            if (!pic_equal(frobenius_point(z, X.field().q()), z)) rep.pass = false;
        }
        if (!tb.basis.empty()) {
            RelationBasis rel = find_relations(*tb.Xa, tb.basis, c.l, 0.9, rng);
            if (!rel.vectors.empty()) rep.pass = false;  // independence
        }
    }
    rep.details = os.str();
    return rep;
}

// 7. primary decomposition on random algebras + the divisor algebra vs CRT
inline SuiteReport finite_algebra() {
    SuiteReport rep{"finite-algebra", true, ""};
    std::ostringstream os;
    Rng rng(1123);
    int done = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Field k = Field::prime(p);
        for (int t = 0; t < 67 && done < 200; ++t, ++done) {
            // product of 1-3 pieces k[x]/(g^e)
            std::vector<std::pair<size_t, size_t>> want;  // (dim, residue degree)
            size_t pieces = 1 + rng.below(3);
            std::vector<std::vector<Vec>> table;
            FiniteAlgebra A;
            bool first = true;
            size_t total = 0;
            for (size_t i = 0; i < pieces && total < 10; ++i) {
                unsigned dg = 1 + static_cast<unsigned>(rng.below(2));
                unsigned e = 1 + static_cast<unsigned>(rng.below(3));
                Poly g = Poly::zero(k);
                do {
                    g = random_monic(k, dg, rng);
                } while (!is_irreducible(g, rng));
                Poly ge = Poly::one(k);
                for (unsigned s = 0; s < e; ++s) ge = ge * g;
                size_t d = ge.degree();
                // structure constants of k[x]/(ge)
                std::vector<std::vector<Vec>> tt(d, std::vector<Vec>(d));
                for (size_t a = 0; a < d; ++a)
                    for (size_t b = 0; b < d; ++b) {
                        std::vector<FieldElement> c(a + b + 1, k.zero());
                        c[a + b] = k.one();
                        Poly r = Poly(k, std::move(c)) % ge;
                        Vec v(d, k.zero());
                        for (size_t u = 0; u < d; ++u) v[u] = r.coeff(u);
                        tt[a][b] = v;
                    }
                Vec one(d, k.zero());
                one[0] = k.one();
                FiniteAlgebra piece(k, std::move(tt), std::move(one));
                want.emplace_back(d, dg);
                total += d;
                if (first) {
                    A = piece;
                    first = false;
                } else {
                    // direct product
                    size_t da = A.dim(), db = piece.dim(), dd = da + db;
                    std::vector<std::vector<Vec>> pt(dd, std::vector<Vec>(dd, Vec(dd, k.zero())));
                    auto unit = [&](size_t n, size_t i) {
                        Vec u(n, k.zero());
                        u[i] = k.one();
                        return u;
                    };
                    for (size_t i = 0; i < dd; ++i)
                        for (size_t jj = 0; jj < dd; ++jj) {
                            Vec out(dd, k.zero());
                            if (i < da && jj < da) {
                                Vec ab = A.mul(unit(da, i), unit(da, jj));
                                for (size_t u = 0; u < da; ++u) out[u] = ab[u];
                            } else if (i >= da && jj >= da) {
                                Vec ab = piece.mul(unit(db, i - da), unit(db, jj - da));
                                for (size_t u = 0; u < db; ++u) out[da + u] = ab[u];
                            }
                            pt[i][jj] = out;
                        }
                    Vec one2(dd, k.zero());
                    for (size_t u = 0; u < da; ++u) one2[u] = A.one()[u];
                    for (size_t u = 0; u < db; ++u) one2[da + u] = piece.one()[u];
                    A = FiniteAlgebra(k, std::move(pt), std::move(one2));
                }
            }
            auto dec = primary_decomposition(A, rng);
            std::vector<std::pair<size_t, size_t>> got;
            for (auto& lf : dec) got.emplace_back(lf.local.dim(), lf.residue_degree);
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            if (got != want) {
                rep.pass = false;
                os << "algebra mismatch p=" << p << "; ";
            }
        }
    }
    os << done << " random algebras; ";

    // divisor algebra on P^1/F_4 vs polynomial factorization
    {
        Rng rng2(77);
        Field F2 = Field::prime(2);
        Field F4 = make_extension(F2, 2, rng2);
        Curve X = Curve::p1(F4, 3, 6);
        for (int t = 0; t < 12; ++t) {
            Vec s = X.full_space(1).random_nonzero(rng2);  // cubic form
            DivisorRep D = divisor_of_section(X, 1, s, 2);
            auto parts = decompose(D, rng2);
            // oracle: factor the dehomogenized cubic and add the infinity part
            std::vector<FieldElement> cc;
            unsigned m = 3;
            for (unsigned tt = 0; tt <= m; ++tt) cc.push_back(s[m - tt]);  // s(a) coefficients
            Poly sa(F4, std::move(cc));
            std::vector<std::pair<unsigned, unsigned>> want;  // (degree, multiplicity)
            unsigned inf_mult = m - static_cast<unsigned>(sa.degree() < 0 ? 0 : sa.degree());
            if (inf_mult) want.emplace_back(1, inf_mult);
            if (sa.degree() >= 1)
                for (auto& [g, e] : factor_poly(sa, rng2))
                    want.emplace_back(static_cast<unsigned>(g.degree()), e);
            std::vector<std::pair<unsigned, unsigned>> got;
            for (auto& pr : parts) got.emplace_back(pr.degree, pr.multiplicity);
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            if (got != want) {
                rep.pass = false;
                os << "divisor algebra mismatch; ";
            }
        }
        os << "P1/F_4 divisor algebras match CRT; ";
    }
    rep.details = os.str();
    return rep;
}

// 8. morphism identities for the x-map and the squaring map
inline SuiteReport morphism_identities() {
    SuiteReport rep{"morphism-identities", true, ""};
    std::ostringstream os;
    Rng rng(3141);
    {
        Field k = Field::prime(5);
        Curve E = Curve::elliptic(k, {k.zero(), k.zero(), k.zero(), k.one(), k.zero()}, 6, 2);
        Curve Y = Curve::p1(k, 3, 6);
        FiniteMorphism f = FiniteMorphism::x_map(E, Y);
        // 10 random degree-1 divisors on P^1 (5 affine points and infinity)
        int fibers = 0;
        for (int t = 0; t < 10; ++t) {
            std::uint64_t ia = rng.below(6);
            Subspace sp = ia < 5 ? Y.p1_divisor(2, {{k.from_index(ia), 1}}, 0)
                                 : Y.p1_divisor(2, {}, 1);
            DivisorRep Ept{&Y, 2, sp};
            DivisorRep pb = pull_back(f, Ept);
            if (!(push_forward(f, pb, rng) == change_level(add_divisors(Ept, Ept), 2)))
                rep.pass = false;
            unsigned total = 0;
            for (auto& p : decompose(pb, rng))
                total += p.multiplicity * (p.degree / image_divisor(f, p.prime).degree());
            if (total != f.degree()) rep.pass = false;
            ++fibers;
        }
        os << "x-map: " << fibers << " fibers ok; ";
    }
    {
        Field k = Field::prime(3);
        Curve X = Curve::p1(k, 2, 6);
        Curve Y = Curve::p1(k, 1, 6);
        FiniteMorphism f = FiniteMorphism::power_map_p1(X, Y, 2);
        int fibers = 0;
        std::vector<Subspace> pts;
        for (std::uint64_t ia = 0; ia < 3; ++ia)
            pts.push_back(Y.p1_divisor(2, {{k.from_index(ia), 1}}, 0));
        pts.push_back(Y.p1_divisor(2, {}, 1));
        for (auto& sp : pts) {
            DivisorRep Ept{&Y, 2, sp};
            DivisorRep pb = pull_back(f, Ept);
            if (!(push_forward(f, pb, rng) == change_level(add_divisors(Ept, Ept), 2)))
                rep.pass = false;
            unsigned total = 0;
            for (auto& p : decompose(pb, rng))
                total += p.multiplicity * (p.degree / image_divisor(f, p.prime).degree());
            if (total != f.degree()) rep.pass = false;
            ++fibers;
        }
        os << "squaring map: " << fibers << " fibers ok; ";
    }
    rep.details = os.str();
    return rep;
}

// 9. Frobenius involution and trace identities over F_4/F_2 and F_9/F_3
inline SuiteReport frobenius_trace() {
    SuiteReport rep{"frobenius-trace", true, ""};
    std::ostringstream os;
    Rng rng(999);
    std::vector<Curve> bases;
    bases.push_back(ell_f2());
    {
        Field k3 = Field::prime(3);
        // y^2 = x^3 - x over F_3
        bases.push_back(
            Curve::elliptic(k3, {k3.zero(), k3.zero(), k3.zero(), k3.from_int(2), k3.zero()}, 6));
    }
    for (auto& X : bases) {
        std::uint64_t q = X.field().q();
        Field K = make_extension(X.field(), 2, rng);
        Curve XK = X.base_change(K);
        for (int t = 0; t < 20; ++t) {
            Vec s;
            for (size_t i = 0; i < XK.dim(1); ++i) s.push_back(K.random(rng));
            if (vec_is_zero(s)) {
                --t;
                continue;
            }
            DivisorRep D = divisor_of_section(XK, 1, s, 2);
            DivisorRep F1 = frobenius_divisor(D, q);
            if (!(frobenius_divisor(F1, q) == D)) rep.pass = false;
        }
        // trace of base-extended elements is [k':k] x
        DivisorRep O{&X, 1, X.simple_divisor(1, std::nullopt, 1)};
        NormalizationContext ctx = make_normalization_context(X, O);
        SmoothCountTable table = make_picard_sampling_table(X);
        for (int t = 0; t < 5; ++t) {
            PicardElement x = random_picard_element(X, table, rng);
            PicardElement xe{&XK, embed_subspace(x.space, K)};
            if (!pic_equal(pic_trace(ctx, XK, xe), scalar_mul(2, x))) rep.pass = false;
        }
        os << "q=" << q << ": 20 divisors, 5 traces ok; ";
    }
    rep.details = os.str();
    return rep;
}

// 10. inflate(deflate) identity and decompose-then-readd on all small divisors
inline SuiteReport saturation_roundtrip() {
    SuiteReport rep{"saturation-roundtrip", true, ""};
    std::ostringstream os;
    Rng rng(2718);
    // 100 random divisor spaces across three curves
    {
        std::vector<Curve> curves;
        curves.push_back(ell_f5());
        Field F2 = Field::prime(2);
        curves.push_back(Curve::p1(make_extension(F2, 2, rng), 3, 6));
        curves.push_back(genus2_f7());
        int done = 0;
        for (auto& X : curves) {
            for (int t = 0; t < 34 && done < 100; ++t, ++done) {
                Vec s = X.full_space(1).random_nonzero(rng);
                DivisorRep D = divisor_of_section(X, 1, s, 2);
                auto V = deflate(D, rng);
                if (!(inflate(X, 2, V) == D.space)) {
                    rep.pass = false;
                    os << "deflate/inflate mismatch; ";
                }
            }
        }
        os << done << " deflation round trips; ";
    }
    // all effective divisors of degree <= 6 on P^1/F_2: decompose + re-add
    {
        Field k = Field::prime(2);
        Curve X = Curve::p1(k, 3, 6);
        int done = 0;
        for (unsigned n = 1; n <= 6; ++n) {
            // divisors of degree n <-> nonzero binary forms of degree n (up to
            // the trivial scalar); realize Gamma(L^3(-D)) = g * (forms of
            // degree 9 - n) directly by polynomial multiplication
            for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << (n + 1)); ++mask) {
                std::vector<std::uint64_t> g(n + 1);
                for (unsigned i = 0; i <= n; ++i) g[i] = (mask >> i) & 1;
                std::vector<Vec> rows;
                unsigned rest = 9 - n;
                for (unsigned t = 0; t <= rest; ++t) {
                    // multiply g by u^(rest-t) v^t; coefficients indexed by v-degree
                    Vec row(10, k.zero());
                    for (unsigned i = 0; i <= n; ++i)
                        if (g[i]) row[i + t] = row[i + t] + k.one();
                    rows.push_back(std::move(row));
                }
                DivisorRep D{&X, 3, Subspace::from_rows(k, 10, rows)};
                if (D.degree() != n) {
                    rep.pass = false;
                    continue;
                }
                auto parts = decompose(D, rng);
                DivisorRep acc = zero_divisor(X, 3);
                unsigned degsum = 0;
                for (auto& p : parts) {
                    degsum += p.degree * p.multiplicity;
                    for (unsigned m = 0; m < p.multiplicity; ++m)
                        acc = change_level(add_divisors(acc, change_level(p.prime, 2)), 3);
                }
                if (degsum != n || !(acc == D)) {
                    rep.pass = false;
                    os << "re-add failed at degree " << n << "; ";
                }
                ++done;
            }
        }
        os << done << " exhaustive decompositions; ";
    }
    rep.details = os.str();
    return rep;
}

}  // namespace suites

inline std::vector<std::string> acceptance_suite_names() {
    return {"elliptic-oracle",  "class-number-lagrange", "zeta-primes",
            "uniform-sampling", "pairing-perfect",       "l-torsion",
            "finite-algebra",   "morphism-identities",   "frobenius-trace",
            "saturation-roundtrip"};
}

inline SuiteReport run_acceptance_suite(const std::string& name) {
    if (name == "elliptic-oracle") return suites::elliptic_oracle();
    if (name == "class-number-lagrange") return suites::class_number_lagrange();
    if (name == "zeta-primes") return suites::zeta_primes();
    if (name == "uniform-sampling") return suites::uniform_sampling();
    if (name == "pairing-perfect") return suites::pairing_perfect();
    if (name == "l-torsion") return suites::l_torsion();
    if (name == "finite-algebra") return suites::finite_algebra();
    if (name == "morphism-identities") return suites::morphism_identities();
    if (name == "frobenius-trace") return suites::frobenius_trace();
    if (name == "saturation-roundtrip") return suites::saturation_roundtrip();
    throw domain_error("unknown acceptance suite: " + name);
}

}  // namespace picard

#endif
