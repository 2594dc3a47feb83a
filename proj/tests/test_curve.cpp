#include "doctest.h"
#include "picard/curve.hpp"

using namespace picard;

namespace {

Curve ell_f2(unsigned h = 5) {
    Field k = Field::prime(2);
    // y^2 + y = x^3
    return Curve::elliptic(k, {k.zero(), k.zero(), k.one(), k.zero(), k.zero()}, h);
}

Curve ell_f5(unsigned h = 5) {
    Field k = Field::prime(5);
    // y^2 = x^3 + x
    return Curve::elliptic(k, {k.zero(), k.zero(), k.zero(), k.one(), k.zero()}, h);
}

}  // namespace

TEST_CASE("p1 dimensions match Riemann-Roch") {
    Field F2 = Field::prime(2);
    Curve X = Curve::p1(F2, 3, 4);
    CHECK(X.dim(1) == 4);
    CHECK(X.dim(2) == 7);

    // (F_3, 1, 4): mu_{1,1} surjective onto Gamma(L^2) of dim 3
    Field F3 = Field::prime(3);
    Curve Y = Curve::p1(F3, 1, 4);
    Subspace prod = Y.mult_spans(1, Y.full_space(1), 1, Y.full_space(1));
    CHECK(prod.dim() == 3);

    // (F_2, 3, 4): products of Gamma(L) bases span Gamma(L^2), rank 7
    Curve Z = Curve::p1(F2, 3, 4);
    CHECK(Z.mult_spans(1, Z.full_space(1), 1, Z.full_space(1)).dim() == 7);
}

TEST_CASE("multiplication surjectivity across all built curves") {
    std::vector<Curve> curves;
    Field F2 = Field::prime(2), F5 = Field::prime(5), F7 = Field::prime(7);
    curves.push_back(Curve::p1(F2, 3, 5));
    curves.push_back(ell_f2(5));
    curves.push_back(ell_f5(5));
    Poly f(F7, {F7.one(), F7.zero(), F7.zero(), F7.zero(), F7.zero(), F7.one()});  // x^5+1
    curves.push_back(Curve::hyperelliptic(F7, f, 5));
    for (auto& X : curves) {
        for (unsigned i = 1; i <= 2; ++i)
            for (unsigned j = i; i + j <= X.trunc() && j <= 2; ++j) {
                Subspace prod = X.mult_spans(i, X.full_space(i), j, X.full_space(j));
                CHECK(prod.dim() == X.dim(i + j));
            }
    }
}

TEST_CASE("elliptic model: y^2+y=x^3 over F_2") {
    Curve E = ell_f2();
    CHECK(E.genus() == 1);
    CHECK(E.deg_l() == 3);
    CHECK(E.dim(1) == 3);  // {1, x, y}
    CHECK(E.dim(2) == 6);
    CHECK(E.count_points(1) == 3);

    // singular curve rejected
    Field k = Field::prime(2);
    CHECK_THROWS_AS(
        Curve::elliptic(k, {k.zero(), k.zero(), k.zero(), k.zero(), k.zero()}, 4),
        domain_error);
}

TEST_CASE("elliptic point count y^2=x^3+x over F_5") {
    Curve E = ell_f5();
    CHECK(E.count_points(1) == 4);  // (0,0), (2,0), (3,0), infinity
}

TEST_CASE("product of sections respects the curve equation") {
    // x*y evaluated via the graded ring equals the symbolic reduction:
    // on y^2 = x^3 + x the section x*y of L^2 is just the monomial xy
    Curve E = ell_f5(4);
    Field k = E.field();
    Vec xs(E.dim(1), k.zero()), ys(E.dim(1), k.zero());
    xs[E.monomial_index(1, 1, 0)] = k.one();
    ys[E.monomial_index(1, 0, 1)] = k.one();
    Vec prod = E.mult_sections(1, xs, 1, ys);
    Vec expect(E.dim(2), k.zero());
    expect[E.monomial_index(2, 1, 1)] = k.one();
    CHECK(prod == expect);

    // y*y reduces by the curve equation to x^3 + x
    Vec y2 = E.mult_sections(1, ys, 1, ys);
    Vec expect2(E.dim(2), k.zero());
    expect2[E.monomial_index(2, 3, 0)] = k.one();
    expect2[E.monomial_index(2, 1, 0)] = k.one();
    CHECK(y2 == expect2);
}

TEST_CASE("hyperelliptic dims for x^5+1 over F_7") {
    Field F7 = Field::prime(7);
    Poly f(F7, {F7.one(), F7.zero(), F7.zero(), F7.zero(), F7.zero(), F7.one()});
    Curve X = Curve::hyperelliptic(F7, f, 4);
    CHECK(X.genus() == 2);
    CHECK(X.deg_l() == 5);
    CHECK(X.dim(1) == 4);   // 5*1 + 1 - 2
    CHECK(X.dim(2) == 9);
    CHECK(X.monomials(2).size() == 9);

    // non-squarefree f rejected
    Poly bad = Poly::x(F7) * Poly::x(F7) * Poly::x(F7);
    CHECK_THROWS_AS(Curve::hyperelliptic(F7, bad, 4), domain_error);
}

TEST_CASE("zeta data from point counts") {
    SUBCASE("genus 0") {
        Curve X = Curve::p1(Field::prime(2), 3, 4);
        CHECK(X.zeta().coeffs() == std::vector<std::int64_t>{1});
    }
    SUBCASE("y^2+y=x^3 over F_2: L = 1 + 2t^2") {
        Curve E = ell_f2();
        CHECK(E.zeta().coeffs() == std::vector<std::int64_t>{1, 0, 2});
        CHECK(E.zeta().class_number() == 3);
    }
    SUBCASE("y^2=x^3+x over F_5: L = 1 - 2t + 5t^2") {
        Curve E = ell_f5();
        CHECK(E.zeta().coeffs() == std::vector<std::int64_t>{1, -2, 5});
        CHECK(E.zeta().class_number() == 4);
    }
}

TEST_CASE("divisor counting formulas") {
    SUBCASE("P^1 over F_2") {
        Curve X = Curve::p1(Field::prime(2), 3, 4);
        const ZetaData& Z = X.zeta();
        CHECK(Z.count_prime_divisors(1) == 3);
        CHECK(Z.count_prime_divisors(2) == 1);
        CHECK(Z.count_effective(2).to_u64() == 7);
        CHECK(Z.count_effective(0).to_u64() == 1);
        // prime divisor counts for d = 1..4: 3, 1, 2, 3
        CHECK(Z.count_prime_divisors(3) == 2);
        CHECK(Z.count_prime_divisors(4) == 3);
    }
    SUBCASE("class number equals group order on y2+y=x3/F_2") {
        Curve E = ell_f2();
        CHECK(E.zeta().class_number() == 3);
    }
    SUBCASE("log-derivative identity: sum_{d|n} d #PDiv^d = 1 + q^n - s_n") {
        for (auto* mk : {+[] { return ell_f2(); }, +[] { return ell_f5(); }}) {
            Curve E = mk();
            const ZetaData& Z = E.zeta();
            for (unsigned n = 1; n <= 4; ++n) {
                std::int64_t lhs = 0;
                for (unsigned d = 1; d <= n; ++d)
                    if (n % d == 0) lhs += d * Z.count_prime_divisors(d);
                std::int64_t qn = 1;
                for (unsigned i = 0; i < n; ++i) qn *= static_cast<std::int64_t>(Z.q());
                CHECK(lhs == 1 + qn - Z.power_sum(n));
            }
        }
    }
    SUBCASE("consistency of class number with effective counts, g >= 1") {
        Curve E = ell_f5();
        const ZetaData& Z = E.zeta();
        unsigned g = 1;
        // #Eff^{2g} = (q^{1+g} - 1)/(q - 1) * L(1)
        BigUint eff = Z.count_effective(2 * g);
        std::int64_t q = static_cast<std::int64_t>(Z.q());
        std::int64_t factor = (q * q - 1) / (q - 1);
        CHECK(eff.to_u64() ==
              static_cast<std::uint64_t>(factor * Z.class_number()));
    }
}

TEST_CASE("zeta base extension") {
    Curve E = ell_f2();
    ZetaData Z4 = E.zeta().base_extend(2);
    CHECK(Z4.q() == 4);
    CHECK(Z4.class_number() == 9);  // E(F_4) has 9 points
    // direct count agrees
    CHECK(E.count_points(2) == 9);
}

TEST_CASE("point count oracle validates Weil bound") {
    CHECK_THROWS_AS(ZetaData::from_point_counts(2, 1, {100}), domain_error);
}

TEST_CASE("simple divisors: codimension equals degree") {
    Curve E = ell_f5(4);
    Field k = E.field();
    // P = (0,0), divisor P + 2*infinity at level 2: degree 3
    Subspace D = E.simple_divisor(2, Curve::AffinePoint{k.zero(), k.zero()}, 2);
    CHECK(D.codim() == 3);
    // 3*infinity
    Subspace O3 = E.simple_divisor(2, std::nullopt, 3);
    CHECK(O3.codim() == 3);
    // sections in O3 with pole order <= 3: span{1, x, y}
    Subspace O1 = E.simple_divisor(1, std::nullopt, 1);
    CHECK(O1.codim() == 1);

    Curve X = Curve::p1(Field::prime(2), 3, 4);
    Field F2 = X.field();
    Subspace P0 = X.p1_divisor(1, {{F2.zero(), 1}}, 0);
    CHECK(P0.codim() == 1);
    Subspace Pinf = X.p1_divisor(1, {}, 2);
    CHECK(Pinf.codim() == 2);
    Subspace both = X.p1_divisor(2, {{F2.one(), 2}, {F2.zero(), 1}}, 3);
    CHECK(both.codim() == 6);
}

TEST_CASE("base change embeds the graded ring compatibly") {
    Rng rng(31);
    Curve E = ell_f2(4);
    Field F4 = make_extension(E.field(), 2, rng);
    Curve E4 = E.base_change(F4);
    CHECK(E4.field().q() == 4);
    CHECK(E4.dim(2) == E.dim(2));
    // multiplication commutes with coefficient embedding
    for (int t = 0; t < 10; ++t) {
        Vec s, u;
        for (size_t i = 0; i < E.dim(1); ++i) {
            s.push_back(E.field().random(rng));
            u.push_back(E.field().random(rng));
        }
        Vec prod = E.mult_sections(1, s, 1, u);
        Vec se, ue;
        for (auto& x : s) se.push_back(F4.embed(x));
        for (auto& x : u) ue.push_back(F4.embed(x));
        Vec prod4 = E4.mult_sections(1, se, 1, ue);
        Vec prod_e;
        for (auto& x : prod) prod_e.push_back(F4.embed(x));
        CHECK(prod4 == prod_e);
    }
}

TEST_CASE("bpf pairs have common divisor zero") {
    // product with the pair spans the full next space
    for (auto kind : {0, 1, 2}) {
        Curve X = kind == 0   ? Curve::p1(Field::prime(3), 2, 5)
                  : kind == 1 ? ell_f5(5)
                              : [] {
                        Field F7 = Field::prime(7);
                        Poly f(F7, {F7.one(), F7.zero(), F7.zero(), F7.zero(), F7.zero(), F7.one()});
                        return Curve::hyperelliptic(F7, f, 5);
                    }();
        for (unsigned j = 1; j <= 2; ++j) {
            // common divisor 0: the pair times Gamma(L^(j+1)) spans the whole
            // of Gamma(L^(2j+1)), by the basepoint-free multiplication lemma
            auto pair = X.bpf_pair(j);
            std::vector<Vec> full_next;
            for (size_t r = 0; r < X.dim(j + 1); ++r)
                full_next.push_back(X.full_space(j + 1).basis_row(r));
            Subspace prod_full = X.mult_spans(j, pair, j + 1, full_next);
            CHECK(prod_full.dim() == X.dim(2 * j + 1));
        }
    }
}
