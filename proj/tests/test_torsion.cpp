#include "doctest.h"
#include "picard/torsion.hpp"
#include "picard/weierstrass.hpp"

using namespace picard;

namespace {

Curve ell_f5(unsigned h = 7) {
    Field k = Field::prime(5);
    return Curve::elliptic(k, {k.zero(), k.zero(), k.zero(), k.one(), k.zero()}, h);
}
Curve ell_f2(unsigned h = 7) {
    Field k = Field::prime(2);
    return Curve::elliptic(k, {k.zero(), k.zero(), k.one(), k.zero(), k.zero()}, h);
}

}  // namespace

TEST_CASE("generation sample size") {
    CHECK(generation_sample_size(0, 0.5, 2) == 0);
    CHECK(generation_sample_size(1, 0.5, 2) == 1);
    CHECK(generation_sample_size(2, 0.9, 3) == 4);
    CHECK_THROWS_AS(generation_sample_size(2, 1.5, 3), domain_error);
}

TEST_CASE("kummer data") {
    SUBCASE("y^2 = x^3 + x over F_5, l = 2") {
        Curve E = ell_f5();
        KummerData kd = kummer_data(E.zeta(), 2, 5);
        CHECK(kd.chi == std::vector<std::int64_t>{5, -2, 1});  // t^2 - 2t + 5
        CHECK(kd.b == 2);
        CHECK(kd.a == 2);
        CHECK(kd.c_a == 5);  // #J(F_25) = 32
        CHECK(kd.m_a == 1);
        // f f_perp = chi mod l^{c_a}; f = (t-1)^2 mod 2
        std::uint64_t M = kd.mod;
        auto prod = detail::pm_mul(kd.f_lift, kd.fp_lift, M);
        for (size_t i = 0; i < prod.size(); ++i) {
            std::int64_t want = i < kd.chi.size() ? kd.chi[i] : 0;
            std::int64_t w = want % static_cast<std::int64_t>(M);
            if (w < 0) w += static_cast<std::int64_t>(M);
            CHECK(prod[i] == static_cast<std::uint64_t>(w));
        }
        CHECK((kd.f_lift[0] % 2) == 1);  // (t-1)^2 = t^2 + 1 mod 2
        CHECK((kd.f_lift[1] % 2) == 0);
        // t^a = 1 in F_l[t]/(t-1)^b: (t^2 - 1) = (t-1)^2 mod 2: divisible
        // h_a: t^2 - 1 = l h_a mod f
        CHECK(kd.h_a.size() == kd.b);
    }
    SUBCASE("y^2+y = x^3 over F_2, l = 3") {
        Curve E = ell_f2();
        KummerData kd = kummer_data(E.zeta(), 3, 2);
        CHECK(kd.chi == std::vector<std::int64_t>{2, 0, 1});  // t^2 + 2
        CHECK(kd.b == 1);
        CHECK(kd.a == 1);
        CHECK(kd.c_a == 1);  // #J(F_2) = 3
        CHECK(kd.m_a == 1);
    }
    SUBCASE("l = 5 over F_2: b = 0") {
        Curve E = ell_f2();
        KummerData kd = kummer_data(E.zeta(), 5, 2);
        CHECK(kd.b == 0);
    }
    SUBCASE("l equal to the characteristic is rejected") {
        Curve E = ell_f2();
        CHECK_THROWS_AS(kummer_data(E.zeta(), 2, 2), domain_error);
    }
}

TEST_CASE("find_relations") {
    Rng rng(101);
    Curve E = ell_f5();
    Field k = E.field();

    SUBCASE("single zero point: kernel is everything") {
        RelationBasis rel = find_relations(E, {zero_element(E)}, 2, 0.9, rng);
        REQUIRE(rel.vectors.size() == 1);
        CHECK(rel.vectors[0] == std::vector<std::uint64_t>{1});
    }
    SUBCASE("duplicate point: kernel spanned by (1,1) mod 2") {
        PicardElement x = point_class(E, Curve::AffinePoint{k.zero(), k.zero()});
        RelationBasis rel = find_relations(E, {x, x}, 2, 0.9, rng);
        REQUIRE(rel.vectors.size() == 1);
        CHECK(rel.vectors[0] == std::vector<std::uint64_t>{1, 1});
    }
    SUBCASE("(P1, P2, P1+P2): kernel spanned by (1,1,1)") {
        PicardElement x1 = point_class(E, Curve::AffinePoint{k.zero(), k.zero()});
        PicardElement x2 = point_class(E, Curve::AffinePoint{k.from_int(2), k.zero()});
        PicardElement x3 = pic_add(x1, x2);
        RelationBasis rel = find_relations(E, {x1, x2, x3}, 2, 0.9, rng);
        REQUIRE(rel.vectors.size() == 1);
        CHECK(rel.vectors[0] == std::vector<std::uint64_t>{1, 1, 1});
    }
}

TEST_CASE("random G[l] elements") {
    Rng rng(102);
    SUBCASE("b = 0 gives the zero class") {
        Curve E = ell_f2();
        KummerData kd = kummer_data(E.zeta(), 5, 2);
        SmoothCountTable t(E.zeta(), E.deg_l(), E.deg_l());
        PicardElement z = random_Gl_element(E, t, kd, 2, rng);
        CHECK(pic_is_zero(z));
    }
    SUBCASE("outputs are l-torsion (elliptic/F_2, l = 3, a = 1)") {
        Curve E = ell_f2();
        KummerData kd = kummer_data(E.zeta(), 3, 2);
        REQUIRE(kd.a == 1);
        SmoothCountTable t(E.zeta(), E.deg_l(), E.deg_l());
        for (int s = 0; s < 5; ++s) {
            PicardElement z = random_Gl_element(E, t, kd, 2, rng);
            CHECK(pic_is_zero(scalar_mul(3, z)));
        }
    }
}

TEST_CASE("h_a consistency: l h_a(F_q) = F_q^a - 1 on G(k_a)") {
    Rng rng(103);
    Curve E = ell_f2();
    KummerData kd = kummer_data(E.zeta(), 3, 2);
    SmoothCountTable t(E.zeta(), E.deg_l(), E.deg_l());
    for (int s = 0; s < 4; ++s) {
        // an element of G(k_a) = e(F_q)(m_a J(k_a))
        PicardElement y = random_picard_element(E, t, rng);
        PicardElement x = frobenius_polynomial(kd.e, 2, scalar_mul(static_cast<std::int64_t>(kd.m_a), y));
        PicardElement lhs = scalar_mul(static_cast<std::int64_t>(kd.l),
                                       frobenius_polynomial(kd.h_a, 2, x));
        PicardElement rhs = pic_sub(frobenius_point(x, 2), x);  // a = 1: F_q - 1
        CHECK(pic_equal(lhs, rhs));
    }
}

TEST_CASE("l-torsion basis sizes") {
    Rng rng(104);
    SUBCASE("elliptic/F_2, l = 3: basis of size 1") {
        Curve E = ell_f2();
        TorsionBasis tb = l_torsion_basis(E, 3, 0.9, rng);
        REQUIRE(tb.basis.size() == 1);
        const Curve& Xa = *tb.Xa;
        for (auto& z : tb.basis) {
            CHECK(pic_is_zero(scalar_mul(3, z)));
            CHECK(pic_equal(frobenius_point(z, 2), z));
            CHECK(!pic_is_zero(z));
        }
        (void)Xa;
    }
    SUBCASE("elliptic/F_2, l = 5: empty basis") {
        Curve E = ell_f2();
        TorsionBasis tb = l_torsion_basis(E, 5, 0.9, rng);
        CHECK(tb.basis.empty());
    }
}
