#include "doctest.h"
#include "picard/morphism.hpp"

using namespace picard;

namespace {

// x-map test pair over F_5: y^2 = x^3 + x with L = O(6 inf), P^1 with O(3).
// The morphism refers to the curves by address, so they are fixed members.
struct XMapPair {
    Curve E, Y;
    std::optional<FiniteMorphism> fm;
    explicit XMapPair(unsigned h = 6) : E(make_source(h)), Y(Curve::p1(E.field(), 3, h)) {
        fm.emplace(FiniteMorphism::x_map(E, Y));
    }
    const FiniteMorphism& f() const { return *fm; }

private:
    static Curve make_source(unsigned h) {
        Field k = Field::prime(5);
        return Curve::elliptic(k, {k.zero(), k.zero(), k.zero(), k.one(), k.zero()}, h, 2);
    }
};

}  // namespace

TEST_CASE("power map on P^1 over F_3") {
    Field k = Field::prime(3);
    Curve Y = Curve::p1(k, 1, 6);
    Curve X = Curve::p1(k, 2, 6);
    FiniteMorphism f = FiniteMorphism::power_map_p1(X, Y, 2);
    CHECK(f.degree() == 2);

    SUBCASE("image of (a:1) is (a^2:1)") {
        for (std::uint64_t ia = 0; ia < 3; ++ia) {
            FieldElement a = k.from_index(ia);
            DivisorRep D{&X, 2, X.p1_divisor(2, {{a, 1}}, 0)};
            DivisorRep img = image_divisor(f, D);
            CHECK(img.space == Y.p1_divisor(2, {{a * a, 1}}, 0));
        }
        // infinity maps to infinity
        DivisorRep Dinf{&X, 2, X.p1_divisor(2, {}, 1)};
        CHECK(image_divisor(f, Dinf).space == Y.p1_divisor(2, {}, 1));
    }
    SUBCASE("image of the zero divisor is the zero divisor") {
        DivisorRep Z = zero_divisor(X, 2);
        CHECK(image_divisor(f, Z).space == Y.full_space(2));
    }
    SUBCASE("ramification: e = 2 at (0:1) and at infinity, 1 elsewhere") {
        Rng rng(81);
        DivisorRep P0{&X, 2, X.p1_divisor(2, {{k.zero(), 1}}, 0)};
        CHECK(ramification_index(f, P0, rng) == 2);
        DivisorRep Pinf{&X, 2, X.p1_divisor(2, {}, 1)};
        CHECK(ramification_index(f, Pinf, rng) == 2);
        DivisorRep P1{&X, 2, X.p1_divisor(2, {{k.one(), 1}}, 0)};
        CHECK(ramification_index(f, P1, rng) == 1);
    }
    SUBCASE("f_* f^* E = 2 E exhaustively over degree-1 divisors") {
        Rng rng(82);
        std::vector<Subspace> points;
        for (std::uint64_t ia = 0; ia < 3; ++ia)
            points.push_back(Y.p1_divisor(2, {{k.from_index(ia), 1}}, 0));
        points.push_back(Y.p1_divisor(2, {}, 1));
        for (auto& sp : points) {
            DivisorRep E{&Y, 2, sp};
            DivisorRep pb = pull_back(f, E);
            CHECK(pb.degree() == 2);
            DivisorRep fwd = push_forward(f, pb, rng);
            DivisorRep twoE = change_level(add_divisors(E, E), 2);
            CHECK(fwd == twoE);
        }
    }
}

TEST_CASE("x-map of an elliptic curve") {
    XMapPair pair(6);
    const Curve& E = pair.E;
    const Curve& Y = pair.Y;
    const FiniteMorphism& f = pair.f();
    Field k = E.field();
    CHECK(f.degree() == 2);
    Rng rng(83);

    SUBCASE("image of an affine point (a,b) is (a:1)") {
        // the rational points of y^2 = x^3+x over F_5 are (0,0), (2,0), (3,0)
        for (std::uint64_t ia : {0u, 2u, 3u}) {
            FieldElement a = k.from_index(ia);
            DivisorRep P{&E, 2, E.simple_divisor(2, Curve::AffinePoint{a, k.zero()}, 0)};
            CHECK(image_divisor(f, P).space == Y.p1_divisor(2, {{a, 1}}, 0));
        }
        DivisorRep O{&E, 2, E.simple_divisor(2, std::nullopt, 1)};
        CHECK(image_divisor(f, O).space == Y.p1_divisor(2, {}, 1));
    }

    SUBCASE("pull-back at a 2-torsion x-coordinate is ramified") {
        DivisorRep E0{&Y, 2, Y.p1_divisor(2, {{k.zero(), 1}}, 0)};
        DivisorRep pb = pull_back(f, E0);
        CHECK(pb.degree() == 2);
        DivisorRep P{&E, 1, E.simple_divisor(1, Curve::AffinePoint{k.zero(), k.zero()}, 0)};
        DivisorRep twice = add_divisors(P, P);
        CHECK(pb == twice);
        CHECK(ramification_index(f, change_level(P, 2), rng) == 2);
    }

    SUBCASE("pull-back at an inert x-coordinate is a degree-2 prime") {
        DivisorRep E1{&Y, 2, Y.p1_divisor(2, {{k.one(), 1}}, 0)};
        DivisorRep pb = pull_back(f, E1);
        CHECK(pb.degree() == 2);
        auto parts = decompose(pb, rng);
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].degree == 2);
        CHECK(parts[0].multiplicity == 1);
        CHECK(ramification_index(f, parts[0].prime, rng) == 1);
        // push-forward of the prime: residue degree 2 over the image
        DivisorRep fwd = push_forward(f, parts[0].prime, rng);
        DivisorRep twoE1 = change_level(add_divisors(E1, E1), 2);
        CHECK(fwd == twoE1);
    }

    SUBCASE("f_* f^* E = 2 E for random degree-1 divisors, and fiber sums") {
        for (std::uint64_t ia = 0; ia < 5; ++ia) {
            FieldElement a = k.from_index(ia);
            DivisorRep Ept{&Y, 2, Y.p1_divisor(2, {{a, 1}}, 0)};
            DivisorRep pb = pull_back(f, Ept);
            DivisorRep fwd = push_forward(f, pb, rng);
            CHECK(fwd == change_level(add_divisors(Ept, Ept), 2));
            // fundamental identity: sum of e(P) [k(P):k(Q)] over the fiber
            unsigned total = 0;
            for (auto& p : decompose(pb, rng)) {
                unsigned e = p.multiplicity;  // multiplicity in f^* Q is e(P)
                unsigned resdeg = p.degree / image_divisor(f, p.prime).degree();
                total += e * resdeg;
            }
            CHECK(total == f.degree());
        }
    }

    SUBCASE("fiber sum over infinity") {
        DivisorRep Einf{&Y, 2, Y.p1_divisor(2, {}, 1)};
        DivisorRep pb = pull_back(f, Einf);
        auto parts = decompose(pb, rng);
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].degree == 1);
        CHECK(parts[0].multiplicity == 2);  // infinity is ramified under x
    }
}

TEST_CASE("push-forward by a rational function") {
    Rng rng(84);
    SUBCASE("psi = x^3 on the elliptic curve, evaluated at rational points") {
        XMapPair pair(6);
        const Curve& E = pair.E;
        Field k = E.field();
        // s = x^3 (pole order 6, vanishes only above x = 0), t = 1 (div = 6 inf)
        Vec s(E.dim(1), k.zero()), t(E.dim(1), k.zero());
        s[E.monomial_index(1, 3, 0)] = k.one();
        t[0] = k.one();
        for (std::uint64_t ia : {2u, 3u}) {
            FieldElement a = k.from_index(ia);
            DivisorRep D{&E, 2, E.simple_divisor(2, Curve::AffinePoint{a, k.zero()}, 0)};
            HomogPoly fpsi = push_forward_by_function(E, 1, s, t, D, rng);
            // psi(a, 0) = a^3; normalized u - a^3 v
            REQUIRE(fpsi.size() == 2);
            CHECK(fpsi[0] == k.one());
            CHECK(fpsi[1] == -(a * a * a));
        }
        // multiplicativity: D = P + Q gives the product of the linear forms
        FieldElement a2 = k.from_int(2), a3 = k.from_int(3);
        DivisorRep P2{&E, 1, E.simple_divisor(1, Curve::AffinePoint{a2, k.zero()}, 0)};
        DivisorRep P3{&E, 1, E.simple_divisor(1, Curve::AffinePoint{a3, k.zero()}, 0)};
        DivisorRep D = add_divisors(P2, P3);
        HomogPoly fpsi = push_forward_by_function(E, 1, s, t, D, rng);
        HomogPoly expect = homog_mul(k, {k.one(), -(a2 * a2 * a2)}, {k.one(), -(a3 * a3 * a3)});
        REQUIRE(fpsi.size() == 3);
        CHECK(fpsi == expect);

        // common zeros rejected: s and s have everything in common
        CHECK_THROWS_AS(push_forward_by_function(E, 1, s, s, D, rng), domain_error);
    }
    SUBCASE("degree-2 prime on P^1/F_2 maps to an irreducible norm form") {
        Curve X = Curve::p1(Field::prime(2), 2, 6);
        Field k = X.field();
        // psi = (u/v)^2 as the pair (u^2, v^2) in Gamma(L^1), no common zeros
        Vec s(3, k.zero()), t(3, k.zero());
        s[0] = k.one();
        t[2] = k.one();
        // D = the degree-2 prime, divisor of the section u^2+uv+v^2 of L^1
        Vec q{k.one(), k.one(), k.one()};
        DivisorRep D = change_level(divisor_of_section(X, 1, q, 2), 2);
        HomogPoly fpsi = push_forward_by_function(X, 1, s, t, D, rng);
        REQUIRE(fpsi.size() == 3);
        // psi(P') = alpha^2 for alpha a root of x^2+x+1; the pushforward form
        // is the minimal polynomial of alpha^2 = alpha + 1, again x^2+x+1
        CHECK(fpsi[0] == k.one());
        CHECK(fpsi[1] == k.one());
        CHECK(fpsi[2] == k.one());
    }
}

TEST_CASE("picard and albanese maps") {
    XMapPair pair(6);
    const Curve& E = pair.E;
    const Curve& Y = pair.Y;
    const FiniteMorphism& f = pair.f();
    Field k = E.field();
    Rng rng(85);
    DivisorRep OY{&Y, 1, Y.p1_divisor(1, {}, 1)};
    NormalizationContext ctxY = make_normalization_context(Y, OY);

    SUBCASE("picard map sends zero to zero, albanese lands in the trivial group") {
        PicardElement zy = zero_element(Y);
        CHECK(pic_is_zero(picard_map(f, zy)));
        // Pic^0 of P^1 is trivial: every Albanese image is zero
        PicardElement x = point_class(E, Curve::AffinePoint{k.zero(), k.zero()});
        PicardElement ax = albanese_map(f, x, ctxY, rng);
        CHECK(pic_is_zero(ax));
        CHECK(pic_is_zero(albanese_map(f, zero_element(E), ctxY, rng)));
    }
    SUBCASE("albanese is additive (trivially through the class group of P^1)") {
        PicardElement x1 = point_class(E, Curve::AffinePoint{k.from_int(2), k.zero()});
        PicardElement x2 = point_class(E, Curve::AffinePoint{k.from_int(3), k.zero()});
        PicardElement lhs = albanese_map(f, pic_add(x1, x2), ctxY, rng);
        PicardElement rhs =
            pic_add(albanese_map(f, x1, ctxY, rng), albanese_map(f, x2, ctxY, rng));
        CHECK(pic_equal(lhs, rhs));
    }
    SUBCASE("alb then pic filtered through Pic^0 Y is multiplication by 0") {
        // Pic f (Alb f x) factors through Pic^0(P^1) = 0
        PicardElement x = point_class(E, Curve::AffinePoint{k.zero(), k.zero()});
        PicardElement comp = picard_map(f, albanese_map(f, x, ctxY, rng));
        CHECK(pic_is_zero(comp));
    }
}
