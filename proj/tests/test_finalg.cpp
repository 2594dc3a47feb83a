#include <algorithm>

#include "doctest.h"
#include "picard/finalg.hpp"

using namespace picard;

namespace {

// k[x]/(f) as a structure-constant algebra on the power basis
FiniteAlgebra poly_quotient_algebra(const Field& k, const Poly& f) {
    size_t d = f.degree();
    auto to_vec = [&](const Poly& g) {
        Vec v(d, k.zero());
        for (size_t i = 0; i < d; ++i) v[i] = g.coeff(i);
        return v;
    };
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            std::vector<FieldElement> c(i + j + 1, k.zero());
            c[i + j] = k.one();
            table[i][j] = to_vec(Poly(k, std::move(c)) % f);
        }
    Vec one(d, k.zero());
    one[0] = k.one();
    return FiniteAlgebra(k, std::move(table), std::move(one));
}

// product algebra A x B
FiniteAlgebra product_algebra(const FiniteAlgebra& A, const FiniteAlgebra& B) {
    const Field& k = A.field();
    size_t da = A.dim(), db = B.dim(), d = da + db;
    auto basis = [&](size_t n, size_t i) {
        Vec e(n, k.zero());
        e[i] = k.one();
        return e;
    };
    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, Vec(d, k.zero())));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            Vec out(d, k.zero());
            if (i < da && j < da) {
                Vec ab = A.mul(basis(da, i), basis(da, j));
                for (size_t t = 0; t < da; ++t) out[t] = ab[t];
            } else if (i >= da && j >= da) {
                Vec ab = B.mul(basis(db, i - da), basis(db, j - da));
                for (size_t t = 0; t < db; ++t) out[da + t] = ab[t];
            }
            table[i][j] = out;
        }
    Vec one(d, k.zero());
    for (size_t t = 0; t < da; ++t) one[t] = A.one()[t];
    for (size_t t = 0; t < db; ++t) one[da + t] = B.one()[t];
    return FiniteAlgebra(k, std::move(table), std::move(one));
}

}  // namespace

TEST_CASE("is_unit") {
    Field F2 = Field::prime(2);
    Poly x2(F2, {F2.zero(), F2.zero(), F2.one()});  // x^2
    FiniteAlgebra A = poly_quotient_algebra(F2, x2);
    CHECK(A.is_unit(A.one()));
    CHECK(!A.is_unit(Vec(2, F2.zero())));
    CHECK(!A.is_unit(Vec{F2.zero(), F2.one()}));  // x
    CHECK(A.is_unit(Vec{F2.one(), F2.one()}));    // 1+x
}

TEST_CASE("primary decomposition of k itself") {
    Rng rng(21);
    Field F5 = Field::prime(5);
    FiniteAlgebra A = poly_quotient_algebra(F5, Poly::x(F5));
    auto dec = primary_decomposition(A, rng);
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].residue_degree == 1);
    CHECK(dec[0].max_ideal.dim() == 0);
}

TEST_CASE("primary decomposition of F_2[x]/(x^2+x)") {
    Rng rng(22);
    Field F2 = Field::prime(2);
    Poly f(F2, {F2.zero(), F2.one(), F2.one()});
    FiniteAlgebra A = poly_quotient_algebra(F2, f);
    auto dec = primary_decomposition(A, rng);
    REQUIRE(dec.size() == 2);
    for (auto& lf : dec) {
        CHECK(lf.local.dim() == 1);
        CHECK(lf.residue_degree == 1);
        CHECK(lf.max_ideal.dim() == 0);
    }
}

TEST_CASE("primary decomposition of F_3[x]/((x^2+1) x^2)") {
    Rng rng(23);
    Field F3 = Field::prime(3);
    Poly x2p1(F3, {F3.one(), F3.zero(), F3.one()});
    Poly f = x2p1 * Poly::x(F3) * Poly::x(F3);
    FiniteAlgebra A = poly_quotient_algebra(F3, f);
    auto dec = primary_decomposition(A, rng);
    REQUIRE(dec.size() == 2);
    std::sort(dec.begin(), dec.end(),
              [](const LocalFactor& a, const LocalFactor& b) { return a.residue_degree > b.residue_degree; });
    CHECK(dec[0].local.dim() == 2);
    CHECK(dec[0].residue_degree == 2);
    CHECK(dec[0].max_ideal.dim() == 0);
    CHECK(dec[1].local.dim() == 2);
    CHECK(dec[1].residue_degree == 1);
    CHECK(dec[1].max_ideal.dim() == 1);

    // projections are ring maps and jointly injective
    for (auto& lf : dec) {
        for (int t = 0; t < 20; ++t) {
            Vec a = A.random_element(rng), b = A.random_element(rng);
            CHECK(lf.projection.apply(A.mul(a, b)) ==
                  lf.local.mul(lf.projection.apply(a), lf.projection.apply(b)));
        }
    }
    Mat stacked(F3, 4, 4);
    for (size_t j = 0; j < 4; ++j) {
        Vec ej(4, F3.zero());
        ej[j] = F3.one();
        Vec c0 = dec[0].projection.apply(ej), c1 = dec[1].projection.apply(ej);
        for (size_t i = 0; i < 2; ++i) stacked.at(i, j) = c0[i];
        for (size_t i = 0; i < 2; ++i) stacked.at(2 + i, j) = c1[i];
    }
    CHECK(stacked.inverse().has_value());
}

TEST_CASE("malformed algebra rejected") {
    Field F2 = Field::prime(2);
    // non-commutative table on dimension 2
    std::vector<std::vector<Vec>> t(2, std::vector<Vec>(2, Vec(2, F2.zero())));
    t[0][0] = {F2.one(), F2.zero()};
    t[0][1] = {F2.zero(), F2.one()};
    t[1][0] = {F2.one(), F2.one()};  // != t[0][1]
    t[1][1] = {F2.zero(), F2.zero()};
    Vec one{F2.one(), F2.zero()};
    CHECK_THROWS_AS(FiniteAlgebra(F2, t, one), domain_error);
}

TEST_CASE("decomposition recovers random products of local algebras") {
    Rng rng(24);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Field k = Field::prime(p);
        for (int t = 0; t < 25; ++t) {
            // build 1-3 local pieces k[x]/(g^e) with g irreducible
            size_t pieces = 1 + rng.below(3);
            std::vector<size_t> dims, resdegs;
            FiniteAlgebra A;
            bool first = true;
            size_t total = 0;
            for (size_t i = 0; i < pieces && total < 9; ++i) {
                unsigned dg = 1 + static_cast<unsigned>(rng.below(2));
                unsigned e = 1 + static_cast<unsigned>(rng.below(2));
                Poly g = Poly::zero(k);
                do {
                    g = random_monic(k, dg, rng);
                } while (!is_irreducible(g, rng));
                Poly ge = Poly::one(k);
                for (unsigned s = 0; s < e; ++s) ge = ge * g;
                FiniteAlgebra piece = poly_quotient_algebra(k, ge);
                dims.push_back(piece.dim());
                resdegs.push_back(dg);
                total += piece.dim();
                if (first) {
                    A = piece;
                    first = false;
                } else {
                    A = product_algebra(A, piece);
                }
            }
            auto dec = primary_decomposition(A, rng);
            // the decomposition is unique: multisets of (dim, residue degree)
            // must match the construction exactly
            size_t sum = 0;
            for (auto& lf : dec) sum += lf.local.dim();
            CHECK(sum == A.dim());
            std::vector<std::pair<size_t, size_t>> got, want;
            for (auto& lf : dec) got.emplace_back(lf.local.dim(), lf.residue_degree);
            for (size_t i = 0; i < dims.size(); ++i) want.emplace_back(dims[i], resdegs[i]);
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            CHECK(got == want);
        }
    }
}

TEST_CASE("algebra from bilinear map: trivial case") {
    Rng rng(25);
    Field F5 = Field::prime(5);
    BilinearMap mu;
    mu.k = F5;
    mu.dimM = 1;
    mu.dimO = 1;
    mu.tensor = {{Vec{F5.one()}}};
    auto basis = algebra_from_bilinear_map(mu, rng);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == Mat::identity(F5, 1));
}

TEST_CASE("algebra from bilinear map: F_2 x F_2 acting on itself") {
    Rng rng(26);
    Field F2 = Field::prime(2);
    BilinearMap mu;
    mu.k = F2;
    mu.dimM = 2;
    mu.dimO = 2;
    // componentwise multiplication
    mu.tensor.assign(2, std::vector<Vec>(2, Vec(2, F2.zero())));
    mu.tensor[0][0] = {F2.one(), F2.zero()};
    mu.tensor[1][1] = {F2.zero(), F2.one()};
    auto basis = algebra_from_bilinear_map(mu, rng);
    REQUIRE(basis.size() == 2);
    // canonical echelon basis of span{diag(1,0), diag(0,1)}
    Mat d1(F2, 2, 2), d2(F2, 2, 2);
    d1.at(0, 0) = F2.one();
    d2.at(1, 1) = F2.one();
    CHECK(basis[0] == d1);
    CHECK(basis[1] == d2);

    // closure and commutativity of the reconstructed span
    FiniteAlgebra A = algebra_from_matrix_basis(F2, basis);
    CHECK(A.dim() == 2);
}

TEST_CASE("sigma variant over a larger field") {
    Rng rng(27);
    Field F7 = Field::prime(7);
    Poly f(F7, {F7.one(), F7.zero(), F7.one()});  // x^2+1, splits mod 7? 7=3 mod 4: irreducible
    FiniteAlgebra A = poly_quotient_algebra(F7, f);
    // mu = multiplication of A on itself
    BilinearMap mu;
    mu.k = F7;
    mu.dimM = 2;
    mu.dimO = 2;
    mu.tensor.assign(2, std::vector<Vec>(2));
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            Vec ei(2, F7.zero()), ej(2, F7.zero());
            ei[i] = F7.one();
            ej[j] = F7.one();
            mu.tensor[i][j] = A.mul(ei, ej);
        }
    std::vector<FieldElement> sigma;
    for (int i = 0; i < 5; ++i) sigma.push_back(F7.from_int(i));
    auto basis = algebra_from_bilinear_map_sigma(mu, sigma, rng);
    CHECK(basis.size() == 2);
    FiniteAlgebra B = algebra_from_matrix_basis(F7, basis);
    CHECK(B.dim() == 2);
}

TEST_CASE("generator acceptance rate over the extension is at least 0.4") {
    Rng rng(28);
    Field F2 = Field::prime(2);
    Poly x3(F2, {F2.zero(), F2.zero(), F2.zero(), F2.one()});
    FiniteAlgebra A = poly_quotient_algebra(F2, x3);  // F_2[x]/(x^3), d = 3
    BilinearMap mu;
    mu.k = F2;
    mu.dimM = 3;
    mu.dimO = 3;
    mu.tensor.assign(3, std::vector<Vec>(3));
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            Vec ei(3, F2.zero()), ej(3, F2.zero());
            ei[i] = F2.one();
            ej[j] = F2.one();
            mu.tensor[i][j] = A.mul(ei, ej);
        }
    // the finite-field rule picks k' with #k' >= 2[A:k] = 6, i.e. F_8
    Field K = make_extension(F2, 3, rng);
    BilinearMap muK = mu.base_extend(K);
    int ok = 0;
    const int N = 1000;
    for (int t = 0; t < N; ++t) {
        Vec g;
        for (int i = 0; i < 3; ++i) g.push_back(K.random(rng));
        if (muK.right_matrix(g).inverse().has_value()) ++ok;
    }
    CHECK(ok >= 400);
}
