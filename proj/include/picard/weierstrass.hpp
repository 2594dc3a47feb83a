#ifndef PICARD_WEIERSTRASS_HPP
#define PICARD_WEIERSTRASS_HPP

#include <array>
#include <optional>
#include <vector>

#include "picard/gf.hpp"
#include "picard/rng.hpp"

namespace picard {

// Chord-tangent arithmetic on a general Weierstrass curve
//   y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6.
// Deliberately self-contained: it never touches the linear-algebra model of
// the Picard group, so it can serve as a reference for it.
class WeierstrassLaw {
public:
    // a point is an affine pair or the point at infinity (nullopt)
    using Point = std::optional<std::pair<FieldElement, FieldElement>>;

    WeierstrassLaw(const Field& k, const std::array<FieldElement, 5>& a) : k_(k), a_(a) {}

    // the same law with coefficients embedded into an extension
    WeierstrassLaw over(const Field& K) const {
        std::array<FieldElement, 5> a;
        for (int i = 0; i < 5; ++i) a[i] = K.embed(a_[i]);
        return WeierstrassLaw(K, a);
    }

    static Point infinity() { return std::nullopt; }

    bool on_curve(const Point& P) const {
        if (!P) return true;
        auto [x, y] = *P;
        FieldElement lhs = y * y + a_[0] * x * y + a_[2] * y;
        FieldElement rhs = ((x + a_[1]) * x + a_[3]) * x + a_[4];
        return lhs == rhs;
    }

    Point neg(const Point& P) const {
        if (!P) return P;
        auto [x, y] = *P;
        return std::make_pair(x, -y - a_[0] * x - a_[2]);
    }

    Point add(const Point& P, const Point& Q) const {
        if (!P) return Q;
        if (!Q) return P;
        auto [x1, y1] = *P;
        auto [x2, y2] = *Q;
        if (x1 == x2 && y2 == (-y1 - a_[0] * x1 - a_[2])) return infinity();
        FieldElement lam, nu;
        if (x1 == x2) {
            // tangent
            FieldElement num = k_.from_int(3) * x1 * x1 + k_.from_int(2) * a_[1] * x1 + a_[3] -
                               a_[0] * y1;
            FieldElement den = k_.from_int(2) * y1 + a_[0] * x1 + a_[2];
            lam = num * den.inverse();
        } else {
            lam = (y2 - y1) * (x2 - x1).inverse();
        }
        nu = y1 - lam * x1;
        FieldElement x3 = lam * lam + a_[0] * lam - a_[1] - x1 - x2;
        FieldElement y3 = -(lam + a_[0]) * x3 - nu - a_[2];
        return std::make_pair(x3, y3);
    }

    Point mul(std::int64_t n, Point P) const {
        if (n < 0) {
            P = neg(P);
            n = -n;
        }
        Point acc = infinity();
        while (n) {
            if (n & 1) acc = add(acc, P);
            P = add(P, P);
            n >>= 1;
        }
        return acc;
    }

    // all rational points over K (K must extend the coefficient field)
    std::vector<Point> points(const Field& K, Rng& rng) const {
        std::vector<Point> out{infinity()};
        for (std::uint64_t ix = 0; ix < K.q(); ++ix) {
            FieldElement x0 = K.from_index(ix);
            FieldElement c1 = K.embed(a_[0]) * x0 + K.embed(a_[2]);
            FieldElement c0 = ((x0 + K.embed(a_[1])) * x0 + K.embed(a_[3])) * x0 + K.embed(a_[4]);
            Poly quad(K, {-c0, c1, K.one()});
            for (auto& y0 : poly_roots(quad, rng)) out.push_back(std::make_pair(x0, y0));
        }
        return out;
    }

private:
    Field k_;
    std::array<FieldElement, 5> a_;
};

}  // namespace picard

#endif
