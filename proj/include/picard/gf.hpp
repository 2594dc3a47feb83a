#ifndef PICARD_GF_HPP
#define PICARD_GF_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "picard/common.hpp"
#include "picard/rng.hpp"

namespace picard {

class Field;
class FieldElement;
class Poly;

// A finite field F_{p^n}, stored flat over its prime field: elements are
// coefficient vectors with respect to the power basis of a root of the
// defining polynomial.  Towers are never nested; an extension of an
// extension is re-flattened over F_p and the subfield embedding recorded.
struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t n = 1;
    std::vector<std::uint32_t> modulus;  // monic, length n+1, coeffs mod p
    std::uint64_t q = 0;                 // p^n

    // set when this field was created as an extension of another one
    std::shared_ptr<const FieldData> base;
    std::vector<std::uint32_t> base_gen_image;  // image of base's generator here

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p);
    }
    std::uint32_t neg(std::uint32_t a) const { return a ? p - a : 0; }
    std::uint32_t inv_mod_p(std::uint32_t a) const {
        // extended Euclid in Z
        require(a % p != 0, "inverse of 0 mod p");
        std::int64_t t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            std::int64_t qq = r / nr;
            std::swap(t -= qq * nt, nt);
            std::swap(r -= qq * nr, nr);
        }
        return static_cast<std::uint32_t>(t < 0 ? t + p : t);
    }
};

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldData* f, std::vector<std::uint32_t> c) : f_(f), c_(std::move(c)) {
        check(c_.size() == f_->n, "element length mismatch");
    }

    const FieldData* data() const { return f_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto v : c_)
            if (v) return false;
        return true;
    }
    bool is_one() const {
        if (c_[0] != 1) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    // total order used wherever a deterministic choice is needed
    static int cmp(const FieldElement& a, const FieldElement& b) {
        for (size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i] ? -1 : 1;
        return 0;
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check(a.f_ == b.f_, "field mismatch in addition");
        FieldElement r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_->add(r.c_[i], b.c_[i]);
        return r;
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check(a.f_ == b.f_, "field mismatch in subtraction");
        FieldElement r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_->sub(r.c_[i], b.c_[i]);
        return r;
    }
    FieldElement operator-() const {
        FieldElement r = *this;
        for (auto& v : r.c_) v = f_->neg(v);
        return r;
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check(a.f_ == b.f_, "field mismatch in multiplication");
        const FieldData* f = a.f_;
        std::uint32_t n = f->n;
        if (n == 1) return FieldElement(f, {f->mul(a.c_[0], b.c_[0])});
        std::vector<std::uint64_t> acc(2 * n - 1, 0);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (!a.c_[i]) continue;
            for (std::uint32_t j = 0; j < n; ++j)
                acc[i + j] = (acc[i + j] + std::uint64_t(a.c_[i]) * b.c_[j]) % f->p;
        }
        // reduce mod the (monic) defining polynomial
        for (size_t i = 2 * n - 2; i >= n; --i) {
            std::uint64_t c = acc[i] % f->p;
            if (c) {
                for (std::uint32_t j = 0; j < n; ++j) {
                    std::uint64_t sub = (c * f->modulus[j]) % f->p;
                    acc[i - n + j] = (acc[i - n + j] + f->p - sub) % f->p;
                }
            }
            if (i == n) break;
        }
        std::vector<std::uint32_t> out(n);
        for (std::uint32_t i = 0; i < n; ++i) out[i] = static_cast<std::uint32_t>(acc[i] % f->p);
        return FieldElement(f, std::move(out));
    }

    FieldElement pow(std::uint64_t e) const;
    FieldElement inverse() const;

    // x -> x^(p^k)
    FieldElement frobenius(unsigned k = 1) const;

    FieldElement scaled(std::uint32_t s) const {
        FieldElement r = *this;
        for (auto& v : r.c_) v = f_->mul(v, s);
        return r;
    }

    // rank in the deterministic enumeration order (little-endian base p)
    std::uint64_t index() const {
        std::uint64_t v = 0;
        for (size_t i = c_.size(); i-- > 0;) v = v * f_->p + c_[i];
        return v;
    }

private:
    const FieldData* f_ = nullptr;
    std::vector<std::uint32_t> c_;
};

// Shared-ownership handle; all element arithmetic goes through the raw
// FieldData pointer, so the handle (or another owner) must outlive the
// elements.
class Field {
public:
    Field() = default;
    explicit Field(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}

    static Field prime(std::uint32_t p) {
        require(p >= 2, "characteristic must be >= 2");
        for (std::uint32_t d = 2; std::uint64_t(d) * d <= p; ++d)
            require(p % d != 0, "characteristic must be prime");
        auto fd = std::make_shared<FieldData>();
        fd->p = p;
        fd->n = 1;
        fd->modulus = {0, 1};
        fd->q = p;
        return Field(fd);
    }

    const FieldData* data() const { return d_.get(); }
    std::shared_ptr<const FieldData> shared() const { return d_; }
    std::uint32_t p() const { return d_->p; }
    std::uint32_t degree() const { return d_->n; }
    std::uint64_t q() const { return d_->q; }

    FieldElement zero() const { return FieldElement(d_.get(), std::vector<std::uint32_t>(d_->n, 0)); }
    FieldElement one() const {
        std::vector<std::uint32_t> c(d_->n, 0);
        c[0] = 1;
        return FieldElement(d_.get(), c);
    }
    FieldElement from_int(std::uint64_t v) const {
        std::vector<std::uint32_t> c(d_->n, 0);
        c[0] = static_cast<std::uint32_t>(v % d_->p);
        return FieldElement(d_.get(), c);
    }
    // class of x (zero in a prime field, where the power basis is {1})
    FieldElement gen() const {
        std::vector<std::uint32_t> c(d_->n, 0);
        if (d_->n > 1) c[1] = 1;
        return FieldElement(d_.get(), c);
    }
    FieldElement from_index(std::uint64_t idx) const {
        std::vector<std::uint32_t> c(d_->n);
        for (std::uint32_t i = 0; i < d_->n; ++i) {
            c[i] = static_cast<std::uint32_t>(idx % d_->p);
            idx /= d_->p;
        }
        return FieldElement(d_.get(), std::move(c));
    }
    FieldElement element(std::vector<std::uint32_t> c) const {
        require(c.size() == d_->n, "coefficient list has wrong length");
        for (auto& v : c) v %= d_->p;
        return FieldElement(d_.get(), std::move(c));
    }

    FieldElement random(Rng& rng) const { return from_index(rng.below(d_->q)); }
    FieldElement random_nonzero(Rng& rng) const { return from_index(1 + rng.below(d_->q - 1)); }

    bool same(const Field& o) const { return d_.get() == o.d_.get(); }

    // true when `sub` is (the recorded chain of) a subfield of *this
    bool extends(const Field& sub) const {
        const FieldData* cur = d_.get();
        while (cur) {
            if (cur == sub.data()) return true;
            cur = cur->base.get();
        }
        return false;
    }

    // embed an element of the recorded base chain into this field
    FieldElement embed(const FieldElement& x) const {
        if (x.data() == d_.get()) return x;
        check(d_->base != nullptr, "no embedding recorded");
        FieldElement xb = x;
        if (x.data() != d_->base.get()) xb = Field(d_->base).embed(x);
        // Horner with the recorded image of the base generator
        FieldElement img(d_.get(), d_->base_gen_image);
        FieldElement acc = zero();
        const auto& c = xb.coeffs();
        for (size_t i = c.size(); i-- > 0;) {
            acc = acc * img;
            acc = acc + from_int(c[i]);
        }
        return acc;
    }

private:
    std::shared_ptr<const FieldData> d_;
};

inline FieldElement FieldElement::pow(std::uint64_t e) const {
    std::vector<std::uint32_t> oc(f_->n, 0);
    oc[0] = 1;
    FieldElement r(f_, std::move(oc));
    FieldElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

inline FieldElement FieldElement::inverse() const {
    require(!is_zero(), "inverse of zero");
    return pow(f_->q - 2);
}

inline FieldElement FieldElement::frobenius(unsigned k) const {
    FieldElement r = *this;
    for (unsigned i = 0; i < k; ++i) r = r.pow(f_->p);
    return r;
}

// ---------------------------------------------------------------------------
// univariate polynomials over a Field

class Poly {
public:
    Poly() = default;
    Poly(const Field& F, std::vector<FieldElement> c) : F_(F), c_(std::move(c)) { normalize(); }
    static Poly zero(const Field& F) { return Poly(F, {}); }
    static Poly one(const Field& F) { return Poly(F, {F.one()}); }
    static Poly x(const Field& F) { return Poly(F, {F.zero(), F.one()}); }
    static Poly constant(const Field& F, const FieldElement& c) { return Poly(F, {c}); }

    const Field& field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    FieldElement coeff(size_t i) const { return i < c_.size() ? c_[i] : F_.zero(); }
    FieldElement lead() const {
        check(!c_.empty(), "lead of zero");
        return c_.back();
    }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<FieldElement> c(std::max(a.c_.size(), b.c_.size()), a.F_.zero());
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return Poly(a.F_, std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<FieldElement> c(std::max(a.c_.size(), b.c_.size()), a.F_.zero());
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return Poly(a.F_, std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly::zero(a.F_);
        std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1, a.F_.zero());
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(a.F_, std::move(c));
    }

    Poly monic() const {
        check(!is_zero(), "monic of zero");
        if (lead().is_one()) return *this;
        FieldElement li = lead().inverse();
        std::vector<FieldElement> c = c_;
        for (auto& v : c) v = v * li;
        return Poly(F_, std::move(c));
    }

    static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        require(!b.is_zero(), "polynomial division by zero");
        FieldElement li = b.lead().inverse();
        std::vector<FieldElement> rem = a.c_;
        std::vector<FieldElement> quo;
        int db = b.degree();
        if (a.degree() >= db) quo.assign(a.degree() - db + 1, a.F_.zero());
        for (int i = a.degree(); i >= db; --i) {
            if (rem[i].is_zero()) continue;
            FieldElement f = rem[i] * li;
            quo[i - db] = f;
            for (int j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - f * b.c_[j];
        }
        q = Poly(a.F_, std::move(quo));
        r = Poly(a.F_, std::move(rem));
    }
    friend Poly operator/(const Poly& a, const Poly& b) {
        Poly q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) {
        Poly q, r;
        divmod(a, b, q, r);
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly::zero(F_);
        std::vector<FieldElement> c(c_.size() - 1, F_.zero());
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i].scaled(static_cast<std::uint32_t>(i % F_.p()));
        return Poly(F_, std::move(c));
    }

    FieldElement eval(const FieldElement& x) const {
        FieldElement acc = F_.zero();
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = b;
            b = r;
        }
        return a.is_zero() ? a : a.monic();
    }

    // g = gcd = s*a + t*b, g monic (or zero)
    static Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
        Poly r0 = a, r1 = b;
        Poly s0 = Poly::one(a.F_), s1 = Poly::zero(a.F_);
        Poly t0 = Poly::zero(a.F_), t1 = Poly::one(a.F_);
        while (!r1.is_zero()) {
            Poly q, r;
            divmod(r0, r1, q, r);
            r0 = r1;
            r1 = r;
            Poly s2 = s0 - q * s1;
            s0 = s1;
            s1 = s2;
            Poly t2 = t0 - q * t1;
            t0 = t1;
            t1 = t2;
        }
        if (!r0.is_zero()) {
            FieldElement li = r0.lead().inverse();
            r0 = r0 * Poly::constant(a.F_, li);
            s0 = s0 * Poly::constant(a.F_, li);
            t0 = t0 * Poly::constant(a.F_, li);
        }
        s = s0;
        t = t0;
        return r0;
    }

    Poly mulmod(const Poly& b, const Poly& m) const { return (*this * b) % m; }

    Poly powmod(std::uint64_t e, const Poly& m) const {
        Poly r = Poly::one(F_) % m;
        Poly b = *this % m;
        while (e) {
            if (e & 1) r = r.mulmod(b, m);
            b = b.mulmod(b, m);
            e >>= 1;
        }
        return r;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    Field F_;
    std::vector<FieldElement> c_;
};

inline Poly random_poly_below(const Field& F, int deg_bound, Rng& rng) {
    std::vector<FieldElement> c;
    c.reserve(deg_bound);
    for (int i = 0; i < deg_bound; ++i) c.push_back(F.random(rng));
    return Poly(F, std::move(c));
}

// ---------------------------------------------------------------------------
// factorization: squarefree split, distinct-degree, randomized equal-degree

namespace detail {

// p-th root of a polynomial all of whose exponents are multiples of p
// (the field is perfect: coefficient roots are c^(p^(n-1)))
inline Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    std::uint32_t p = F.p();
    std::vector<FieldElement> c;
    for (int i = 0; i <= f.degree(); i += p) {
        FieldElement v = f.coeff(i);
        for (std::uint32_t k = 0; k + 1 < F.degree(); ++k) v = v.frobenius();
        c.push_back(v);
    }
    return Poly(F, std::move(c));
}

inline void squarefree_parts(const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
    if (f.degree() == 0) return;
    Poly d = f.derivative();
    if (d.is_zero()) {
        squarefree_parts(pth_root(f), mult * f.field().p(), out);
        return;
    }
    Poly c = Poly::gcd(f, d);
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = Poly::gcd(w, c);
        Poly fac = w / y;
        if (fac.degree() > 0) out.emplace_back(fac.monic(), mult * i);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) squarefree_parts(pth_root(c), mult * f.field().p(), out);
}

// x^(q^k) mod f by iterating the q-power map
inline Poly xq_power(const Poly& f, const Poly& start, unsigned k) {
    Poly r = start;
    for (unsigned i = 0; i < k; ++i) r = r.powmod(f.field().q(), f);
    return r;
}

// split a squarefree product of irreducibles, all of degree d
inline void equal_degree(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    const Field& F = f.field();
    std::uint64_t cap = trial_cap(8);
    for (std::uint64_t it = 0; it < cap; ++it) {
        Poly a = random_poly_below(F, f.degree(), rng);
        if (a.degree() < 1) continue;
        Poly g = Poly::gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
        Poly b;
        if (F.p() == 2) {
            // additive trace over F_2 of an element of F_{q^d}
            unsigned bits = F.degree() * d;
            Poly t = a % f;
            Poly acc = t;
            for (unsigned i = 1; i < bits; ++i) {
                t = t.mulmod(t, f);
                acc = acc + t;
            }
            b = acc;
        } else {
            // a^((q^d-1)/2) without forming q^d: norm to F_q first
            Poly u = a % f;
            Poly acc = u;
            for (unsigned i = 1; i < d; ++i) {
                u = u.powmod(F.q(), f);
                acc = acc.mulmod(u, f);
            }
            b = acc.powmod((F.q() - 1) / 2, f) - Poly::one(F);
        }
        g = Poly::gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
    throw cap_exceeded("equal-degree splitting made no progress");
}

}  // namespace detail

// full factorization into monic irreducibles with multiplicities
inline std::vector<std::pair<Poly, unsigned>> factor_poly(const Poly& f, Rng& rng) {
    require(!f.is_zero(), "cannot factor the zero polynomial");
    std::vector<std::pair<Poly, unsigned>> sqf;
    if (f.degree() > 0) detail::squarefree_parts(f.monic(), 1, sqf);
    std::vector<std::pair<Poly, unsigned>> result;
    for (auto& [part, mult] : sqf) {
        // distinct-degree split of the squarefree part
        Poly rest = part;
        Poly h = Poly::x(part.field()) % rest;
        for (unsigned d = 1; rest.degree() > 0; ++d) {
            if (2 * d > static_cast<unsigned>(rest.degree())) {
                result.emplace_back(rest.monic(), mult);
                break;
            }
            h = detail::xq_power(rest, h, 1);
            Poly g = Poly::gcd(h - Poly::x(part.field()), rest);
            if (g.degree() > 0) {
                std::vector<Poly> irr;
                detail::equal_degree(g, d, rng, irr);
                for (auto& pi : irr) result.emplace_back(pi, mult);
                rest = rest / g;
                h = h % rest;
            }
        }
    }
    std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; --i) {
            int c = FieldElement::cmp(a.first.coeff(i), b.first.coeff(i));
            if (c) return c < 0;
        }
        return a.second < b.second;
    });
    return result;
}

inline bool is_irreducible(const Poly& f, Rng& rng) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    auto fac = factor_poly(f, rng);
    return fac.size() == 1 && fac[0].second == 1;
}

// roots in the coefficient field, sorted in the deterministic element order
inline std::vector<FieldElement> poly_roots(const Poly& f, Rng& rng) {
    std::vector<FieldElement> roots;
    for (auto& [g, m] : factor_poly(f, rng))
        if (g.degree() == 1) roots.push_back(-g.coeff(0));
    std::sort(roots.begin(), roots.end(),
              [](const FieldElement& a, const FieldElement& b) { return FieldElement::cmp(a, b) < 0; });
    return roots;
}

// ---------------------------------------------------------------------------
// extensions

inline Poly random_monic(const Field& F, unsigned deg, Rng& rng) {
    std::vector<FieldElement> c;
    for (unsigned i = 0; i < deg; ++i) c.push_back(F.random(rng));
    c.push_back(F.one());
    return Poly(F, std::move(c));
}

// Extension of given degree, searched by random trial of monic polynomials.
// The result is flattened over the prime field; the embedding of `base` is
// recorded by storing an image of its generator (smallest root, so the
// embedding does not depend on the factorization's randomness).
inline Field make_extension(const Field& base, unsigned degree, Rng& rng) {
    require(degree >= 1, "extension degree must be >= 1");
    if (degree == 1) return base;
    unsigned total = base.degree() * degree;
    Field Fp = base.degree() == 1 ? base : Field::prime(base.p());
    require(total * std::log2((double)base.p()) < 62.5, "field too large for this build");

    std::uint64_t cap = trial_cap(4 * total);
    Poly mod = Poly::zero(Fp);
    for (std::uint64_t it = 0;; ++it) {
        if (it >= cap) throw cap_exceeded("no irreducible polynomial found");
        Poly cand = random_monic(Fp, total, rng);
        if (cand.coeff(0).is_zero()) continue;
        if (is_irreducible(cand, rng)) {
            mod = cand;
            break;
        }
    }

    auto fd = std::make_shared<FieldData>();
    fd->p = base.p();
    fd->n = total;
    fd->modulus.resize(total + 1);
    for (unsigned i = 0; i <= total; ++i) fd->modulus[i] = mod.coeff(i).coeffs()[0];
    fd->q = 1;
    for (unsigned i = 0; i < total; ++i) fd->q *= base.p();
    Field K(fd);

    if (base.degree() == 1) {
        // prime subfield embeds as constants; record base anyway for the chain
        auto fd2 = std::const_pointer_cast<FieldData>(K.shared());
        fd2->base = base.shared();
        fd2->base_gen_image = K.zero().coeffs();
        return K;
    }

    // embed base: root of its defining polynomial inside K
    std::vector<FieldElement> bm;
    for (unsigned i = 0; i <= base.degree(); ++i) bm.push_back(K.from_int(base.data()->modulus[i]));
    Poly base_mod_in_K(K, std::move(bm));
    auto roots = poly_roots(base_mod_in_K, rng);
    check(!roots.empty(), "defining polynomial has no root in the extension");
    auto fd2 = std::const_pointer_cast<FieldData>(K.shared());
    fd2->base = base.shared();
    fd2->base_gen_image = roots.front().coeffs();
    return K;
}

// smallest generator of the multiplicative group, in enumeration order
inline FieldElement multiplicative_generator(const Field& F) {
    std::uint64_t m = F.q() - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t t = m;
    for (std::uint64_t d = 2; d * d <= t; ++d)
        if (t % d == 0) {
            primes.push_back(d);
            while (t % d == 0) t /= d;
        }
    if (t > 1) primes.push_back(t);
    for (std::uint64_t idx = 1; idx < F.q(); ++idx) {
        FieldElement g = F.from_index(idx);
        bool ok = true;
        for (auto ell : primes)
            if (g.pow(m / ell).is_one()) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw internal_error("no multiplicative generator found");
}

// Discrete logarithm in mu_l by table lookup: returns e with zeta^e = x.
inline std::uint64_t discrete_log_mu_l(const FieldElement& zeta, const FieldElement& x,
                                       std::uint64_t l) {
    require(zeta.pow(l).is_one(), "zeta must have order dividing l");
    for (std::uint64_t d = 2; d * d <= l; ++d)
        if (l % d == 0)
            require(!zeta.pow(l / d).is_one() && !zeta.pow(d).is_one(),
                    "zeta must have exact order l");
    if (l > 1) require(!zeta.is_one(), "zeta must have exact order l");
    require(x.pow(l).is_one(), "x is not an l-th root of unity");
    FieldElement cur = zeta.pow(0);  // 1
    for (std::uint64_t e = 0; e < l; ++e) {
        if (cur == x) return e;
        cur = cur * zeta;
    }
    throw internal_error("discrete log not found despite x^l = 1");
}

}  // namespace picard

#endif
