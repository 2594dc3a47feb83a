#ifndef PICARD_SERIALIZE_HPP
#define PICARD_SERIALIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "picard/divisor.hpp"
#include "picard/morphism.hpp"
#include "picard/picard.hpp"

namespace picard {

using Json = nlohmann::json;

// field elements travel as little-endian coefficient lists over the prime field
inline Json field_element_to_json(const FieldElement& x) {
    Json a = Json::array();
    for (auto c : x.coeffs()) a.push_back(c);
    return a;
}

inline FieldElement field_element_from_json(const Field& F, const Json& j) {
    require(j.is_array() && j.size() == F.degree(), "bad field element encoding");
    std::vector<std::uint32_t> c;
    for (auto& v : j) c.push_back(v.get<std::uint32_t>());
    return F.element(std::move(c));
}

inline Json field_to_json(const Field& F) {
    Json j;
    j["p"] = F.p();
    j["n"] = F.degree();
    Json poly = Json::array();
    for (auto c : F.data()->modulus) poly.push_back(c);
    j["poly"] = poly;
    return j;
}

// reconstruct a field; if `base` is given and the description is a proper
// extension, the embedding image must be present under "base_gen_image"
inline Field field_from_json(const Json& j, const std::optional<Field>& base = std::nullopt) {
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    std::uint32_t n = j.at("n").get<std::uint32_t>();
    if (n == 1) return base && base->degree() == 1 ? *base : Field::prime(p);
    if (base && base->p() == p && base->degree() == n) {
        // same field as the base; verify the modulus matches
        Json poly = j.at("poly");
        for (std::uint32_t i = 0; i <= n; ++i)
            require(poly.at(i).get<std::uint32_t>() == base->data()->modulus[i],
                    "field modulus mismatch");
        return *base;
    }
    auto fd = std::make_shared<FieldData>();
    fd->p = p;
    fd->n = n;
    Json poly = j.at("poly");
    require(poly.is_array() && poly.size() == n + 1, "bad field modulus encoding");
    for (auto& v : poly) fd->modulus.push_back(v.get<std::uint32_t>() % p);
    require(fd->modulus.back() == 1, "field modulus must be monic");
    fd->q = 1;
    for (std::uint32_t i = 0; i < n; ++i) fd->q *= p;
    if (base) {
        require(j.contains("base_gen_image"), "extension document lacks the embedding");
        fd->base = base->shared();
        for (auto& v : j.at("base_gen_image")) fd->base_gen_image.push_back(v.get<std::uint32_t>());
        require(fd->base_gen_image.size() == n, "bad embedding image length");
    }
    return Field(fd);
}

inline Json subspace_to_json(const Subspace& S) {
    Json rows = Json::array();
    for (size_t i = 0; i < S.dim(); ++i) {
        Json row = Json::array();
        for (auto& x : S.basis_row(i)) row.push_back(field_element_to_json(x));
        rows.push_back(row);
    }
    Json j;
    j["ambient"] = S.ambient();
    j["rows"] = rows;
    return j;
}

inline Subspace subspace_from_json(const Field& F, const Json& j) {
    size_t ambient = j.at("ambient").get<size_t>();
    std::vector<Vec> rows;
    for (auto& row : j.at("rows")) {
        Vec v;
        for (auto& e : row) v.push_back(field_element_from_json(F, e));
        require(v.size() == ambient, "row length does not match the ambient dimension");
        rows.push_back(std::move(v));
    }
    return Subspace::from_rows(F, ambient, rows);
}

// ---------------------------------------------------------------------------
// curve descriptions

inline Json curve_to_json(const Curve& X) {
    Json j;
    switch (X.kind()) {
        case Curve::Kind::p1:
            j["kind"] = "p1";
            j["d"] = X.deg_l();
            break;
        case Curve::Kind::elliptic: {
            j["kind"] = "elliptic";
            const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
            for (int i = 0; i < 5; ++i) j[names[i]] = field_element_to_json(X.weierstrass()[i]);
            j["multiplier"] = X.deg_l() / 3;
            break;
        }
        case Curve::Kind::hyperelliptic: {
            j["kind"] = "hyperelliptic";
            Json f = Json::array();
            for (auto& c : X.hyper_poly().coeffs()) f.push_back(field_element_to_json(c));
            j["f"] = f;
            j["multiplier"] = X.deg_l() / static_cast<unsigned>(X.hyper_poly().degree());
            break;
        }
    }
    j["p"] = X.field().p();
    j["n"] = X.field().degree();
    Json poly = Json::array();
    for (auto c : X.field().data()->modulus) poly.push_back(c);
    j["field_poly"] = poly;
    j["h"] = X.trunc();
    j["hash"] = X.description_hash();
    return j;
}

// reconstruct a curve; `use_field` forces the given field instance when the
// description matches it (needed when two documents must share one field)
inline Curve curve_from_json(const Json& j, const std::optional<Field>& use_field = std::nullopt) {
    Json fj;
    fj["p"] = j.at("p");
    fj["n"] = j.at("n");
    fj["poly"] = j.at("field_poly");
    Field k = field_from_json(fj, use_field);
    if (use_field) require(k.data() == use_field->data(), "curve base field mismatch");
    unsigned h = j.at("h").get<unsigned>();
    std::string kind = j.at("kind").get<std::string>();
    Curve X = [&] {
        if (kind == "p1") return Curve::p1(k, j.at("d").get<unsigned>(), h);
        if (kind == "elliptic") {
            std::array<FieldElement, 5> a{
                field_element_from_json(k, j.at("a1")), field_element_from_json(k, j.at("a2")),
                field_element_from_json(k, j.at("a3")), field_element_from_json(k, j.at("a4")),
                field_element_from_json(k, j.at("a6"))};
            return Curve::elliptic(k, a, h, j.value("multiplier", 1u));
        }
        if (kind == "hyperelliptic") {
            std::vector<FieldElement> c;
            for (auto& e : j.at("f")) c.push_back(field_element_from_json(k, e));
            return Curve::hyperelliptic(k, Poly(k, std::move(c)), h, j.value("multiplier", 1u));
        }
        throw domain_error("unknown curve kind");
    }();
    if (j.contains("hash"))
        require(j.at("hash").get<std::uint64_t>() == X.description_hash(),
                "curve hash mismatch");
    return X;
}

// ---------------------------------------------------------------------------
// value documents, pinned to a curve by its description hash

inline Json divisor_to_json(const DivisorRep& D) {
    Json j;
    j["type"] = "divisor";
    j["curve"] = D.X->description_hash();
    j["level"] = D.level;
    j["degree"] = D.degree();
    j["field"] = field_to_json(D.space.field());
    if (D.space.field().data()->base) {
        // the embedding of the immediate base field, for extension documents
        Json img = Json::array();
        for (auto c : D.space.field().data()->base_gen_image) img.push_back(c);
        j["field"]["base_gen_image"] = img;
    }
    j["space"] = subspace_to_json(D.space);
    return j;
}

inline Json picard_to_json(const PicardElement& x) {
    Json j = divisor_to_json(representative_divisor(x));
    j["type"] = "picard";
    return j;
}

// Load a divisor document.  `X` is the base curve; when the document lives
// over an extension, `ext_holder` receives the base-changed curve and the
// result points into it.
inline DivisorRep divisor_from_json(const Curve& X, const Json& j,
                                    std::shared_ptr<Curve>* ext_holder = nullptr) {
    unsigned level = j.at("level").get<unsigned>();
    Json fj = j.at("field");
    const Curve* target = &X;
    Field F = X.field();
    if (fj.at("n").get<std::uint32_t>() != X.field().degree() ||
        fj.at("p").get<std::uint32_t>() != X.field().p()) {
        require(ext_holder != nullptr, "extension-field document in a base-field context");
        F = field_from_json(fj, X.field());
        *ext_holder = std::make_shared<Curve>(X.base_change(F));
        target = ext_holder->get();
    }
    // the document is pinned to the curve it was written on: the base curve
    // for base-field values, its base change for extension values
    require(j.at("curve").get<std::uint64_t>() == target->description_hash(),
            "document belongs to a different curve");
    Subspace S = subspace_from_json(F, j.at("space"));
    require(S.ambient() == target->dim(level), "space has the wrong ambient dimension");
    DivisorRep D{target, level, std::move(S)};
    require(D.degree() == j.at("degree").get<unsigned>(), "stored degree mismatch");
    return D;
}

inline PicardElement picard_from_json(const Curve& X, const Json& j,
                                      std::shared_ptr<Curve>* ext_holder = nullptr) {
    DivisorRep D = divisor_from_json(X, j, ext_holder);
    require(D.level == 2 && D.degree() == D.X->deg_l(), "not a Picard representative");
    return {D.X, D.space};
}

// a finite morphism travels as its per-degree pullback matrices
inline Json morphism_to_json(const FiniteMorphism& f) {
    Json j;
    j["type"] = "morphism";
    j["source"] = f.source().description_hash();
    j["target"] = f.target().description_hash();
    j["degree"] = f.degree();
    unsigned h = std::min(f.source().trunc(), f.target().trunc());
    Json maps = Json::array();
    for (unsigned i = 1; i <= h; ++i) {
        const Mat& M = f.pullback_map(i);
        Json rows = Json::array();
        for (size_t r = 0; r < M.rows(); ++r) {
            Json row = Json::array();
            for (size_t c = 0; c < M.cols(); ++c) row.push_back(field_element_to_json(M.at(r, c)));
            rows.push_back(std::move(row));
        }
        maps.push_back(std::move(rows));
    }
    j["pullback"] = maps;
    return j;
}

inline FiniteMorphism morphism_from_json(const Curve& X, const Curve& Y, const Json& j) {
    require(j.at("source").get<std::uint64_t>() == X.description_hash() &&
                j.at("target").get<std::uint64_t>() == Y.description_hash(),
            "morphism document belongs to different curves");
    std::vector<Mat> maps;
    unsigned i = 1;
    for (auto& rows : j.at("pullback")) {
        Mat M(X.field(), X.dim(i), Y.dim(i));
        require(rows.size() == X.dim(i), "pullback matrix has wrong row count");
        for (size_t r = 0; r < M.rows(); ++r) {
            require(rows.at(r).size() == Y.dim(i), "pullback matrix has wrong column count");
            for (size_t c = 0; c < M.cols(); ++c)
                M.at(r, c) = field_element_from_json(X.field(), rows.at(r).at(c));
        }
        maps.push_back(std::move(M));
        ++i;
    }
    // construction re-validates the graded homomorphism property
    return FiniteMorphism(X, Y, std::move(maps));
}

inline Json zeta_to_json(const ZetaData& Z) {
    Json j;
    j["q"] = Z.q();
    j["genus"] = Z.genus();
    Json L = Json::array();
    for (auto c : Z.coeffs()) L.push_back(c);
    j["L"] = L;
    return j;
}

}  // namespace picard

#endif
