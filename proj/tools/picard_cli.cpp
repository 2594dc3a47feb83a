// Command-line front end: build curves, run divisor/Picard/pairing/torsion
// operations on serialized values, and drive the acceptance suites.  Every
// randomized subcommand takes an explicit --seed; identical invocations
// produce byte-identical output.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "picard/acceptance.hpp"
#include "picard/morphism.hpp"
#include "picard/pairing.hpp"
#include "picard/serialize.hpp"
#include "picard/torsion.hpp"

using namespace picard;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw domain_error("cannot write " + out_path);
        out << text;
    }
}

struct CurveArg {
    std::string path;
    Curve load() const { return curve_from_json(read_json(path)); }
};

// the canonical rational point at infinity, used as the normalization point
DivisorRep infinity_point(const Curve& X) {
    if (X.kind() == Curve::Kind::p1) return {&X, 1, X.p1_divisor(1, {}, 1)};
    return {&X, 1, X.simple_divisor(1, std::nullopt, 1)};
}

FiniteMorphism build_morphism(const std::string& kind, const Curve& X, const Curve& Y,
                              unsigned m) {
    if (kind == "power") return FiniteMorphism::power_map_p1(X, Y, m);
    if (kind == "xmap") return FiniteMorphism::x_map(X, Y);
    throw domain_error("unknown morphism kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divisor and Picard group computations on curves over finite fields"};
    app.require_subcommand(1);

    std::string out_path;

    // ---- curve ------------------------------------------------------------
    auto* curve = app.add_subcommand("curve", "construct curves and zeta data");
    curve->require_subcommand(1);

    auto* curve_build = curve->add_subcommand("build", "build a curve description");
    curve_build->set_help_flag("--help", "print help");  // frees --h for the truncation level
    std::string kind = "p1";
    unsigned p = 2, nfield = 1, dparam = 3, hparam = 6, multiplier = 1;
    std::vector<unsigned> a_coeffs;
    std::vector<unsigned> f_coeffs;
    curve_build->add_option("--kind", kind, "p1 | elliptic | hyperelliptic")->required();
    curve_build->add_option("--p", p, "characteristic")->required();
    curve_build->add_option("--n", nfield, "extension degree of the base field");
    curve_build->add_option("--d", dparam, "degree of O(d) on P^1");
    curve_build->add_option("--h", hparam, "truncation level")->required();
    curve_build->add_option("--multiplier", multiplier, "deg L multiplier for affine models");
    curve_build->add_option("--a", a_coeffs, "a1 a2 a3 a4 a6 (prime-field integers)");
    curve_build->add_option("--f", f_coeffs, "coefficients of f, low degree first");
    unsigned build_seed = 1;
    curve_build->add_option("--seed", build_seed, "seed for base-field construction");

    auto* curve_zeta = curve->add_subcommand("zeta", "zeta numerator of a curve");
    std::string curve_path;
    curve_zeta->add_option("--curve", curve_path)->required();

    // ---- div --------------------------------------------------------------
    auto* divc = app.add_subcommand("div", "divisor operations");
    divc->require_subcommand(1);
    std::string div_curve, div_a, div_b, div_in;
    std::optional<std::uint64_t> seed_opt;
    unsigned deg_n = 1, smooth_m = 1, level_i = 2;
    bool biased = false;

    auto* div_random = divc->add_subcommand("random", "uniform random effective divisor");
    div_random->add_option("--curve", div_curve)->required();
    div_random->add_option("--degree", deg_n)->required();
    div_random->add_option("--smooth", smooth_m, "smoothness bound (default: the degree)");
    div_random->add_option("--level", level_i);
    div_random->add_option("--seed", seed_opt, "PRNG seed (required)");
    div_random->add_flag("--biased", biased, "fast non-uniform sampler");

    auto* div_decompose = divc->add_subcommand("decompose", "split into prime divisors");
    div_decompose->add_option("--curve", div_curve)->required();
    div_decompose->add_option("--in", div_in)->required();
    div_decompose->add_option("--seed", seed_opt, "PRNG seed (required)");

    auto* div_add = divc->add_subcommand("add", "sum of two divisors");
    div_add->add_option("--curve", div_curve)->required();
    div_add->add_option("--a", div_a)->required();
    div_add->add_option("--b", div_b)->required();

    auto* div_sub = divc->add_subcommand("sub", "difference of two divisors");
    div_sub->add_option("--curve", div_curve)->required();
    div_sub->add_option("--a", div_a)->required();
    div_sub->add_option("--b", div_b)->required();

    // ---- pic --------------------------------------------------------------
    auto* pic = app.add_subcommand("pic", "Picard group operations");
    pic->require_subcommand(1);
    std::string pic_curve, pic_x, pic_y;
    std::int64_t mul_n = 1;

    auto* pic_add_cmd = pic->add_subcommand("add", "x + y");
    auto* pic_addflip_cmd = pic->add_subcommand("addflip", "-x - y plus the section");
    auto* pic_mul_cmd = pic->add_subcommand("mul", "n x");
    auto* pic_zero_cmd = pic->add_subcommand("zero-test", "test for the zero class");
    auto* pic_norm_cmd = pic->add_subcommand("normalize", "canonical representative");
    auto* pic_random_cmd = pic->add_subcommand("random", "uniform random class");
    auto* pic_frob_cmd = pic->add_subcommand("frobenius", "q-power Frobenius image");
    auto* pic_trace_cmd = pic->add_subcommand("trace", "trace down to the base curve");
    for (auto* c : {pic_add_cmd, pic_addflip_cmd, pic_mul_cmd, pic_zero_cmd, pic_norm_cmd,
                    pic_random_cmd, pic_frob_cmd, pic_trace_cmd})
        c->add_option("--curve", pic_curve)->required();
    for (auto* c : {pic_add_cmd, pic_addflip_cmd})
        c->add_option("--a", pic_x)->required();
    for (auto* c : {pic_add_cmd, pic_addflip_cmd})
        c->add_option("--b", pic_y)->required();
    pic_mul_cmd->add_option("--n", mul_n)->required();
    for (auto* c : {pic_mul_cmd, pic_zero_cmd, pic_norm_cmd, pic_frob_cmd, pic_trace_cmd})
        c->add_option("--x", pic_x)->required();
    pic_random_cmd->add_option("--seed", seed_opt, "PRNG seed (required)");

    // ---- map --------------------------------------------------------------
    auto* mapc = app.add_subcommand("map", "finite morphism functoriality");
    mapc->require_subcommand(1);
    std::string map_kind = "power", map_source, map_target, map_val;
    unsigned map_m = 2;
    auto* map_pull = mapc->add_subcommand("pull", "pull-back of a divisor");
    auto* map_push = mapc->add_subcommand("push", "push-forward of a divisor");
    auto* map_image = mapc->add_subcommand("image", "schematic image of a divisor");
    auto* map_picard = mapc->add_subcommand("picard", "Picard map on classes");
    auto* map_albanese = mapc->add_subcommand("albanese", "Albanese map on classes");
    for (auto* c : {map_pull, map_push, map_image, map_picard, map_albanese}) {
        c->add_option("--map-kind", map_kind, "power | xmap");
        c->add_option("--m", map_m, "exponent for the power map");
        c->add_option("--source", map_source)->required();
        c->add_option("--target", map_target)->required();
        c->add_option("--in", map_val)->required();
    }
    for (auto* c : {map_push, map_albanese})
        c->add_option("--seed", seed_opt, "PRNG seed (required)");

    // ---- pair -------------------------------------------------------------
    auto* pair = app.add_subcommand("pair", "Frey-Rueck pairing");
    auto* pair_fr = pair->add_subcommand("frey-ruck", "[x, y]_n in mu_n(k)");
    std::string fr_curve, fr_x, fr_y;
    std::uint64_t fr_n = 2;
    pair_fr->add_option("--curve", fr_curve)->required();
    pair_fr->add_option("--n", fr_n)->required();
    pair_fr->add_option("--x", fr_x)->required();
    pair_fr->add_option("--y", fr_y)->required();
    pair_fr->add_option("--seed", seed_opt, "PRNG seed (required)");

    // ---- torsion ----------------------------------------------------------
    auto* tor = app.add_subcommand("torsion", "l-torsion of the Picard group");
    tor->require_subcommand(1);
    auto* tor_basis = tor->add_subcommand("basis", "F_l-basis of J[l](k)");
    auto* tor_rel = tor->add_subcommand("relations", "relations between torsion points");
    std::string tor_curve;
    std::uint64_t tor_l = 2;
    double tor_alpha = 0.9;
    std::vector<std::string> tor_points;
    for (auto* c : {tor_basis, tor_rel}) {
        c->add_option("--curve", tor_curve)->required();
        c->add_option("--l", tor_l)->required();
        c->add_option("--alpha", tor_alpha);
        c->add_option("--seed", seed_opt, "PRNG seed (required)");
    }
    tor_rel->add_option("--points", tor_points, "value documents of the torsion points")
        ->required();

    // ---- acceptance ---------------------------------------------------------
    auto* acc = app.add_subcommand("acceptance", "run a verification suite");
    std::string suite_name;
    acc->add_option("suite", suite_name, "suite name, or 'all'")->required();

    for (auto* c : {curve_build, curve_zeta, div_random, div_decompose, div_add, div_sub,
                    pic_add_cmd, pic_addflip_cmd, pic_mul_cmd, pic_zero_cmd, pic_norm_cmd,
                    pic_random_cmd, pic_frob_cmd, pic_trace_cmd, map_pull, map_push, map_image,
                    map_picard, map_albanese, pair_fr, tor_basis, tor_rel})
        c->add_option("--out", out_path, "write the result document here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    auto need_seed = [&]() -> std::uint64_t {
        if (!seed_opt.has_value())
            throw domain_error("this subcommand is randomized: --seed is required");
        return *seed_opt;
    };

    try {
        if (curve_build->parsed()) {
            Rng rng(build_seed);
            Field base = Field::prime(p);
            Field k = nfield > 1 ? make_extension(base, nfield, rng) : base;
            Curve X = [&] {
                if (kind == "p1") return Curve::p1(k, dparam, hparam);
                if (kind == "elliptic") {
                    require(a_coeffs.size() == 5, "elliptic needs --a a1 a2 a3 a4 a6");
                    std::array<FieldElement, 5> a;
                    for (int i = 0; i < 5; ++i) a[i] = k.from_int(a_coeffs[i]);
                    return Curve::elliptic(k, a, hparam, multiplier);
                }
                if (kind == "hyperelliptic") {
                    require(!f_coeffs.empty(), "hyperelliptic needs --f coefficients");
                    std::vector<FieldElement> c;
                    for (auto v : f_coeffs) c.push_back(k.from_int(v));
                    return Curve::hyperelliptic(k, Poly(k, std::move(c)), hparam, multiplier);
                }
                throw domain_error("unknown curve kind: " + kind);
            }();
            Json j = curve_to_json(X);
            Json dims = Json::array();
            for (unsigned i = 1; i <= X.trunc(); ++i) dims.push_back(X.dim(i));
            j["dims"] = dims;
            j["genus"] = X.genus();
            j["deg_l"] = X.deg_l();
            emit(j, out_path);
        } else if (curve_zeta->parsed()) {
            Curve X = curve_from_json(read_json(curve_path));
            emit(zeta_to_json(X.zeta()), out_path);
        } else if (div_random->parsed()) {
            Rng rng(need_seed());
            Curve X = curve_from_json(read_json(div_curve));
            if (!div_random->count("--smooth")) smooth_m = deg_n;
            DivisorRep D = biased ? random_divisor_biased(X, deg_n, level_i, rng)
                                  : random_divisor(X, SmoothCountTable(X.zeta(), deg_n,
                                                                       std::max(1u, smooth_m)),
                                                   deg_n, std::max(1u, smooth_m), level_i, rng);
            emit(divisor_to_json(D), out_path);
        } else if (div_decompose->parsed()) {
            Rng rng(need_seed());
            Curve X = curve_from_json(read_json(div_curve));
            std::shared_ptr<Curve> ext;
            DivisorRep D = divisor_from_json(X, read_json(div_in), &ext);
            Json parts = Json::array();
            for (auto& pr : decompose(D, rng)) {
                Json e = divisor_to_json(pr.prime);
                e["prime_degree"] = pr.degree;
                e["multiplicity"] = pr.multiplicity;
                parts.push_back(std::move(e));
            }
            Json j;
            j["type"] = "decomposition";
            j["curve"] = X.description_hash();
            j["parts"] = parts;
            emit(j, out_path);
        } else if (div_add->parsed() || div_sub->parsed()) {
            Curve X = curve_from_json(read_json(div_curve));
            std::shared_ptr<Curve> e1, e2;
            DivisorRep A = divisor_from_json(X, read_json(div_a), &e1);
            DivisorRep B = divisor_from_json(X, read_json(div_b), &e2);
            require(e1 == nullptr && e2 == nullptr, "add/sub expect base-field divisors");
            DivisorRep R = div_add->parsed() ? add_divisors(A, B) : subtract_divisors(A, B);
            emit(divisor_to_json(R), out_path);
        } else if (pic_random_cmd->parsed()) {
            Rng rng(need_seed());
            Curve X = curve_from_json(read_json(pic_curve));
            SmoothCountTable table = make_picard_sampling_table(X);
            emit(picard_to_json(random_picard_element(X, table, rng)), out_path);
        } else if (pic_add_cmd->parsed() || pic_addflip_cmd->parsed()) {
            Curve X = curve_from_json(read_json(pic_curve));
            std::shared_ptr<Curve> e1, e2;
            PicardElement a = picard_from_json(X, read_json(pic_x), &e1);
            PicardElement b = picard_from_json(X, read_json(pic_y), &e2);
            require(!e1 == !e2 && (!e1 || e1->field().same(e2->field())),
                    "operands live over different fields");
            if (pic_addflip_cmd->parsed()) {
                AddflipResult r = addflip(a, b);
                Json j = picard_to_json(r.z);
                Json sec = Json::array();
                for (auto& c : r.section) sec.push_back(field_element_to_json(c));
                j["section"] = sec;
                emit(j, out_path);
            } else {
                emit(picard_to_json(pic_add(a, b)), out_path);
            }
        } else if (pic_mul_cmd->parsed()) {
            Curve X = curve_from_json(read_json(pic_curve));
            std::shared_ptr<Curve> ext;
            PicardElement x = picard_from_json(X, read_json(pic_x), &ext);
            emit(picard_to_json(scalar_mul(mul_n, x)), out_path);
        } else if (pic_zero_cmd->parsed()) {
            Curve X = curve_from_json(read_json(pic_curve));
            std::shared_ptr<Curve> ext;
            PicardElement x = picard_from_json(X, read_json(pic_x), &ext);
            ZeroTestResult r = zero_test(x);
            Json j;
            j["type"] = "zero-test";
            j["zero"] = r.is_zero;
            if (r.is_zero) {
                Json sec = Json::array();
                for (auto& c : r.section) sec.push_back(field_element_to_json(c));
                j["section"] = sec;
            }
            emit(j, out_path);
        } else if (pic_norm_cmd->parsed()) {
            Curve X = curve_from_json(read_json(pic_curve));
            std::shared_ptr<Curve> ext;
            PicardElement x = picard_from_json(X, read_json(pic_x), &ext);
            const Curve& XC = ext ? *ext : X;
            NormalizationContext ctx = make_normalization_context(XC, infinity_point(XC));
            NormalizedRep nr = normalised_representative(x, ctx);
            Json j;
            j["type"] = "normalized";
            j["r"] = nr.r;
            j["curve"] = X.description_hash();
            j["space"] = subspace_to_json(nr.space);
            emit(j, out_path);
        } else if (pic_frob_cmd->parsed()) {
            Curve X = curve_from_json(read_json(pic_curve));
            std::shared_ptr<Curve> ext;
            PicardElement x = picard_from_json(X, read_json(pic_x), &ext);
            emit(picard_to_json(frobenius_point(x, X.field().q())), out_path);
        } else if (pic_trace_cmd->parsed()) {
            Curve X = curve_from_json(read_json(pic_curve));
            std::shared_ptr<Curve> ext;
            PicardElement x = picard_from_json(X, read_json(pic_x), &ext);
            require(ext != nullptr, "trace expects an element over a proper extension");
            NormalizationContext ctx = make_normalization_context(X, infinity_point(X));
            emit(picard_to_json(pic_trace(ctx, *ext, x)), out_path);
        } else if (map_pull->parsed() || map_push->parsed() || map_image->parsed() ||
                   map_picard->parsed() || map_albanese->parsed()) {
            Curve X = curve_from_json(read_json(map_source));
            Curve Y = curve_from_json(read_json(map_target), X.field());
            FiniteMorphism f = build_morphism(map_kind, X, Y, map_m);
            if (map_pull->parsed()) {
                DivisorRep E = divisor_from_json(Y, read_json(map_val));
                emit(divisor_to_json(pull_back(f, E)), out_path);
            } else if (map_push->parsed()) {
                Rng rng(need_seed());
                DivisorRep D = divisor_from_json(X, read_json(map_val));
                emit(divisor_to_json(push_forward(f, D, rng)), out_path);
            } else if (map_image->parsed()) {
                DivisorRep D = divisor_from_json(X, read_json(map_val));
                emit(divisor_to_json(image_divisor(f, D)), out_path);
            } else if (map_picard->parsed()) {
                PicardElement y = picard_from_json(Y, read_json(map_val));
                emit(picard_to_json(picard_map(f, y)), out_path);
            } else {
                Rng rng(need_seed());
                PicardElement x = picard_from_json(X, read_json(map_val));
                NormalizationContext ctx = make_normalization_context(Y, infinity_point(Y));
                emit(picard_to_json(albanese_map(f, x, ctx, rng)), out_path);
            }
        } else if (pair_fr->parsed()) {
            Rng rng(need_seed());
            Curve X = curve_from_json(read_json(fr_curve));
            std::shared_ptr<Curve> e1, e2;
            PicardElement x = picard_from_json(X, read_json(fr_x), &e1);
            PicardElement y = picard_from_json(X, read_json(fr_y), &e2);
            FreyRuckResult r = frey_ruck(x, y, fr_n, rng);
            Json j;
            j["type"] = "pairing";
            j["n"] = fr_n;
            j["value"] = field_element_to_json(r.value);
            j["log"] = r.log;
            emit(j, out_path);
        } else if (tor_basis->parsed()) {
            Rng rng(need_seed());
            Curve X = curve_from_json(read_json(tor_curve));
            TorsionBasis tb = l_torsion_basis(X, tor_l, tor_alpha, rng);
            Json j;
            j["type"] = "torsion-basis";
            j["l"] = tor_l;
            j["curve"] = X.description_hash();
            Json chi = Json::array();
            for (auto c : tb.kd.chi) chi.push_back(c);
            j["chi"] = chi;
            j["b"] = tb.kd.b;
            j["a"] = tb.kd.a;
            j["c_a"] = tb.kd.c_a;
            j["m_a"] = tb.kd.m_a;
            Json basis = Json::array();
            for (auto& z : tb.basis) basis.push_back(picard_to_json(z));
            j["basis"] = basis;
            Json fm = Json::array();
            for (auto& row : tb.frobenius_matrix) {
                Json r = Json::array();
                for (auto v : row) r.push_back(v);
                fm.push_back(r);
            }
            j["frobenius_matrix"] = fm;
            emit(j, out_path);
        } else if (tor_rel->parsed()) {
            Rng rng(need_seed());
            Curve X = curve_from_json(read_json(tor_curve));
            std::vector<std::shared_ptr<Curve>> holders(tor_points.size());
            std::vector<PicardElement> xs;
            const Curve* target = &X;
            for (size_t i = 0; i < tor_points.size(); ++i) {
                xs.push_back(picard_from_json(X, read_json(tor_points[i]), &holders[i]));
                if (holders[i]) target = holders[i].get();
            }
            for (auto& x : xs)
                require(x.X == target || x.X == &X ? true : false, "mixed-field points");
            RelationBasis rel = find_relations(*xs[0].X, xs, tor_l, tor_alpha, rng);
            Json j;
            j["type"] = "relations";
            j["l"] = tor_l;
            Json vecs = Json::array();
            for (auto& v : rel.vectors) {
                Json row = Json::array();
                for (auto c : v) row.push_back(c);
                vecs.push_back(row);
            }
            j["kernel"] = vecs;
            emit(j, out_path);
        } else if (acc->parsed()) {
            std::vector<std::string> names =
                suite_name == "all" ? acceptance_suite_names() : std::vector<std::string>{suite_name};
            bool all_pass = true;
            for (auto& nm : names) {
                SuiteReport rep = run_acceptance_suite(nm);
                all_pass = all_pass && rep.pass;
                std::cout << (rep.pass ? "PASS" : "FAIL") << "  " << rep.name << "  ("
                          << rep.details << ")\n";
            }
            return all_pass ? 0 : 1;
        }
        return 0;
    } catch (const cap_exceeded& e) {
        std::cerr << "error (trial cap): " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error (document): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}
