#pragma once

#include "asymcheck/census.hpp"
#include "asymcheck/cubic.hpp"
#include "asymcheck/derivations.hpp"
#include "asymcheck/fixtures.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace asymcheck::cli {

// exit codes: 0 success, 1 assertive check failed, 2 usage or parse error
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct FormFlags {
    std::string field = "f2";
    int m = 0;
    std::vector<std::string> entries;
    std::string poly;
    std::string input;
};

inline void add_form_flags(CLI::App* cmd, FormFlags& ff, bool field_required = false) {
    auto* f = cmd->add_option("--field", ff.field, "coefficient field: f2 | fp:P | int");
    if (field_required) f->required();
    cmd->add_option("--m", ff.m, "dimension of the underlying module");
    cmd->add_option("--entries", ff.entries, "structure constant i,j,k=v (repeatable)");
    cmd->add_option("--poly", ff.poly, "homogeneous cubic, e.g. \"x1^3 + 6*x1*x2*x3\"");
    cmd->add_option("--input", ff.input, "path to a form JSON file");
}

inline Field parse_field(const std::string& s) {
    if (s == "f2" || s == "F2") return Field::f2();
    if (s == "int" || s == "Int") return Field::integers();
    if (s.rfind("fp:", 0) == 0 || s.rfind("Fp:", 0) == 0)
        return Field::fp(std::stoll(s.substr(3)));
    throw CLI::ValidationError("--field", "expected f2, fp:P or int");
}

inline int infer_poly_dimension(const std::string& text) {
    int m = 0;
    for (std::size_t i = 0; i + 1 < text.size(); ++i)
        if (text[i] == 'x' && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
            int v = 0;
            std::size_t j = i + 1;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                v = v * 10 + (text[j++] - '0');
            m = std::max(m, v);
        }
    return m;
}

inline TrilinearForm form_from_flags(const FormFlags& ff) {
    if (!ff.input.empty()) {
        std::ifstream in(ff.input);
        if (!in) throw std::runtime_error("cannot open " + ff.input);
        nlohmann::json j;
        in >> j;
        return form_from_json(j);
    }
    Field field = parse_field(ff.field);
    if (!ff.poly.empty()) {
        int m = ff.m > 0 ? ff.m : infer_poly_dimension(ff.poly);
        return form_from_cubic(parse_cubic(ff.poly, m), field);
    }
    if (ff.m <= 0) throw CLI::ValidationError("--m", "a positive dimension is required");
    TrilinearForm mu(field, ff.m);
    for (const std::string& e : ff.entries) {
        int i, j, k;
        long long v;
        if (std::sscanf(e.c_str(), "%d,%d,%d=%lld", &i, &j, &k, &v) != 4)
            throw CLI::ValidationError("--entries", "expected i,j,k=v, got '" + e + "'");
        mu.set(i, j, k, v);
    }
    return mu;
}

inline void emit(const std::string& payload, const std::string& output_path) {
    if (output_path.empty() || output_path == "-") {
        std::cout << payload << "\n";
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot write " + output_path);
    out << payload << "\n";
}

} // namespace detail

inline int run(std::vector<std::string> args) {
    CLI::App app{"asymmetry obstructions for cohomology types presented as trilinear forms"};
    app.require_subcommand(1);

    std::string output;
    std::string format = "json";
    app.add_option("--output", output, "output path (default stdout)");
    app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    detail::FormFlags ff;

    auto* classify = app.add_subcommand("classify", "realizability class of an F2 form");
    detail::add_form_flags(classify, ff);

    auto* derive = app.add_subcommand("derive", "negative-degree derivation spaces");
    detail::add_form_flags(derive, ff);
    std::string shape = "threefold";
    int b3_half = 0;
    bool unit_constrained = false;
    derive->add_option("--shape", shape, "threefold | sixfold")
        ->check(CLI::IsMember({"threefold", "sixfold"}));
    derive->add_option("--s", b3_half, "six-manifold middle-degree rank (pairs)");
    derive->add_flag("--unit-constrained", unit_constrained, "forbid components landing in degree 0");
    bool dump_algebra = false;
    derive->add_flag("--dump-algebra", dump_algebra, "include the multiplication-table dump");

    auto* autos = app.add_subcommand("autos", "form-preserving automorphism search");
    detail::add_form_flags(autos, ff);
    Scalar order = 2;
    int epsilon = 1;
    bool do_enumerate = false;
    autos->add_option("--order", order, "prime order of the automorphism");
    autos->add_option("--epsilon", epsilon, "orientation sign +1 | -1");
    autos->add_flag("--enumerate", do_enumerate, "list the full preserver group (F2, m <= 4)");

    auto* deform = app.add_subcommand("deform", "negative-weight deformation search");
    detail::add_form_flags(deform, ff);
    std::size_t budget = 8;
    deform->add_option("--shape", shape, "threefold | sixfold")
        ->check(CLI::IsMember({"threefold", "sixfold"}));
    deform->add_option("--s", b3_half, "six-manifold middle-degree rank (pairs)");
    deform->add_option("--budget", budget, "max total basis dimension");

    auto* census = app.add_subcommand("census", "population scan with obstruction counts");
    detail::add_form_flags(census, ff);
    bool six = false;
    census->add_flag("--six", six, "integral six-manifold census over a box");
    std::string config_path;
    census->add_option("--config", config_path, "census config JSON file (flags override nothing)");
    std::string mode = "exhaustive";
    census->add_option("--mode", mode, "exhaustive | sample")
        ->check(CLI::IsMember({"exhaustive", "sample"}));
    std::uint64_t count = 10000, seed = 0;
    Scalar box_n = 1;
    unsigned workers = 1;
    census->add_option("--count", count, "sample size");
    census->add_option("--seed", seed, "sample seed");
    census->add_option("--box-n", box_n, "box radius for integral censuses");
    census->add_option("--workers", workers, "worker threads (ASYMCHECK_WORKERS overrides)");
    census->add_option("--budget", budget, "deformation search budget");
    std::vector<Scalar> q_list = {2, 3, 5};
    census->add_option("--q-list", q_list, "primes for automorphism/reduction checks");
    std::vector<std::string> checks;
    census->add_option("--checks", checks,
                       "enabled checks: involution,order-q,derivation,deformation,nondegeneracy");
    std::string predicate;
    census->add_option("--predicate", predicate, "emit a single density estimate instead");

    auto* certify = app.add_subcommand("certify", "obstruction record for one form");
    detail::add_form_flags(certify, ff);
    certify->add_option("--shape", shape, "threefold | sixfold")
        ->check(CLI::IsMember({"threefold", "sixfold"}));
    certify->add_option("--s", b3_half, "six-manifold middle-degree rank (pairs)");
    certify->add_option("--budget", budget, "deformation search budget");

    auto* verify = app.add_subcommand("verify-iarrobino", "check the bundled six-variable example");

    auto* parse = app.add_subcommand("parse", "parse a cubic and print the associated form");
    std::string poly_arg;
    parse->add_option("polynomial", poly_arg, "cubic polynomial text")->required();
    parse->add_option("--m", ff.m, "number of variables (default: highest index used)");
    std::string parse_field_name = "int";
    parse->add_option("--field", parse_field_name, "target field for the form");

    try {
        args.insert(args.begin(), "asymcheck");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            app.exit(e);
            return kExitUsage;
        }

        if (classify->parsed()) {
            TrilinearForm mu = detail::form_from_flags(ff);
            PostnikovClass cls = postnikov_classify(mu);
            nlohmann::json j{{"postnikov", cls.name()}};
            if (cls.kind == PostnikovClass::Kind::NonOrientable) j["x0"] = cls.x0;
            detail::emit(j.dump(), output);
            return kExitOk;
        }
        if (derive->parsed()) {
            TrilinearForm mu = detail::form_from_flags(ff);
            GradedAlgebra alg = shape == "threefold" ? three_manifold_algebra(mu)
                                                     : six_manifold_algebra(mu, b3_half);
            nlohmann::json spaces = nlohmann::json::array();
            bool any = false;
            for (int r = -1; r >= -alg.formal_dim(); --r) {
                DerivationSpace space = derivation_space(alg, r, unit_constrained);
                spaces.push_back({{"degree", r}, {"dimension", space.dimension()}});
                if (space.dimension() > 0) any = true;
            }
            nlohmann::json j{{"spaces", spaces}, {"has_negative_derivation", any}};
            if (shape == "sixfold" && mu.field().is_f2() && b3_half == 0 &&
                generated_by_degree(alg, 2)) {
                if (auto w = hyperplane_criterion(alg)) {
                    nlohmann::json basis = nlohmann::json::array();
                    for (const Vec& k : w->k_basis) basis.push_back(k);
                    j["hyperplane_witness"] = {
                        {"dual", w->dual}, {"k_basis", basis}, {"a", w->a}};
                } else {
                    j["hyperplane_witness"] = nullptr;
                }
            }
            if (dump_algebra) j["algebra"] = algebra_to_json(alg);
            detail::emit(j.dump(), output);
            return kExitOk;
        }
        if (autos->parsed()) {
            TrilinearForm mu = detail::form_from_flags(ff);
            if (do_enumerate) {
                nlohmann::json list = nlohmann::json::array();
                for (const auto& a : enumerate_form_automorphisms(mu))
                    list.push_back(automorphism_to_json(a, mu.field()));
                detail::emit(nlohmann::json{{"automorphisms", list}}.dump(), output);
                return kExitOk;
            }
            std::optional<FormAutomorphism> found =
                order == 2 && epsilon == 1 && mu.field().is_f2()
                    ? find_involution(mu)
                    : find_order_q_automorphism(mu, order, epsilon);
            nlohmann::json j{{"found", found.has_value()}, {"order", order}, {"epsilon", epsilon}};
            if (found) j["witness"] = automorphism_to_json(*found, mu.field());
            detail::emit(j.dump(), output);
            return kExitOk;
        }
        if (deform->parsed()) {
            TrilinearForm mu = detail::form_from_flags(ff);
            GradedAlgebra alg = shape == "threefold" ? three_manifold_algebra(mu)
                                                     : six_manifold_algebra(mu, b3_half);
            DeformationSearchResult res = deformation_search(alg, budget);
            nlohmann::json j{{"outcome", res.kind_name()},
                             {"nodes_visited", res.nodes_visited},
                             {"solutions_seen", res.solutions_seen}};
            if (res.witness) j["witness"] = deformation_to_json(*res.witness);
            detail::emit(j.dump(), output);
            return kExitOk;
        }
        if (census->parsed()) {
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw std::runtime_error("cannot open " + config_path);
                nlohmann::json j;
                in >> j;
                CensusConfig cfg = census_config_from_json(j);
                bool sixfold = j.value("kind", six ? "sixfold" : "threefold") == std::string("sixfold");
                CensusReport rep = sixfold ? census_6m(cfg) : census_3m(cfg);
                detail::emit(format == "csv" ? census_report_to_csv(rep)
                                             : census_report_to_json(rep).dump(),
                             output);
                return kExitOk;
            }
            CensusConfig cfg;
            cfg.m = ff.m;
            cfg.mode = mode == "sample" ? CensusConfig::Mode::Sample : CensusConfig::Mode::Exhaustive;
            cfg.sample_count = count;
            cfg.seed = seed;
            cfg.box_n = box_n;
            cfg.workers = workers;
            cfg.q_list = q_list;
            cfg.deformation_budget = budget;
            cfg.b3_half = b3_half;
            if (!checks.empty()) {
                cfg.checks = CensusChecks{false, false, false, false, false};
                for (const std::string& c : checks) {
                    if (c == "involution") cfg.checks.involution = true;
                    else if (c == "order-q") cfg.checks.order_q = true;
                    else if (c == "derivation") cfg.checks.derivation = true;
                    else if (c == "deformation") cfg.checks.deformation = true;
                    else if (c == "nondegeneracy") cfg.checks.nondegeneracy = true;
                    else throw CLI::ValidationError("--checks", "unknown check '" + c + "'");
                }
            } else if (six) {
                cfg.checks.order_q = true;
            }
            if (!ff.poly.empty() || !ff.entries.empty() || !ff.input.empty()) {
                if (ff.m == 0 && !ff.poly.empty()) ff.m = detail::infer_poly_dimension(ff.poly);
                cfg.explicit_form = detail::form_from_flags(ff);
                cfg.m = cfg.explicit_form->m();
            }
            if (cfg.m <= 0) throw CLI::ValidationError("--m", "a positive dimension is required");
            if (!predicate.empty()) {
                DensityEstimate d = density_estimate(predicate, cfg, six);
                detail::emit(nlohmann::json{{"predicate", d.predicate},
                                            {"numerator", d.ratio.num},
                                            {"denominator", d.ratio.den},
                                            {"ratio", d.ratio.str()},
                                            {"note", d.note}}
                                 .dump(),
                             output);
                return kExitOk;
            }
            CensusReport rep = six || (cfg.explicit_form && cfg.explicit_form->field().is_int())
                                   ? census_6m(cfg)
                                   : census_3m(cfg);
            detail::emit(format == "csv" ? census_report_to_csv(rep)
                                         : census_report_to_json(rep).dump(),
                         output);
            return kExitOk;
        }
        if (certify->parsed()) {
            TrilinearForm mu = detail::form_from_flags(ff);
            CertifyOptions opts;
            opts.shape = shape == "threefold" ? CertifyOptions::Shape::ThreeManifold
                                              : CertifyOptions::Shape::SixManifold;
            opts.b3_half = b3_half;
            opts.deformation_budget = budget;
            detail::emit(certification_to_json(certify_form(mu, opts)).dump(), output);
            return kExitOk;
        }
        if (verify->parsed()) {
            auto [ok, lines] = fixtures::verify_iarrobino();
            std::string text;
            for (const auto& l : lines) text += l + "\n";
            if (!text.empty()) text.pop_back();
            detail::emit(text, output);
            return ok ? kExitOk : kExitCheckFailed;
        }
        if (parse->parsed()) {
            int m = ff.m > 0 ? ff.m : detail::infer_poly_dimension(poly_arg);
            CubicPolynomial p = parse_cubic(poly_arg, m);
            TrilinearForm mu = form_from_cubic(p, detail::parse_field(parse_field_name));
            detail::emit(form_to_json(mu).dump(), output);
            return kExitOk;
        }
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace asymcheck::cli
