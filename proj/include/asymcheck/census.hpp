#pragma once

#include "asymcheck/algebra.hpp"
#include "asymcheck/automorphisms.hpp"
#include "asymcheck/deformations.hpp"
#include "asymcheck/derivations.hpp"
#include "asymcheck/form.hpp"

#include <json.hpp>

#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace asymcheck {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational reduced() const {
        long long g = std::gcd(num, den);
        if (g == 0) return {0, 1};
        return {num / g, den / g};
    }
    std::string str() const {
        Rational r = reduced();
        return std::to_string(r.num) + "/" + std::to_string(r.den);
    }
    bool operator==(const Rational& o) const {
        Rational a = reduced(), b = o.reduced();
        return a.num == b.num && a.den == b.den;
    }
};

struct CensusChecks {
    bool involution = true;
    bool order_q = false;
    bool derivation = true;
    bool deformation = false;
    bool nondegeneracy = true;
};

struct CensusConfig {
    int m = 1;
    enum class Mode { Exhaustive, Sample };
    Mode mode = Mode::Exhaustive;
    std::uint64_t sample_count = 10000;
    std::uint64_t seed = 0;
    Scalar box_n = 1; // integral census box radius
    CensusChecks checks;
    std::vector<Scalar> q_list = {2, 3, 5};
    unsigned workers = 1;
    std::size_t deformation_budget = 8;
    int b3_half = 0;
    std::optional<TrilinearForm> explicit_form; // single-point census

    std::string mode_name() const { return mode == Mode::Exhaustive ? "exhaustive" : "sample"; }
};

inline unsigned effective_workers(const CensusConfig& cfg) {
    if (const char* env = std::getenv("ASYMCHECK_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return cfg.workers > 0 ? cfg.workers : 1;
}

// Aggregate counts; reports are deterministic functions of the config, so
// rerunning with a different worker count is byte-identical. Wall-clock and
// worker data are deliberately kept out of the serialized form.
struct CensusReport {
    std::string kind; // "threefold" or "sixfold"
    CensusConfig config;

    std::uint64_t scanned = 0;
    // threefold
    std::uint64_t orientable = 0, nonorientable = 0, not_realizable = 0;
    std::uint64_t with_involution = 0;
    std::map<Scalar, std::uint64_t> with_order_q;
    std::uint64_t with_negative_derivation = 0;
    std::uint64_t nondegenerate = 0;
    std::uint64_t deformation_none = 0, deformation_witness = 0, deformation_unknown = 0;
    std::uint64_t certified = 0, obstructed = 0, unknown = 0;
    // sixfold
    std::uint64_t wall_admissible = 0;
    struct ModP {
        std::uint64_t autos_plus = 0, autos_minus = 0;
        std::uint64_t with_negative_derivation = 0;
        std::uint64_t cup_length_3 = 0;
        std::uint64_t generated_by_degree2 = 0;
    };
    std::map<Scalar, ModP> mod_p;

    std::string confidence_note;

    std::uint64_t realizable() const { return orientable + nonorientable; }

    void merge(const CensusReport& o) {
        scanned += o.scanned;
        orientable += o.orientable;
        nonorientable += o.nonorientable;
        not_realizable += o.not_realizable;
        with_involution += o.with_involution;
        for (const auto& [q, c] : o.with_order_q) with_order_q[q] += c;
        with_negative_derivation += o.with_negative_derivation;
        nondegenerate += o.nondegenerate;
        deformation_none += o.deformation_none;
        deformation_witness += o.deformation_witness;
        deformation_unknown += o.deformation_unknown;
        certified += o.certified;
        obstructed += o.obstructed;
        unknown += o.unknown;
        wall_admissible += o.wall_admissible;
        for (const auto& [p, mp] : o.mod_p) {
            ModP& mine = mod_p[p];
            mine.autos_plus += mp.autos_plus;
            mine.autos_minus += mp.autos_minus;
            mine.with_negative_derivation += mp.with_negative_derivation;
            mine.cup_length_3 += mp.cup_length_3;
            mine.generated_by_degree2 += mp.generated_by_degree2;
        }
    }

    std::vector<std::pair<std::string, Rational>> ratios() const {
        std::vector<std::pair<std::string, Rational>> out;
        auto s = static_cast<long long>(scanned);
        if (kind == "threefold") {
            auto r = static_cast<long long>(realizable());
            out.push_back({"realizable", {r, s}});
            out.push_back({"orientable", {static_cast<long long>(orientable), s}});
            if (r > 0) {
                if (config.checks.involution)
                    out.push_back({"has-involution", {static_cast<long long>(with_involution), r}});
                if (config.checks.derivation)
                    out.push_back({"has-negative-derivation",
                                   {static_cast<long long>(with_negative_derivation), r}});
                if (config.checks.nondegeneracy)
                    out.push_back({"nondegenerate", {static_cast<long long>(nondegenerate), r}});
                out.push_back({"certified-asymmetry-candidates", {static_cast<long long>(certified), r}});
            }
        } else {
            auto adm = static_cast<long long>(wall_admissible);
            out.push_back({"wall-admissible", {adm, s}});
            if (adm > 0) {
                if (config.checks.nondegeneracy)
                    out.push_back({"nondegenerate", {static_cast<long long>(nondegenerate), adm}});
                for (const auto& [p, mp] : mod_p) {
                    std::string tag = "mod-" + std::to_string(p);
                    if (config.checks.order_q) {
                        out.push_back({tag + "-autos-orientation-preserving",
                                       {static_cast<long long>(mp.autos_plus), adm}});
                        out.push_back({tag + "-autos-orientation-reversing",
                                       {static_cast<long long>(mp.autos_minus), adm}});
                    }
                    if (config.checks.derivation)
                        out.push_back({tag + "-has-negative-derivation",
                                       {static_cast<long long>(mp.with_negative_derivation), adm}});
                    if (config.checks.nondegeneracy)
                        out.push_back({tag + "-cup-length-3", {static_cast<long long>(mp.cup_length_3), adm}});
                }
            }
        }
        return out;
    }
};

namespace detail {

template <typename PerIndex>
inline void parallel_scan(std::uint64_t total, unsigned workers, CensusReport& into, PerIndex per_index) {
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < total; ++i) per_index(into, i);
        return;
    }
    std::vector<CensusReport> locals(workers);
    for (auto& l : locals) l.kind = into.kind, l.config = into.config;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::uint64_t i = w; i < total; i += workers) per_index(locals[w], i);
        });
    for (auto& t : pool) t.join();
    for (const auto& l : locals) into.merge(l);
}

// classification shared by the census and the single-form certification
struct ObstructionOutcome {
    bool obstructed = false;
    bool unknown = false;
};

} // namespace detail

// --- three-manifold census ---------------------------------------------------

namespace detail {

inline void census_3m_visit(CensusReport& rep, const TrilinearForm& mu, const CensusConfig& cfg) {
    ++rep.scanned;
    PostnikovClass cls = postnikov_classify(mu);
    switch (cls.kind) {
        case PostnikovClass::Kind::Orientable: ++rep.orientable; break;
        case PostnikovClass::Kind::NonOrientable: ++rep.nonorientable; break;
        case PostnikovClass::Kind::NotRealizable: ++rep.not_realizable; return;
    }
    bool obstructed = false, unknown = false;
    if (cfg.checks.involution) {
        if (find_involution(mu)) {
            ++rep.with_involution;
            obstructed = true;
        }
    }
    if (cfg.checks.order_q) {
        for (Scalar q : cfg.q_list) {
            if (q == 2) continue; // covered by the involution search
            if (find_order_q_automorphism(mu, q, 1)) ++rep.with_order_q[q];
        }
    }
    GradedAlgebra alg = three_manifold_algebra(mu);
    if (cfg.checks.derivation) {
        if (has_negative_derivation(alg)) {
            ++rep.with_negative_derivation;
            obstructed = true;
        }
    }
    if (cfg.checks.nondegeneracy) {
        if (form_nondegenerate(mu)) ++rep.nondegenerate;
        else unknown = true; // proxy inconclusive, not an obstruction
    }
    if (cfg.checks.deformation) {
        DeformationSearchResult res = deformation_search(alg, cfg.deformation_budget);
        switch (res.kind) {
            case DeformationSearchResult::Kind::ExhaustedNoneNontrivial: ++rep.deformation_none; break;
            case DeformationSearchResult::Kind::Witness:
                ++rep.deformation_witness;
                obstructed = true;
                break;
            case DeformationSearchResult::Kind::BudgetExceeded:
                ++rep.deformation_unknown;
                unknown = true;
                break;
        }
    }
    if (obstructed) ++rep.obstructed;
    else if (unknown) ++rep.unknown;
    else ++rep.certified;
}

} // namespace detail

inline CensusReport census_3m(const CensusConfig& cfg) {
    CensusReport rep;
    rep.kind = "threefold";
    rep.config = cfg;
    unsigned workers = effective_workers(cfg);
    if (cfg.explicit_form) {
        detail::census_3m_visit(rep, *cfg.explicit_form, cfg);
        return rep;
    }
    if (cfg.mode == CensusConfig::Mode::Exhaustive) {
        if (cfg.m > 4)
            throw std::invalid_argument(
                "exhaustive three-manifold census is limited to m <= 4 (2^20 forms); use sample mode");
        std::uint64_t total = 1ULL << triple_count(cfg.m);
        detail::parallel_scan(total, workers, rep, [&](CensusReport& local, std::uint64_t i) {
            detail::census_3m_visit(local, form_from_bits(cfg.m, i), cfg);
        });
    } else {
        detail::parallel_scan(cfg.sample_count, workers, rep, [&](CensusReport& local, std::uint64_t i) {
            TrilinearForm mu = random_form(cfg.m, Field::f2(), FormDistribution::uniform_f2(),
                                           Rng::at(cfg.seed, i).next());
            detail::census_3m_visit(local, mu, cfg);
        });
        rep.confidence_note =
            "sampled estimate; 95% binomial interval half-width ~= 1.96*sqrt(phat*(1-phat)/" +
            std::to_string(cfg.sample_count) + ")";
    }
    return rep;
}

// --- six-manifold census ------------------------------------------------------

namespace detail {

inline void census_6m_visit(CensusReport& rep, const TrilinearForm& mu, const CensusConfig& cfg) {
    ++rep.scanned;
    if (!wall_admissible(mu)) return;
    ++rep.wall_admissible;
    if (cfg.checks.nondegeneracy && form_nondegenerate(mu)) ++rep.nondegenerate;
    for (Scalar p : cfg.q_list) {
        TrilinearForm mu_p = reduce_mod(mu, p);
        CensusReport::ModP& mp = rep.mod_p[p];
        if (cfg.checks.order_q) {
            if (find_order_q_automorphism(mu_p, p, 1)) ++mp.autos_plus;
            if (find_order_q_automorphism(mu_p, p, -1)) ++mp.autos_minus;
        }
        GradedAlgebra alg = six_manifold_algebra(mu_p, cfg.b3_half);
        if (cfg.checks.derivation && has_negative_derivation(alg)) ++mp.with_negative_derivation;
        if (cfg.checks.nondegeneracy) {
            if (cup_length(alg) == 3) ++mp.cup_length_3;
            if (generated_by_degree(alg, 2)) ++mp.generated_by_degree2;
        }
    }
}

inline TrilinearForm lattice_form(int m, Scalar box_n, std::uint64_t code) {
    TrilinearForm mu(Field::integers(), m);
    std::uint64_t base = static_cast<std::uint64_t>(2 * box_n + 1);
    for (const Triple& t : all_triples(m)) {
        Scalar digit = static_cast<Scalar>(code % base);
        code /= base;
        mu.set(t[0], t[1], t[2], digit - box_n);
    }
    return mu;
}

} // namespace detail

inline CensusReport census_6m(const CensusConfig& cfg) {
    CensusReport rep;
    rep.kind = "sixfold";
    rep.config = cfg;
    unsigned workers = effective_workers(cfg);
    if (cfg.explicit_form) {
        if (!cfg.explicit_form->field().is_int())
            throw std::invalid_argument("six-manifold census expects integral forms");
        detail::census_6m_visit(rep, *cfg.explicit_form, cfg);
        return rep;
    }
    if (cfg.box_n < 1) throw std::invalid_argument("box radius must be >= 1");
    if (cfg.mode == CensusConfig::Mode::Exhaustive) {
        long double size = 1;
        for (std::size_t i = 0; i < triple_count(cfg.m); ++i) size *= (2 * cfg.box_n + 1);
        if (size > static_cast<long double>(1ULL << 24))
            throw std::invalid_argument(
                "exhaustive box census refused beyond 2^24 lattice points; use sample mode");
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < triple_count(cfg.m); ++i) total *= (2 * cfg.box_n + 1);
        detail::parallel_scan(total, workers, rep, [&](CensusReport& local, std::uint64_t i) {
            detail::census_6m_visit(local, detail::lattice_form(cfg.m, cfg.box_n, i), cfg);
        });
    } else {
        detail::parallel_scan(cfg.sample_count, workers, rep, [&](CensusReport& local, std::uint64_t i) {
            TrilinearForm mu = random_form(cfg.m, Field::integers(),
                                           FormDistribution::integer_box(cfg.box_n),
                                           Rng::at(cfg.seed, i).next());
            detail::census_6m_visit(local, mu, cfg);
        });
        rep.confidence_note =
            "sampled estimate; 95% binomial interval half-width ~= 1.96*sqrt(phat*(1-phat)/" +
            std::to_string(cfg.sample_count) + ")";
    }
    return rep;
}

// --- density ------------------------------------------------------------------

// Exact population ratio of a named predicate; denominators are the scanned
// population. Sample mode yields a point estimate plus a confidence note.
struct DensityEstimate {
    std::string predicate;
    Rational ratio;
    std::string note;
};

inline DensityEstimate density_estimate(const std::string& predicate, const CensusConfig& cfg,
                                        bool sixfold = false) {
    bool sixfold_only = predicate == "wall-admissible";
    bool threefold_only = predicate == "realizable" || predicate == "orientable" ||
                          predicate == "nonorientable" || predicate == "has-involution" ||
                          predicate == "has-negative-derivation";
    if (!sixfold_only && !threefold_only && predicate != "everything" && predicate != "nondegenerate")
        throw std::invalid_argument("unknown predicate id: " + predicate);
    if (sixfold_only) sixfold = true;
    if (threefold_only && sixfold)
        throw std::invalid_argument("predicate " + predicate + " applies to the F2 census");
    if (cfg.explicit_form) sixfold = cfg.explicit_form->field().is_int();

    CensusConfig local = cfg;
    local.checks = CensusChecks{};
    local.checks.involution = predicate == "has-involution";
    local.checks.derivation = predicate == "has-negative-derivation";
    local.checks.nondegeneracy = predicate == "nondegenerate";
    local.checks.deformation = false;
    local.checks.order_q = false;
    if (sixfold) local.q_list.clear(); // nothing mod-p is needed for these predicates

    CensusReport rep = sixfold ? census_6m(local) : census_3m(local);

    long long count = 0;
    auto s = static_cast<long long>(rep.scanned);
    if (predicate == "everything") count = s;
    else if (predicate == "wall-admissible") count = static_cast<long long>(rep.wall_admissible);
    else if (predicate == "realizable") count = static_cast<long long>(rep.realizable());
    else if (predicate == "orientable") count = static_cast<long long>(rep.orientable);
    else if (predicate == "nonorientable") count = static_cast<long long>(rep.nonorientable);
    else if (predicate == "has-involution") count = static_cast<long long>(rep.with_involution);
    else if (predicate == "has-negative-derivation")
        count = static_cast<long long>(rep.with_negative_derivation);
    else if (predicate == "nondegenerate") count = static_cast<long long>(rep.nondegenerate);
    return {predicate, Rational{count, s}, rep.confidence_note.empty() ? "exact" : rep.confidence_note};
}

// --- single-form certification --------------------------------------------------

struct CertifyOptions {
    enum class Shape { ThreeManifold, SixManifold };
    Shape shape = Shape::SixManifold;
    int b3_half = 0;
    std::size_t deformation_budget = 8;
};

struct ConditionStatus {
    std::string name;
    std::string status; // "passed" | "failed" | "unknown"
    std::string note;
    nlohmann::json witness;
};

struct CertificationRecord {
    std::vector<ConditionStatus> conditions;
    std::string label; // "certified-candidate" | "obstructed" | "unknown"
    std::string disclaimer;
};

// Checks the obstruction battery on a single form at the cohomology-algebra
// level. The minimal-formal-dimension condition is replaced by a sufficient
// proxy (nondegeneracy, plus full cup length for six-manifold types), and
// the record says so.
inline CertificationRecord certify_form(const TrilinearForm& mu, const CertifyOptions& opts = {}) {
    CertificationRecord rec;
    TrilinearForm mu2 = mu.field().is_int() ? reduce_mod(mu, 2) : mu;
    if (!mu2.field().is_f2()) throw std::invalid_argument("certification runs over the mod-2 form");
    GradedAlgebra alg = opts.shape == CertifyOptions::Shape::ThreeManifold
                            ? three_manifold_algebra(mu2)
                            : six_manifold_algebra(mu2, opts.b3_half);

    ConditionStatus inv{"no-order-2-automorphism", "passed", "mod-2 graded involution search", {}};
    if (auto w = find_involution(mu2)) {
        inv.status = "failed";
        inv.witness = automorphism_to_json(*w, mu2.field());
    }
    rec.conditions.push_back(inv);

    ConditionStatus der{"no-negative-derivation", "passed", "solver over all negative degrees", {}};
    for (int r = -1; r >= -alg.formal_dim(); --r) {
        auto space = derivation_space(alg, r);
        if (space.dimension() > 0) {
            der.status = "failed";
            der.witness = {{"degree", r}, {"dimension", space.dimension()}};
            break;
        }
    }
    rec.conditions.push_back(der);

    ConditionStatus def{"no-negative-weight-deformation", "passed", "bounded exhaustive search", {}};
    DeformationSearchResult res = deformation_search(alg, opts.deformation_budget);
    switch (res.kind) {
        case DeformationSearchResult::Kind::ExhaustedNoneNontrivial: break;
        case DeformationSearchResult::Kind::Witness:
            def.status = "failed";
            def.witness = deformation_to_json(*res.witness);
            break;
        case DeformationSearchResult::Kind::BudgetExceeded:
            def.status = "unknown";
            def.note = "search budget exceeded";
            break;
    }
    rec.conditions.push_back(def);

    bool proxy = form_nondegenerate(mu);
    if (opts.shape == CertifyOptions::Shape::SixManifold)
        proxy = proxy && cup_length(alg) == alg.formal_dim() / 2;
    ConditionStatus mfd{"minimal-formal-dimension-proxy", proxy ? "passed" : "unknown",
                        "sufficient proxy only: nondegeneracy" +
                            std::string(opts.shape == CertifyOptions::Shape::SixManifold
                                            ? " and full cup length"
                                            : ""),
                        {}};
    rec.conditions.push_back(mfd);

    bool any_failed = false, any_unknown = false;
    for (const auto& c : rec.conditions) {
        if (c.status == "failed") any_failed = true;
        if (c.status == "unknown") any_unknown = true;
    }
    rec.label = any_failed ? "obstructed" : any_unknown ? "unknown" : "certified-candidate";
    rec.disclaimer =
        "certification applies to the cohomology algebra only; the minimal-formal-dimension "
        "condition is checked through a sufficient proxy, and no manifold-level statement is made";
    return rec;
}

// --- serialization ---------------------------------------------------------------

inline nlohmann::json census_config_to_json(const CensusConfig& cfg, const std::string& kind) {
    nlohmann::json j{{"m", cfg.m},
                     {"mode", cfg.mode_name()},
                     {"checks",
                      {{"involution", cfg.checks.involution},
                       {"order_q", cfg.checks.order_q},
                       {"derivation", cfg.checks.derivation},
                       {"deformation", cfg.checks.deformation},
                       {"nondegeneracy", cfg.checks.nondegeneracy}}}};
    if (cfg.mode == CensusConfig::Mode::Sample) {
        j["sample_count"] = cfg.sample_count;
        j["seed"] = cfg.seed;
    }
    if (kind == "sixfold") {
        j["box_n"] = cfg.box_n;
        j["q_list"] = cfg.q_list;
        j["b3_half"] = cfg.b3_half;
    }
    if (cfg.explicit_form) j["explicit_form"] = form_to_json(*cfg.explicit_form);
    return j;
}

inline CensusConfig census_config_from_json(const nlohmann::json& j) {
    CensusConfig cfg;
    cfg.m = j.value("m", 1);
    if (j.value("mode", "exhaustive") == std::string("sample")) cfg.mode = CensusConfig::Mode::Sample;
    cfg.sample_count = j.value("sample_count", cfg.sample_count);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.box_n = j.value("box_n", cfg.box_n);
    cfg.b3_half = j.value("b3_half", cfg.b3_half);
    if (j.contains("q_list")) cfg.q_list = j["q_list"].get<std::vector<Scalar>>();
    if (j.contains("checks")) {
        const nlohmann::json& c = j["checks"];
        cfg.checks.involution = c.value("involution", cfg.checks.involution);
        cfg.checks.order_q = c.value("order_q", cfg.checks.order_q);
        cfg.checks.derivation = c.value("derivation", cfg.checks.derivation);
        cfg.checks.deformation = c.value("deformation", cfg.checks.deformation);
        cfg.checks.nondegeneracy = c.value("nondegeneracy", cfg.checks.nondegeneracy);
    }
    if (j.contains("explicit_form")) cfg.explicit_form = form_from_json(j["explicit_form"]);
    if (j.contains("deformation_budget")) cfg.deformation_budget = j["deformation_budget"].get<std::size_t>();
    return cfg;
}

inline nlohmann::json census_report_to_json(const CensusReport& rep) {
    nlohmann::json counts{{"scanned", rep.scanned}};
    if (rep.kind == "threefold") {
        counts["orientable"] = rep.orientable;
        counts["nonorientable"] = rep.nonorientable;
        counts["not_realizable"] = rep.not_realizable;
        counts["realizable"] = rep.realizable();
        if (rep.config.checks.involution) counts["with_involution"] = rep.with_involution;
        if (rep.config.checks.order_q) {
            nlohmann::json per_q = nlohmann::json::object();
            for (const auto& [q, c] : rep.with_order_q) per_q[std::to_string(q)] = c;
            counts["with_order_q"] = per_q;
        }
        if (rep.config.checks.derivation)
            counts["with_negative_derivation"] = rep.with_negative_derivation;
        if (rep.config.checks.nondegeneracy) counts["nondegenerate"] = rep.nondegenerate;
        if (rep.config.checks.deformation)
            counts["deformation"] = {{"none", rep.deformation_none},
                                     {"witness", rep.deformation_witness},
                                     {"unknown", rep.deformation_unknown}};
        counts["certified"] = rep.certified;
        counts["obstructed"] = rep.obstructed;
        counts["unknown"] = rep.unknown;
    } else {
        counts["wall_admissible"] = rep.wall_admissible;
        if (rep.config.checks.nondegeneracy) counts["nondegenerate"] = rep.nondegenerate;
        nlohmann::json per_p = nlohmann::json::object();
        for (const auto& [p, mp] : rep.mod_p) {
            nlohmann::json entry;
            if (rep.config.checks.order_q) {
                entry["autos_orientation_preserving"] = mp.autos_plus;
                entry["autos_orientation_reversing"] = mp.autos_minus;
            }
            if (rep.config.checks.derivation)
                entry["with_negative_derivation"] = mp.with_negative_derivation;
            if (rep.config.checks.nondegeneracy) {
                entry["cup_length_3"] = mp.cup_length_3;
                entry["generated_by_degree2"] = mp.generated_by_degree2;
            }
            per_p[std::to_string(p)] = entry;
        }
        if (!rep.mod_p.empty()) counts["mod_p"] = per_p;
    }
    nlohmann::json ratios = nlohmann::json::array();
    for (const auto& [name, ratio] : rep.ratios())
        ratios.push_back({{"predicate", name},
                          {"numerator", ratio.num},
                          {"denominator", ratio.den},
                          {"ratio", ratio.str()}});
    nlohmann::json j{{"kind", rep.kind},
                     {"config", census_config_to_json(rep.config, rep.kind)},
                     {"counts", counts},
                     {"ratios", ratios}};
    if (!rep.confidence_note.empty()) j["meta"] = {{"confidence", rep.confidence_note}};
    return j;
}

// one row per (m, predicate) with the exact fraction
inline std::string census_report_to_csv(const CensusReport& rep) {
    std::string out = "m,predicate,numerator,denominator\n";
    for (const auto& [name, ratio] : rep.ratios())
        out += std::to_string(rep.config.m) + "," + name + "," + std::to_string(ratio.num) + "," +
               std::to_string(ratio.den) + "\n";
    return out;
}

inline nlohmann::json certification_to_json(const CertificationRecord& rec) {
    nlohmann::json conds = nlohmann::json::array();
    for (const auto& c : rec.conditions) {
        nlohmann::json e{{"name", c.name}, {"status", c.status}, {"note", c.note}};
        if (!c.witness.is_null()) e["witness"] = c.witness;
        conds.push_back(e);
    }
    return {{"conditions", conds}, {"label", rec.label}, {"disclaimer", rec.disclaimer}};
}

} // namespace asymcheck
