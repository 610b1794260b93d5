#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asymcheck/census.hpp"
#include "asymcheck/fixtures.hpp"

using namespace asymcheck;

namespace {

CensusConfig threefold_cfg(int m) {
    CensusConfig cfg;
    cfg.m = m;
    return cfg;
}

// straight-line single-threaded recount through the module operations,
// sharing no code with the census pipeline
struct BruteCounts {
    std::uint64_t scanned = 0, orientable = 0, nonorientable = 0, not_realizable = 0;
    std::uint64_t with_involution = 0, with_negative_derivation = 0, nondegenerate = 0;
};

BruteCounts brute_force_3m(int m) {
    BruteCounts c;
    for (std::uint64_t code = 0; code < (1ULL << triple_count(m)); ++code) {
        TrilinearForm mu = form_from_bits(m, code);
        ++c.scanned;
        PostnikovClass cls = postnikov_classify(mu);
        if (cls.kind == PostnikovClass::Kind::Orientable) ++c.orientable;
        else if (cls.kind == PostnikovClass::Kind::NonOrientable) ++c.nonorientable;
        else { ++c.not_realizable; continue; }
        if (find_involution(mu)) ++c.with_involution;
        if (has_negative_derivation(three_manifold_algebra(mu))) ++c.with_negative_derivation;
        if (form_nondegenerate(mu)) ++c.nondegenerate;
    }
    return c;
}

} // namespace

TEST_CASE("m=1 exhaustive census") {
    CensusConfig cfg = threefold_cfg(1);
    cfg.checks.deformation = true; // tiny population, full battery
    CensusReport rep = census_3m(cfg);
    CHECK(rep.scanned == 2);
    CHECK(rep.orientable == 2); // the defect is identically zero at m=1
    CHECK(rep.nonorientable == 0);
    CHECK(rep.not_realizable == 0);
    CHECK(rep.with_involution == 0); // GL(1, F2) is trivial
    CHECK(rep.with_negative_derivation == 2);
    CHECK(rep.deformation_witness == 2);
    CHECK(rep.certified == 0);
    CHECK(rep.obstructed == 2);
    CHECK(rep.scanned == rep.certified + rep.obstructed + rep.unknown + rep.not_realizable);
}

TEST_CASE("m=2 exhaustive census, counts frozen from the first verified run") {
    CensusReport rep = census_3m(threefold_cfg(2));
    CHECK(rep.scanned == 16);
    CHECK(rep.orientable == 8);
    CHECK(rep.nonorientable == 6);
    CHECK(rep.not_realizable == 2);
    CHECK(rep.with_involution == 8); // every defect-free form, none of the others
    CHECK(rep.with_negative_derivation == 10);
    CHECK(rep.nondegenerate == 10);
    CHECK(rep.certified == 0);
    CHECK(rep.obstructed == 14);
    CHECK(rep.unknown == 0);

    Rational involution_ratio{0, 1};
    for (const auto& [name, r] : rep.ratios())
        if (name == "has-involution") involution_ratio = r;
    CHECK(involution_ratio == Rational{4, 7});
}

TEST_CASE("census pipeline agrees with a straight-line brute force at m <= 2") {
    for (int m = 1; m <= 2; ++m) {
        BruteCounts direct = brute_force_3m(m);
        CensusReport rep = census_3m(threefold_cfg(m));
        CHECK(rep.scanned == direct.scanned);
        CHECK(rep.orientable == direct.orientable);
        CHECK(rep.nonorientable == direct.nonorientable);
        CHECK(rep.not_realizable == direct.not_realizable);
        CHECK(rep.with_involution == direct.with_involution);
        CHECK(rep.with_negative_derivation == direct.with_negative_derivation);
        CHECK(rep.nondegenerate == direct.nondegenerate);
    }
}

TEST_CASE("reports are byte-identical across worker counts") {
    for (unsigned workers : {1u, 2u, 3u, 7u}) {
        CensusConfig cfg = threefold_cfg(3);
        cfg.workers = workers;
        CensusReport rep = census_3m(cfg);
        static std::string reference;
        std::string serialized = census_report_to_json(rep).dump() + census_report_to_csv(rep);
        if (reference.empty()) reference = serialized;
        CHECK(serialized == reference);
    }
    // sampled censuses shard the stream by index, so worker count is moot there too
    for (unsigned workers : {1u, 3u}) {
        CensusConfig cfg = threefold_cfg(5);
        cfg.mode = CensusConfig::Mode::Sample;
        cfg.sample_count = 40;
        cfg.seed = 11;
        cfg.workers = workers;
        cfg.checks.involution = false; // keep the small sample quick
        CensusReport rep = census_3m(cfg);
        static std::string sample_reference;
        std::string serialized = census_report_to_json(rep).dump();
        if (sample_reference.empty()) sample_reference = serialized;
        CHECK(serialized == sample_reference);
    }
}

TEST_CASE("exhaustive ranges are refused with guidance") {
    CensusConfig cfg = threefold_cfg(5);
    CHECK_THROWS_WITH_AS(static_cast<void>(census_3m(cfg)),
                         doctest::Contains("use sample mode"), std::invalid_argument);

    CensusConfig big;
    big.m = 4; // alpha(4) = 20, box 3^20 > 2^24
    big.box_n = 1;
    CHECK_THROWS_WITH_AS(static_cast<void>(census_6m(big)),
                         doctest::Contains("2^24"), std::invalid_argument);
}

TEST_CASE("enabling more checks never increases the certified count") {
    CensusConfig fewer = threefold_cfg(2);
    fewer.checks = CensusChecks{true, false, false, false, false}; // involution only
    CensusConfig more = threefold_cfg(2);
    more.checks = CensusChecks{true, false, true, false, true};
    CensusConfig all = threefold_cfg(2);
    all.checks = CensusChecks{true, false, true, true, true};
    std::uint64_t c1 = census_3m(fewer).certified;
    std::uint64_t c2 = census_3m(more).certified;
    std::uint64_t c3 = census_3m(all).certified;
    CHECK(c2 <= c1);
    CHECK(c3 <= c2);
}

TEST_CASE("six-manifold box census at m=1, N=1") {
    CensusConfig cfg;
    cfg.m = 1;
    cfg.box_n = 1;
    cfg.checks.order_q = true;
    cfg.q_list = {2, 3};
    CensusReport rep = census_6m(cfg);
    CHECK(rep.scanned == 3);
    CHECK(rep.wall_admissible == 3); // the congruence quantifies over pairs i < j
    CHECK(rep.nondegenerate == 2);   // only the zero form is degenerate
}

TEST_CASE("wall-admissible density at m=2, N=1 is exactly 5/9") {
    CensusConfig cfg;
    cfg.m = 2;
    cfg.box_n = 1;
    DensityEstimate d = density_estimate("wall-admissible", cfg);
    CHECK(d.ratio == Rational{5, 9});
    CHECK(d.ratio.num * 81 == d.ratio.den * 45);
    CHECK(d.note == "exact");
}

TEST_CASE("density corner cases") {
    CensusConfig three = threefold_cfg(1);
    CHECK(density_estimate("everything", three).ratio == Rational{1, 1});
    CHECK(density_estimate("has-involution", three).ratio == Rational{0, 1});

    CensusConfig six;
    six.m = 2;
    six.box_n = 1;
    CHECK(density_estimate("everything", six, true).ratio == Rational{1, 1});
    CHECK_THROWS_AS(static_cast<void>(density_estimate("no-such-predicate", three)),
                    std::invalid_argument);

    CensusConfig sampled = threefold_cfg(4);
    sampled.mode = CensusConfig::Mode::Sample;
    sampled.sample_count = 200;
    sampled.seed = 5;
    DensityEstimate est = density_estimate("realizable", sampled);
    CHECK(est.ratio.den == 200);
    CHECK(est.note.find("binomial") != std::string::npos);
}

TEST_CASE("single-point census of the bundled integral form") {
    CensusConfig cfg;
    cfg.explicit_form = fixtures::iarrobino_integral_form();
    cfg.m = 6;
    cfg.q_list = {2};
    cfg.checks.order_q = false; // the mod-2 automorphism answer is census data, probed elsewhere
    CensusReport rep = census_6m(cfg);
    CHECK(rep.scanned == 1);
    CHECK(rep.wall_admissible == 1);
    CHECK(rep.nondegenerate == 1);
    CHECK(rep.mod_p[2].with_negative_derivation == 0);
    CHECK(rep.mod_p[2].generated_by_degree2 == 1);
    CHECK(rep.mod_p[2].cup_length_3 == 1);
}

TEST_CASE("certification records") {
    CertifyOptions sixfold;
    sixfold.shape = CertifyOptions::Shape::SixManifold;
    CertificationRecord rec = certify_form(fixtures::iarrobino_integral_form(), sixfold);
    REQUIRE(rec.conditions.size() == 4);
    CHECK(rec.conditions[1].name == "no-negative-derivation");
    CHECK(rec.conditions[1].status == "passed");
    CHECK(rec.conditions[3].status == "passed"); // nondegenerate with full cup length
    CHECK(rec.conditions[2].status == "unknown"); // deformation budget: dimension 14 > 8
    CHECK(rec.label != "certified-candidate");    // the unknown keeps it honest
    CHECK(rec.disclaimer.find("proxy") != std::string::npos);

    TrilinearForm zero(Field::f2(), 2);
    CertificationRecord zrec = certify_form(zero, sixfold);
    CHECK(zrec.conditions[0].status == "failed"); // a swap-type involution exists
    CHECK(zrec.label == "obstructed");

    TrilinearForm mu(Field::f2(), 2);
    mu.set(1, 1, 2, 1);
    CertificationRecord mrec = certify_form(mu, sixfold);
    CHECK(mrec.conditions[0].status == "passed");  // no involution preserves it
    CHECK(mrec.conditions[1].status == "failed");  // hyperplane witness, so a derivation exists
    CHECK(mrec.conditions[1].witness["degree"] == -2);
}

TEST_CASE("report serialization shapes") {
    CensusReport rep = census_3m(threefold_cfg(2));
    nlohmann::json j = census_report_to_json(rep);
    CHECK(j["kind"] == "threefold");
    CHECK(j["config"]["m"] == 2);
    CHECK(j["config"].contains("workers") == false);
    CHECK(j["counts"]["realizable"] == 14);
    std::string csv = census_report_to_csv(rep);
    CHECK(csv.rfind("m,predicate,numerator,denominator\n", 0) == 0);
    CHECK(csv.find("2,has-involution,8,14") != std::string::npos);
}
