#pragma once

#include "asymcheck/algebra.hpp"
#include "asymcheck/cubic.hpp"
#include "asymcheck/derivations.hpp"
#include "asymcheck/form.hpp"

#include <string>
#include <utility>
#include <vector>

namespace asymcheck::fixtures {

// Iarrobino's cubic in six variables. The circulated text carries two
// duplicated monomials (x2*x4^2 and x4*x5*x6); it is kept verbatim here for
// reference, while the canonical fixture below collapses each monomial class
// to a single term. Only the canonical polynomial reproduces the expected
// mod-2 structure constants, so the assertive checks use that one.
inline const char* kIarrobinoLiteralText =
    "6(x1x4^2 - x1^2x4 + x2x4^2 + x2x4^2 - x2^2x5 + x2x5^2 + x3^2x4 - x3x4^2 + x3^2x6 + x3x6^2"
    " + x5^2x6 + x5x6^2 + x1x2x4 + x1x2x5 + x1x3x6 + x2x4x6 + x3x5x6 + x4x5x6 + x4x5x6"
    " + x4^3 + x6^3)";

inline const char* kIarrobinoCanonicalText =
    "6(x1x4^2 - x1^2x4 + x2x4^2 - x2^2x5 + x2x5^2 + x3^2x4 - x3x4^2 + x3^2x6 + x3x6^2"
    " + x5^2x6 + x5x6^2 + x1x2x4 + x1x2x5 + x1x3x6 + x2x4x6 + x3x5x6 + x4x5x6"
    " + x4^3 + x6^3)";

inline CubicPolynomial iarrobino_polynomial() { return parse_cubic(kIarrobinoCanonicalText, 6); }

inline TrilinearForm iarrobino_integral_form() {
    return form_from_cubic(iarrobino_polynomial(), Field::integers());
}

// expected mod-2 structure constants: exactly these six classes are 1
inline TrilinearForm iarrobino_mod2_table() {
    TrilinearForm mu(Field::f2(), 6);
    for (const Triple& t : std::vector<Triple>{{1, 2, 4}, {1, 2, 5}, {1, 3, 6}, {2, 4, 6}, {3, 5, 6}, {4, 5, 6}})
        mu.set(t[0], t[1], t[2], 1);
    return mu;
}

// Self-contained verification of the bundled example: the mod-2 form matches
// the expected table, the algebra is generated in degree 2, the hyperplane
// criterion finds no witness, every negative derivation space vanishes, and
// the integral form satisfies the mod-2 admissibility congruence.
inline std::pair<bool, std::vector<std::string>> verify_iarrobino() {
    std::vector<std::string> lines;
    bool all_ok = true;
    auto record = [&](bool ok, const std::string& claim, const std::string& detail = "") {
        lines.push_back(std::string(ok ? "[ok]   " : "[FAIL] ") + claim +
                        (detail.empty() || ok ? "" : " -- " + detail));
        all_ok = all_ok && ok;
    };

    CubicPolynomial poly;
    TrilinearForm integral(Field::integers(), 6);
    try {
        poly = iarrobino_polynomial();
        integral = iarrobino_integral_form();
        record(true, "bundled cubic parses; " + std::to_string(poly.terms.size()) +
                         " monomial classes, integral form built");
    } catch (const std::exception& e) {
        record(false, "bundled cubic parses", e.what());
        return {false, lines};
    }

    TrilinearForm mod2 = reduce_mod(integral, 2);
    if (mod2 == iarrobino_mod2_table()) {
        record(true, "mod-2 structure constants match the expected table");
    } else {
        std::string diff;
        for (const Triple& t : all_triples(6)) {
            Scalar got = mod2.at(t[0], t[1], t[2]);
            Scalar want = iarrobino_mod2_table().at(t[0], t[1], t[2]);
            if (got != want)
                diff += "mu_" + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]) +
                        ": got " + std::to_string(got) + ", want " + std::to_string(want) + "; ";
        }
        record(false, "mod-2 structure constants match the expected table", diff);
    }

    GradedAlgebra alg = six_manifold_algebra(mod2);
    record(generated_by_degree(alg, 2), "degree-2 part generates the algebra");

    bool no_witness = false;
    try {
        no_witness = !hyperplane_criterion(alg).has_value();
    } catch (const std::exception&) {
        no_witness = false;
    }
    record(no_witness, "hyperplane criterion: no witness among the 63 hyperplanes");

    bool all_zero = true;
    std::string dims;
    for (int r = -1; r >= -6; --r) {
        std::size_t d = derivation_space(alg, r).dimension();
        if (d != 0) {
            all_zero = false;
            dims += "degree " + std::to_string(r) + " has dimension " + std::to_string(d) + "; ";
        }
    }
    record(all_zero, "derivation spaces vanish in all negative degrees", dims);

    record(wall_admissible(integral), "integral form satisfies the mod-2 admissibility congruence");

    return {all_ok, lines};
}

} // namespace asymcheck::fixtures
