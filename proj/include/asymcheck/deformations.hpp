#pragma once

#include "asymcheck/algebra.hpp"
#include "asymcheck/automorphisms.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace asymcheck {

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Multiplication x*y = xy + (lower-degree corrections), unital, symmetric
// (the module is restricted to F2) and associative; the associated graded
// algebra of the induced filtration is the base. Star products are stored
// as full vectors whose top component is the graded product.
class FilteredDeformation {
public:
    explicit FilteredDeformation(GradedAlgebra base)
        : base_(std::move(base)) {
        if (!base_.field().is_f2())
            throw std::invalid_argument("filtered deformations are implemented over F2 only");
        star_.assign(base_.total_dim() * base_.total_dim(), {});
        for (std::size_t u = 1; u < base_.total_dim(); ++u)
            for (std::size_t v = u; v < base_.total_dim(); ++v)
                slot(u, v) = base_.basis_product(u, v);
    }

    const GradedAlgebra& base() const { return base_; }

    const Vec& star(std::size_t u, std::size_t v) const {
        if (u == 0) return unit_cache(v);
        if (v == 0) return unit_cache(u);
        return u <= v ? slot(u, v) : slot(v, u);
    }

    void set_star(std::size_t u, std::size_t v, Vec value) {
        if (u > v) std::swap(u, v);
        if (u == 0) throw std::invalid_argument("unit products are fixed");
        int top_degree = base_.degree_of(u) + base_.degree_of(v);
        for (std::size_t w = 0; w < value.size(); ++w)
            if (base_.degree_of(w) > top_degree && value[w] != 0)
                throw std::invalid_argument("star product may not raise filtration degree");
        slot(u, v) = std::move(value);
    }

    // one correction component; weight w >= 1
    void set_correction(std::size_t u, std::size_t v, int weight, const Vec& target_coeffs) {
        if (u > v) std::swap(u, v);
        int t = base_.degree_of(u) + base_.degree_of(v) - weight;
        if (weight < 1 || t < 0 || base_.dim(t) != target_coeffs.size())
            throw std::invalid_argument("bad correction target");
        Vec& s = slot(u, v);
        for (std::size_t i = 0; i < target_coeffs.size(); ++i) s[base_.offset(t) + i] = target_coeffs[i];
    }

    Vec multiply(const Vec& x, const Vec& y) const {
        const Field& k = base_.field();
        std::size_t n = base_.total_dim();
        Vec out(n, 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (x[u] == 0) continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (y[v] == 0) continue;
                Scalar c = k.mul(x[u], y[v]);
                const Vec& uv = star(u, v);
                for (std::size_t w = 0; w < n; ++w)
                    if (uv[w] != 0) out[w] = k.add(out[w], k.mul(c, uv[w]));
            }
        }
        return out;
    }

    bool is_associative() const {
        std::size_t n = base_.total_dim();
        for (std::size_t u = 1; u < n; ++u)
            for (std::size_t v = 1; v < n; ++v)
                for (std::size_t w = 1; w < n; ++w)
                    if (multiply(star(u, v), base_.basis_vector(w)) !=
                        multiply(base_.basis_vector(u), star(v, w)))
                        return false;
        return true;
    }

    // (pair, weight, target coefficients) for every nonzero correction
    struct Correction {
        std::size_t u, v;
        int weight;
        Vec target;
    };
    std::vector<Correction> corrections() const {
        std::vector<Correction> out;
        for (std::size_t u = 1; u < base_.total_dim(); ++u)
            for (std::size_t v = u; v < base_.total_dim(); ++v) {
                int s = base_.degree_of(u) + base_.degree_of(v);
                const Vec& val = slot(u, v);
                for (int t = std::min(s - 1, base_.formal_dim()); t >= 0; --t) {
                    if (base_.dim(t) == 0) continue;
                    Vec comp = base_.component(val, t);
                    bool nonzero = false;
                    for (Scalar c : comp)
                        if (c != 0) { nonzero = true; break; }
                    if (nonzero) out.push_back({u, v, s - t, comp});
                }
            }
        return out;
    }

    bool has_corrections() const { return !corrections().empty(); }

private:
    Vec& slot(std::size_t u, std::size_t v) { return star_[u * base_.total_dim() + v]; }
    const Vec& slot(std::size_t u, std::size_t v) const { return star_[u * base_.total_dim() + v]; }
    const Vec& unit_cache(std::size_t v) const {
        if (units_.empty()) {
            units_.resize(base_.total_dim());
            for (std::size_t i = 0; i < base_.total_dim(); ++i) units_[i] = base_.basis_vector(i);
        }
        return units_[v];
    }

    GradedAlgebra base_;
    std::vector<Vec> star_;
    mutable std::vector<Vec> units_;
};

// Dropping all corrections must reproduce the base multiplication table;
// recomputed here rather than assumed.
inline GradedAlgebra associated_graded(const FilteredDeformation& d) {
    const GradedAlgebra& base = d.base();
    std::vector<std::vector<std::string>> labels(base.formal_dim() + 1);
    for (int deg = 0; deg <= base.formal_dim(); ++deg)
        for (std::size_t i = 0; i < base.dim(deg); ++i)
            labels[deg].push_back(base.label(base.global_index(deg, i)));
    GradedAlgebra out(base.field(), base.formal_dim(), std::move(labels));
    for (std::size_t u = 1; u < base.total_dim(); ++u)
        for (std::size_t v = 1; v < base.total_dim(); ++v) {
            int top_degree = base.degree_of(u) + base.degree_of(v);
            Vec graded(base.total_dim(), 0);
            if (top_degree <= base.formal_dim()) {
                const Vec& s = d.star(u, v);
                for (std::size_t i = 0; i < base.dim(top_degree); ++i) {
                    std::size_t g = base.global_index(top_degree, i);
                    graded[g] = s[g];
                }
            }
            out.set_product(u, v, std::move(graded));
        }
    if (base.shape()) out.set_shape(*base.shape());
    return out;
}

namespace detail {

// graded automorphisms of a form-built algebra as full basis matrices:
// T on the generating degree, inverse transpose on the dual degree,
// identity elsewhere (epsilon = 1 over F2)
inline std::vector<Mat> graded_automorphisms(const GradedAlgebra& a) {
    if (!a.shape())
        throw std::invalid_argument("triviality classification needs a form-built base algebra");
    const auto& shape = *a.shape();
    if (shape.kind == GradedAlgebra::Shape::Kind::SixManifold && shape.b3_half != 0)
        throw std::invalid_argument("triviality classification does not cover nonzero middle-degree blocks");
    int gen_degree = shape.kind == GradedAlgebra::Shape::Kind::ThreeManifold ? 1 : 2;
    int dual_degree = a.formal_dim() - gen_degree;
    const Field f2 = Field::f2();
    std::vector<Mat> out;
    for (const FormAutomorphism& fa : enumerate_form_automorphisms(shape.form)) {
        Mat h = Mat::identity(a.total_dim());
        Mat dual = linalg::inverse(f2, fa.t)->transposed();
        for (std::size_t i = 0; i < a.dim(gen_degree); ++i)
            for (std::size_t j = 0; j < a.dim(gen_degree); ++j) {
                h(a.global_index(gen_degree, i), a.global_index(gen_degree, j)) = fa.t(i, j);
                h(a.global_index(dual_degree, i), a.global_index(dual_degree, j)) = dual(i, j);
            }
        out.push_back(std::move(h));
    }
    return out;
}

inline void check_budget(const GradedAlgebra& a, std::size_t budget) {
    if (a.total_dim() > budget)
        throw BudgetExceededError("basis dimension " + std::to_string(a.total_dim()) +
                                  " exceeds search budget " + std::to_string(budget));
}

} // namespace detail

// True when some filtered isomorphism (graded automorphism composed with a
// unipotent lower-triangular part) carries the deformed product to the
// undeformed one. Exhaustive over both factors; exponential in the basis
// dimension, hence the budget.
inline bool is_trivial_deformation(const FilteredDeformation& d, std::size_t budget = 8) {
    const GradedAlgebra& a = d.base();
    detail::check_budget(a, budget);
    if (!d.has_corrections()) return true;
    const Field f2 = Field::f2();
    std::size_t n = a.total_dim();

    // lower-degree perturbation slots: (basis element u, lower basis element w)
    std::vector<std::pair<std::size_t, std::size_t>> nslots;
    for (std::size_t u = 1; u < n; ++u)
        for (std::size_t w = 0; w < n; ++w)
            if (a.degree_of(w) < a.degree_of(u)) nslots.push_back({u, w});
    if (nslots.size() > 24)
        throw BudgetExceededError("unipotent search space too large");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t u = 1; u < n; ++u)
        for (std::size_t v = u; v < n; ++v) pairs.push_back({u, v});

    for (const Mat& h : detail::graded_automorphisms(a)) {
        for (std::uint64_t code = 0; code < (1ULL << nslots.size()); ++code) {
            // g = h o (I + N)
            Mat g = Mat::identity(n);
            for (std::size_t s = 0; s < nslots.size(); ++s)
                if ((code >> s) & 1) g(nslots[s].second, nslots[s].first) = 1;
            g = h.mul(f2, g);
            bool ok = true;
            for (const auto& [u, v] : pairs) {
                Vec lhs = g.apply(f2, d.star(u, v));
                Vec rhs = a.multiply(g.apply(f2, a.basis_vector(u)), g.apply(f2, a.basis_vector(v)));
                for (std::size_t i = 0; i < n; ++i)
                    if (f2.canon(lhs[i]) != f2.canon(rhs[i])) { ok = false; break; }
                if (!ok) break;
            }
            if (ok) return true;
        }
    }
    return false;
}

struct DeformationSearchResult {
    enum class Kind { ExhaustedNoneNontrivial, Witness, BudgetExceeded };
    Kind kind;
    std::optional<FilteredDeformation> witness;
    std::uint64_t nodes_visited = 0;
    std::uint64_t solutions_seen = 0; // complete associative assignments

    std::string kind_name() const {
        switch (kind) {
            case Kind::ExhaustedNoneNontrivial: return "exhausted-none-nontrivial";
            case Kind::Witness: return "witness";
            default: return "budget-exceeded";
        }
    }
};

namespace detail {

class DeformationSearch {
public:
    DeformationSearch(const GradedAlgebra& base, std::size_t budget)
        : budget_(budget), def_(base) {
        const GradedAlgebra& a = def_.base();
        // slots ordered by (weight, pair index); pair index is (u, v) ascending
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t u = 1; u < a.total_dim(); ++u)
            for (std::size_t v = u; v < a.total_dim(); ++v) pairs.push_back({u, v});
        int max_weight = 2 * a.formal_dim();
        for (int w = 1; w <= max_weight; ++w) {
            for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
                auto [u, v] = pairs[pi];
                int t = a.degree_of(u) + a.degree_of(v) - w;
                if (t < 0 || t > a.formal_dim() || a.dim(t) == 0) continue;
                slots_.push_back({u, v, w, t});
            }
        }
        for (std::size_t i = 0; i + 1 < slots_.size(); ++i)
            last_of_weight_.push_back(slots_[i].weight != slots_[i + 1].weight);
        if (!slots_.empty()) last_of_weight_.push_back(true);
    }

    DeformationSearchResult run() {
        DeformationSearchResult result{DeformationSearchResult::Kind::ExhaustedNoneNontrivial,
                                       std::nullopt, 0, 0};
        try {
            check_budget(def_.base(), budget_);
            dfs(0, result);
        } catch (const BudgetExceededError&) {
            return {DeformationSearchResult::Kind::BudgetExceeded, std::nullopt,
                    result.nodes_visited, result.solutions_seen};
        }
        return result;
    }

private:
    struct Slot {
        std::size_t u, v;
        int weight;
        int target_degree;
    };

    bool dfs(std::size_t idx, DeformationSearchResult& result) {
        const GradedAlgebra& a = def_.base();
        if (idx == slots_.size()) {
            ++result.nodes_visited;
            if (!def_.is_associative()) return false; // full independent re-check
            ++result.solutions_seen;
            if (!is_trivial_deformation(def_, budget_)) {
                result.kind = DeformationSearchResult::Kind::Witness;
                result.witness = def_;
                return true;
            }
            return false;
        }
        const Slot& s = slots_[idx];
        std::size_t dim = a.dim(s.target_degree);
        for (std::uint64_t code = 0; code < (1ULL << dim); ++code) {
            ++result.nodes_visited;
            Vec target(dim, 0);
            for (std::size_t b = 0; b < dim; ++b) target[b] = (code >> b) & 1;
            def_.set_correction(s.u, s.v, s.weight, target);
            bool viable = !last_of_weight_[idx] || associative_at_weight(s.weight);
            if (viable && dfs(idx + 1, result)) return true;
        }
        // reset slot before unwinding
        def_.set_correction(s.u, s.v, s.weight, Vec(dim, 0));
        return false;
    }

    // associator components of degree >= (total - w) depend only on
    // corrections of weight <= w, so they are final once weight w is filled
    bool associative_at_weight(int w) const {
        const GradedAlgebra& a = def_.base();
        std::size_t n = a.total_dim();
        for (std::size_t u = 1; u < n; ++u)
            for (std::size_t v = 1; v < n; ++v)
                for (std::size_t x = 1; x < n; ++x) {
                    int total = a.degree_of(u) + a.degree_of(v) + a.degree_of(x);
                    Vec lhs = def_.multiply(def_.star(u, v), a.basis_vector(x));
                    Vec rhs = def_.multiply(a.basis_vector(u), def_.star(v, x));
                    for (std::size_t i = 0; i < n; ++i) {
                        if (a.degree_of(i) < total - w) continue;
                        if (lhs[i] != rhs[i]) return false;
                    }
                }
        return true;
    }

    std::size_t budget_;
    FilteredDeformation def_;
    std::vector<Slot> slots_;
    std::vector<bool> last_of_weight_;
};

} // namespace detail

// Exhaustive backtracking over correction assignments; every complete
// associative assignment is classified, and the first nontrivial one is
// returned. Exponential in the basis dimension (the budget refuses larger
// inputs rather than silently certifying).
inline DeformationSearchResult deformation_search(const GradedAlgebra& base, std::size_t budget = 8) {
    if (!base.field().is_f2())
        throw std::invalid_argument("deformation search is implemented over F2 only");
    if (base.total_dim() > budget)
        return {DeformationSearchResult::Kind::BudgetExceeded, std::nullopt, 0, 0};
    detail::DeformationSearch search(base, budget);
    return search.run();
}

inline nlohmann::json deformation_to_json(const FilteredDeformation& d) {
    nlohmann::json corr = nlohmann::json::array();
    for (const auto& c : d.corrections()) {
        nlohmann::json target = nlohmann::json::array();
        for (Scalar x : c.target) target.push_back(x);
        corr.push_back({{"pair", {d.base().label(c.u), d.base().label(c.v)}},
                        {"weight", c.weight},
                        {"target", target}});
    }
    return {{"corrections", corr}};
}

} // namespace asymcheck
