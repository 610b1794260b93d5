#pragma once

#include "asymcheck/field.hpp"
#include "asymcheck/form.hpp"
#include "asymcheck/linalg.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace asymcheck {

// Finite-dimensional graded-commutative unital algebra with a distinguished
// one-dimensional top degree, given by per-degree bases and structure
// constants. Elements are dense coefficient vectors over the global basis.
class GradedAlgebra {
public:
    struct Shape {
        enum class Kind { ThreeManifold, SixManifold };
        Kind kind;
        TrilinearForm form;
        int b3_half = 0; // hyperbolic middle-degree rank, six-manifold only
    };

    GradedAlgebra(Field field, int formal_dim, std::vector<std::vector<std::string>> labels)
        : field_(field), formal_dim_(formal_dim), labels_(std::move(labels)) {
        if (static_cast<int>(labels_.size()) != formal_dim_ + 1)
            throw std::invalid_argument("labels must cover degrees 0..n");
        offsets_.resize(labels_.size() + 1, 0);
        for (std::size_t d = 0; d < labels_.size(); ++d) {
            offsets_[d + 1] = offsets_[d] + labels_[d].size();
            for (std::size_t i = 0; i < labels_[d].size(); ++i)
                degree_of_.push_back(static_cast<int>(d));
        }
        if (labels_[0].size() != 1 || labels_[formal_dim_].size() != 1)
            throw std::invalid_argument("degrees 0 and n must be one-dimensional");
        std::size_t n = total_dim();
        mult_.assign(n * n, Vec(n, 0));
        // unit row/column
        for (std::size_t u = 0; u < n; ++u) {
            mult_[u][u] = 1;            // 1 * e_u
            mult_[u * n][u] = 1;        // e_u * 1
        }
    }

    const Field& field() const { return field_; }
    int formal_dim() const { return formal_dim_; }
    std::size_t total_dim() const { return degree_of_.size(); }
    std::size_t dim(int degree) const {
        if (degree < 0 || degree > formal_dim_) return 0;
        return labels_[degree].size();
    }
    int degree_of(std::size_t global) const { return degree_of_[global]; }
    std::size_t offset(int degree) const { return offsets_[degree]; }
    std::size_t global_index(int degree, std::size_t i) const { return offsets_[degree] + i; }
    std::size_t top_index() const { return offsets_[formal_dim_]; }
    const std::string& label(std::size_t global) const {
        int d = degree_of_[global];
        return labels_[d][global - offsets_[d]];
    }

    void set_product(std::size_t u, std::size_t v, Vec value) {
        mult_[u * total_dim() + v] = std::move(value);
    }
    const Vec& basis_product(std::size_t u, std::size_t v) const {
        return mult_[u * total_dim() + v];
    }

    Vec multiply(const Vec& x, const Vec& y) const {
        std::size_t n = total_dim();
        Vec out(n, 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (x[u] == 0) continue;
            for (std::size_t v = 0; v < n; ++v) {
                if (y[v] == 0) continue;
                Scalar c = field_.mul(x[u], y[v]);
                const Vec& uv = basis_product(u, v);
                for (std::size_t w = 0; w < n; ++w)
                    if (uv[w] != 0) out[w] = field_.add(out[w], field_.mul(c, uv[w]));
            }
        }
        return out;
    }

    Vec basis_vector(std::size_t global) const {
        Vec v(total_dim(), 0);
        v[global] = 1;
        return v;
    }

    // coefficient vector of the degree-d component
    Vec component(const Vec& x, int d) const {
        Vec out(dim(d), 0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[offsets_[d] + i];
        return out;
    }

    const std::optional<Shape>& shape() const { return shape_; }
    void set_shape(Shape s) { shape_ = std::move(s); }

private:
    Field field_;
    int formal_dim_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::size_t> offsets_;
    std::vector<int> degree_of_;
    std::vector<Vec> mult_;
    std::optional<Shape> shape_;
};

namespace detail {

inline std::vector<std::string> numbered(const std::string& stem, int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

} // namespace detail

// Degrees 0..3 with dim(A^1) = dim(A^2) = m. Products of degree-1 basis
// vectors hit the dual degree-2 basis through the form; A^1 x A^2 is the
// evaluation pairing. Over odd characteristic degree-1 squares must vanish,
// so the form may only touch triples of distinct indices and enters with
// alternating signs.
inline GradedAlgebra three_manifold_algebra(const TrilinearForm& mu) {
    const Field& k = mu.field();
    if (!k.is_finite()) throw std::invalid_argument("three_manifold_algebra requires a finite field");
    const int m = mu.m();
    const bool odd_p = k.p() != 2;
    if (odd_p) {
        for (const auto& [t, v] : mu.entries())
            if ((t[0] == t[1] || t[1] == t[2]) && v != 0)
                throw std::invalid_argument(
                    "over odd characteristic, degree-1 squares vanish: entries with a repeated index must be zero");
    }
    GradedAlgebra a(k, 3, {{"1"}, detail::numbered("a", m), detail::numbered("b", m), {"top"}});
    auto deg1 = [&](int i) { return a.global_index(1, i - 1); };
    auto deg2 = [&](int i) { return a.global_index(2, i - 1); };
    std::size_t top = a.top_index();
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            Vec prod(a.total_dim(), 0);
            for (int l = 1; l <= m; ++l) {
                Scalar c = mu.at(i, j, l);
                if (odd_p) {
                    // alternating extension: sign of the permutation sorting (i,j,l)
                    if (i == j || j == l || i == l) {
                        c = 0;
                    } else {
                        int inversions = (i > j) + (i > l) + (j > l);
                        if (inversions % 2 != 0) c = k.neg(c);
                    }
                }
                prod[deg2(l)] = c;
            }
            a.set_product(deg1(i), deg1(j), std::move(prod));
        }
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            Vec pair(a.total_dim(), 0);
            if (i == j) pair[top] = 1;
            a.set_product(deg1(i), deg2(j), pair);
            a.set_product(deg2(j), deg1(i), pair);
        }
    a.set_shape({GradedAlgebra::Shape::Kind::ThreeManifold, mu, 0});
    return a;
}

// Degrees 0,2,4,6 with dim(A^2) = dim(A^4) = m; b3_half > 0 adds a
// 2s-dimensional degree-3 block with hyperbolic self-pairing and zero
// products against A^2 and A^4 (the connected-sum splitting).
inline GradedAlgebra six_manifold_algebra(const TrilinearForm& mu, int b3_half = 0) {
    const Field& k = mu.field();
    const int m = mu.m();
    const int s = b3_half;
    if (s < 0) throw std::invalid_argument("b3_half must be >= 0");
    std::vector<std::vector<std::string>> labels(7);
    labels[0] = {"1"};
    labels[2] = detail::numbered("a", m);
    if (s > 0) {
        labels[3] = detail::numbered("b", s);
        for (auto& l : detail::numbered("B", s)) labels[3].push_back(l);
    }
    labels[4] = detail::numbered("c", m);
    labels[6] = {"top"};
    GradedAlgebra a(k, 6, std::move(labels));
    auto deg2 = [&](int i) { return a.global_index(2, i - 1); };
    auto deg4 = [&](int i) { return a.global_index(4, i - 1); };
    std::size_t top = a.top_index();
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            Vec prod(a.total_dim(), 0);
            for (int l = 1; l <= m; ++l) prod[deg4(l)] = mu.at(i, j, l);
            a.set_product(deg2(i), deg2(j), std::move(prod));
        }
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j) {
            Vec pair(a.total_dim(), 0);
            if (i == j) pair[top] = 1;
            a.set_product(deg2(i), deg4(j), pair);
            a.set_product(deg4(j), deg2(i), pair);
        }
    for (int i = 0; i < s; ++i) {
        std::size_t b = a.global_index(3, i);
        std::size_t bbar = a.global_index(3, s + i);
        Vec d(a.total_dim(), 0);
        d[top] = 1;
        a.set_product(b, bbar, d);
        Vec dneg(a.total_dim(), 0);
        dneg[top] = k.neg(1);
        a.set_product(bbar, b, dneg);
    }
    a.set_shape({GradedAlgebra::Shape::Kind::SixManifold, mu, s});
    return a;
}

// --- structural predicates --------------------------------------------------

struct StructureReport {
    bool unital = true;
    bool associative = true;
    bool graded_commutative = true;
    bool poincare_duality = true;
    std::string detail;

    bool all_pass() const { return unital && associative && graded_commutative && poincare_duality; }
};

inline StructureReport check_structure(const GradedAlgebra& a) {
    StructureReport rep;
    const Field& k = a.field();
    std::size_t n = a.total_dim();
    for (std::size_t u = 0; u < n && rep.unital; ++u) {
        if (a.basis_product(0, u) != a.basis_vector(u) || a.basis_product(u, 0) != a.basis_vector(u)) {
            rep.unital = false;
            rep.detail += "unit fails on " + a.label(u) + "; ";
        }
    }
    for (std::size_t u = 0; u < n && rep.graded_commutative; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            Vec xy = a.basis_product(u, v);
            Vec yx = a.basis_product(v, u);
            bool flip = (a.degree_of(u) * a.degree_of(v)) % 2 != 0;
            bool ok = true;
            for (std::size_t w = 0; w < n; ++w) {
                Scalar lhs = k.canon(yx[w]);
                Scalar rhs = flip ? k.neg(xy[w]) : k.canon(xy[w]);
                if (lhs != rhs) { ok = false; break; }
            }
            if (!ok) {
                rep.graded_commutative = false;
                rep.detail += "commutativity fails at (" + a.label(u) + "," + a.label(v) + "); ";
                break;
            }
        }
    for (std::size_t u = 1; u < n && rep.associative; ++u)
        for (std::size_t v = 1; v < n && rep.associative; ++v)
            for (std::size_t w = 1; w < n; ++w) {
                Vec lhs = a.multiply(a.basis_product(u, v), a.basis_vector(w));
                Vec rhs = a.multiply(a.basis_vector(u), a.basis_product(v, w));
                bool ok = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (k.canon(lhs[i]) != k.canon(rhs[i])) { ok = false; break; }
                if (!ok) {
                    rep.associative = false;
                    rep.detail += "associativity fails at (" + a.label(u) + "," + a.label(v) + "," +
                                  a.label(w) + "); ";
                    break;
                }
            }
    std::size_t top = a.top_index();
    for (int d = 0; d <= a.formal_dim() && rep.poincare_duality; ++d) {
        std::size_t du = a.dim(d), dv = a.dim(a.formal_dim() - d);
        if (du != dv) {
            rep.poincare_duality = false;
            rep.detail += "pairing dims differ in degree " + std::to_string(d) + "; ";
            break;
        }
        if (du == 0) continue;
        Mat pairing(du, dv);
        for (std::size_t i = 0; i < du; ++i)
            for (std::size_t j = 0; j < dv; ++j)
                pairing(i, j) =
                    a.basis_product(a.global_index(d, i), a.global_index(a.formal_dim() - d, j))[top];
        bool nondeg = k.is_int() ? linalg::det_abs_int(pairing) == 1
                                 : linalg::rank(k, pairing) == du;
        if (!nondeg) {
            rep.poincare_duality = false;
            rep.detail += "degenerate pairing in degree " + std::to_string(d) + "; ";
        }
    }
    return rep;
}

// True when the unital subalgebra generated by A^d spans A^(kd) for every
// multiple kd <= n; degrees not reachable as multiples of d are exempt
// (for six-manifold types with d = 2 this is generation of the even part).
inline bool generated_by_degree(const GradedAlgebra& a, int d) {
    if (d <= 0 || d > a.formal_dim()) throw std::invalid_argument("generator degree out of range");
    const Field& k = a.field();
    std::vector<Vec> current; // spanning set of the degree-(kd) slice reached so far
    for (std::size_t i = 0; i < a.dim(d); ++i) current.push_back(a.basis_vector(a.global_index(d, i)));
    for (int deg = 2 * d; deg <= a.formal_dim(); deg += d) {
        std::vector<Vec> next;
        for (std::size_t i = 0; i < a.dim(d); ++i)
            for (const Vec& v : current)
                next.push_back(a.multiply(a.basis_vector(a.global_index(d, i)), v));
        std::size_t target = a.dim(deg);
        if (target > 0) {
            Mat span(next.size(), target);
            for (std::size_t r = 0; r < next.size(); ++r)
                for (std::size_t c = 0; c < target; ++c) span(r, c) = next[r][a.offset(deg) + c];
            if (linalg::rank(k, span) < target) return false;
        }
        current = std::move(next);
    }
    return true;
}

// Largest r such that some product of r positive-degree basis vectors is
// nonzero.
inline int cup_length(const GradedAlgebra& a) {
    const Field& k = a.field();
    std::size_t n = a.total_dim();
    auto canon = [&](Vec v) {
        for (Scalar& x : v) x = k.canon(x);
        return v;
    };
    std::set<Vec> frontier;
    for (std::size_t u = 1; u < n; ++u) frontier.insert(canon(a.basis_vector(u)));
    int length = 0;
    while (!frontier.empty() && length <= a.formal_dim()) {
        ++length;
        std::set<Vec> next;
        for (const Vec& v : frontier)
            for (std::size_t u = 1; u < n; ++u) {
                Vec prod = canon(a.multiply(a.basis_vector(u), v));
                bool nonzero = false;
                for (Scalar x : prod)
                    if (x != 0) { nonzero = true; break; }
                if (nonzero) next.insert(std::move(prod));
            }
        frontier = std::move(next);
    }
    return length;
}

// No nonzero x with mu(x,.,.) identically zero: trivial kernel of the
// stacked slice matrix, over the rationals in the integral case.
inline bool form_nondegenerate(const TrilinearForm& mu) {
    const int m = mu.m();
    std::size_t pairs = static_cast<std::size_t>(m) * (m + 1) / 2;
    Mat slices(pairs, m);
    std::size_t row = 0;
    for (int j = 1; j <= m; ++j)
        for (int l = j; l <= m; ++l, ++row)
            for (int i = 1; i <= m; ++i) slices(row, i - 1) = mu.at(i, j, l);
    return linalg::rank(mu.field(), slices) == static_cast<std::size_t>(m);
}

// Debug dump of degrees, labels and the multiplication table. The format is
// documented in the README but not consumed by other tools.
inline nlohmann::json algebra_to_json(const GradedAlgebra& a) {
    nlohmann::json degrees = nlohmann::json::array();
    for (int d = 0; d <= a.formal_dim(); ++d) {
        if (a.dim(d) == 0) continue;
        nlohmann::json basis = nlohmann::json::array();
        for (std::size_t i = 0; i < a.dim(d); ++i) basis.push_back(a.label(a.global_index(d, i)));
        degrees.push_back({{"degree", d}, {"basis", basis}});
    }
    nlohmann::json products = nlohmann::json::array();
    for (std::size_t u = 1; u < a.total_dim(); ++u)
        for (std::size_t v = 1; v < a.total_dim(); ++v) {
            const Vec& p = a.basis_product(u, v);
            nlohmann::json terms = nlohmann::json::array();
            for (std::size_t w = 0; w < p.size(); ++w)
                if (p[w] != 0) terms.push_back({{"basis", a.label(w)}, {"coeff", p[w]}});
            if (!terms.empty())
                products.push_back({{"left", a.label(u)}, {"right", a.label(v)}, {"value", terms}});
        }
    return {{"field", field_to_json(a.field())},
            {"formal_dimension", a.formal_dim()},
            {"degrees", degrees},
            {"products", products}};
}

} // namespace asymcheck
