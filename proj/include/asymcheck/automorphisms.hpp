#pragma once

#include "asymcheck/form.hpp"
#include "asymcheck/linalg.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace asymcheck {

// Invertible matrix T with mu(Tx,Ty,Tz) = epsilon * mu(x,y,z). For the
// graded algebras built from mu these are exactly the graded automorphisms:
// the pairing forces the dual-degree action to be the inverse transpose and
// the top degree scales by epsilon.
struct FormAutomorphism {
    Mat t;       // columns are images of basis vectors
    int epsilon; // +1 or -1

    Vec column(std::size_t i) const {
        Vec v(t.rows(), 0);
        for (std::size_t r = 0; r < t.rows(); ++r) v[r] = t(r, i);
        return v;
    }
};

inline bool preserves_form(const Mat& t, const TrilinearForm& mu, int epsilon) {
    const std::size_t m = static_cast<std::size_t>(mu.m());
    if (t.rows() != m || t.cols() != m) throw std::invalid_argument("matrix size must match form dimension");
    const Field& k = mu.field();
    Scalar eps = epsilon >= 0 ? 1 : k.neg(1);
    std::vector<Vec> img(m);
    for (std::size_t i = 0; i < m; ++i) {
        img[i].assign(m, 0);
        for (std::size_t r = 0; r < m; ++r) img[i][r] = t(r, i);
    }
    for (const Triple& tr : all_triples(mu.m())) {
        Scalar lhs = mu.evaluate(img[tr[0] - 1], img[tr[1] - 1], img[tr[2] - 1]);
        Scalar rhs = k.mul(eps, mu.at(tr[0], tr[1], tr[2]));
        if (k.is_finite() ? k.canon(lhs) != k.canon(rhs) : lhs != rhs) return false;
    }
    return true;
}

namespace detail {

// Candidate images are enumerated by ascending code; coordinate i is digit
// i-1 base p, so the search result is independent of everything but the form.
inline Vec vec_from_code(std::uint64_t code, int m, Scalar p) {
    Vec v(m, 0);
    for (int i = 0; i < m; ++i) {
        v[i] = static_cast<Scalar>(code % p);
        code /= p;
    }
    return v;
}

inline bool is_identity(const Mat& t) {
    for (std::size_t r = 0; r < t.rows(); ++r)
        for (std::size_t c = 0; c < t.cols(); ++c)
            if (t(r, c) != static_cast<Scalar>(r == c ? 1 : 0)) return false;
    return true;
}

inline Mat mat_from_columns(const std::vector<Vec>& cols) {
    Mat t(cols.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols.size(); ++r) t(r, c) = cols[c][r];
    return t;
}

inline bool power_is_identity(const Field& k, const Mat& t, Scalar q) {
    Mat acc = Mat::identity(t.rows());
    for (Scalar i = 0; i < q; ++i) acc = acc.mul(k, t);
    acc.canonicalize(k);
    return is_identity(acc);
}

// Depth-first search over images of e_1..e_m with partial-triple pruning.
// `involution` additionally checks T(T(e_i)) = e_i on every prefix whose
// image support is already assigned.
class AutomorphismSearch {
public:
    AutomorphismSearch(const TrilinearForm& mu, Scalar order, Scalar eps_scalar, bool involution)
        : mu_(mu), k_(mu.field()), m_(mu.m()), order_(order), eps_(eps_scalar), involution_(involution) {}

    std::optional<Mat> run() {
        images_.clear();
        std::optional<Mat> found;
        dfs(found);
        return found;
    }

private:
    bool dfs(std::optional<Mat>& found) {
        if (static_cast<int>(images_.size()) == m_) {
            Mat t = mat_from_columns(images_);
            if (is_identity(t)) return false;
            if (!power_is_identity(k_, t, order_)) return false;
            found = t;
            return true;
        }
        std::uint64_t count = 1;
        for (int i = 0; i < m_; ++i) count *= static_cast<std::uint64_t>(k_.p());
        for (std::uint64_t code = 1; code < count; ++code) {
            Vec cand = vec_from_code(code, m_, k_.p());
            images_.push_back(cand);
            if (consistent()) {
                if (dfs(found)) return true;
            }
            images_.pop_back();
        }
        return false;
    }

    bool consistent() const {
        const int s = static_cast<int>(images_.size()); // images of e_1..e_s known
        // linear independence
        Mat stack(s, m_);
        for (int r = 0; r < s; ++r)
            for (int c = 0; c < m_; ++c) stack(r, c) = images_[r][c];
        if (linalg::rank(k_, stack) != static_cast<std::size_t>(s)) return false;
        // triples fully inside the assigned prefix
        for (int i = 1; i <= s; ++i)
            for (int j = i; j <= s; ++j) {
                Scalar lhs = mu_.evaluate(images_[i - 1], images_[j - 1], images_[s - 1]);
                Scalar rhs = k_.mul(eps_, mu_.at(i, j, s));
                if (k_.canon(lhs) != k_.canon(rhs)) return false;
            }
        if (involution_) {
            for (int i = 0; i < s; ++i) {
                bool support_known = true;
                for (int l = s; l < m_; ++l)
                    if (k_.canon(images_[i][l]) != 0) { support_known = false; break; }
                if (!support_known) continue;
                Vec twice(m_, 0);
                for (int l = 0; l < s; ++l) {
                    Scalar c = images_[i][l];
                    if (k_.canon(c) == 0) continue;
                    for (int r = 0; r < m_; ++r)
                        twice[r] = k_.add(twice[r], k_.mul(c, images_[l][r]));
                }
                for (int r = 0; r < m_; ++r)
                    if (k_.canon(twice[r]) != static_cast<Scalar>(r == i ? 1 : 0)) return false;
            }
        }
        return true;
    }

    const TrilinearForm& mu_;
    const Field& k_;
    int m_;
    Scalar order_;
    Scalar eps_;
    bool involution_;
    std::vector<Vec> images_;
};

} // namespace detail

// First nonidentity T with T^2 = I preserving the form, in candidate-code
// order; std::nullopt when none exists.
inline std::optional<FormAutomorphism> find_involution(const TrilinearForm& mu) {
    if (!mu.field().is_f2()) throw std::invalid_argument("find_involution requires an F2 form");
    detail::AutomorphismSearch search(mu, 2, 1, true);
    auto t = search.run();
    if (!t) return std::nullopt;
    return FormAutomorphism{*t, 1};
}

// Nonidentity T over Fp with T^q = I and mu o T = epsilon * mu. Only prime
// orders are accepted: any nontrivial finite group contains an element of
// prime order, so existence questions reduce to prime q.
inline std::optional<FormAutomorphism> find_order_q_automorphism(const TrilinearForm& mu, Scalar q,
                                                                 int epsilon = 1) {
    if (!mu.field().is_finite())
        throw std::invalid_argument("automorphism search requires a finite field; reduce integral forms first");
    if (!Field::is_prime(q)) throw std::invalid_argument("automorphism order must be prime");
    const Field& k = mu.field();
    Scalar eps_scalar = epsilon >= 0 ? 1 : k.neg(1);
    detail::AutomorphismSearch search(mu, q, eps_scalar, false);
    auto t = search.run();
    if (!t) return std::nullopt;
    return FormAutomorphism{*t, epsilon >= 0 ? 1 : -1};
}

// Complete scan of GL(m, F2) for m <= 4; the oracle for the searches above.
inline std::vector<FormAutomorphism> enumerate_form_automorphisms(const TrilinearForm& mu) {
    if (!mu.field().is_f2()) throw std::invalid_argument("enumeration requires an F2 form");
    const int m = mu.m();
    if (m > 4) throw std::invalid_argument("exhaustive enumeration supports m <= 4");
    const Field f2 = Field::f2();
    std::vector<FormAutomorphism> out;
    std::uint64_t per_col = 1ULL << m;
    std::vector<std::uint64_t> cols(m, 0);
    // odometer over column codes, first column fastest-moving is the LAST
    // index so iteration order matches the image-tuple order of the search
    std::vector<Vec> images(m);
    std::uint64_t total = 1;
    for (int i = 0; i < m; ++i) total *= per_col;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rest = code;
        bool nonzero_cols = true;
        for (int i = m - 1; i >= 0; --i) {
            cols[i] = rest % per_col;
            rest /= per_col;
            if (cols[i] == 0) { nonzero_cols = false; break; }
        }
        if (!nonzero_cols) continue;
        for (int i = 0; i < m; ++i) images[i] = detail::vec_from_code(cols[i], m, 2);
        Mat t = detail::mat_from_columns(images);
        if (linalg::rank(f2, t) != static_cast<std::size_t>(m)) continue;
        if (preserves_form(t, mu, 1)) out.push_back(FormAutomorphism{t, 1});
    }
    return out;
}

inline Scalar matrix_order(const Field& k, const Mat& t, Scalar cap = 64) {
    Mat acc = t;
    for (Scalar n = 1; n <= cap; ++n) {
        Mat c = acc;
        c.canonicalize(k);
        if (detail::is_identity(c)) return n;
        acc = acc.mul(k, t);
    }
    return 0;
}

inline nlohmann::json automorphism_to_json(const FormAutomorphism& a, const Field& k) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < a.t.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < a.t.cols(); ++c) row.push_back(a.t(r, c));
        rows.push_back(row);
    }
    return {{"matrix", rows}, {"epsilon", a.epsilon}, {"order", matrix_order(k, a.t)}};
}

} // namespace asymcheck
