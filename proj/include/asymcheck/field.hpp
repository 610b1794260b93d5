#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace asymcheck {

using Scalar = std::int64_t;

// Coefficient domain: F2, Fp for an odd prime p, or the integers.
// Finite-field values are kept in canonical form 0..p-1; integer values are
// machine-width with overflow checks at the evaluation sites.
class Field {
public:
    enum class Tag { F2, Fp, Int };

    static Field f2() { return Field(Tag::F2, 2); }
    static Field fp(Scalar p) {
        if (p < 2 || !is_prime(p)) throw std::invalid_argument("Fp modulus must be prime");
        return p == 2 ? f2() : Field(Tag::Fp, p);
    }
    static Field integers() { return Field(Tag::Int, 0); }

    Tag tag() const { return tag_; }
    bool is_f2() const { return tag_ == Tag::F2; }
    bool is_finite() const { return tag_ != Tag::Int; }
    bool is_int() const { return tag_ == Tag::Int; }
    // characteristic; 0 for the integers
    Scalar p() const { return p_; }

    Scalar canon(Scalar v) const {
        if (!is_finite()) return v;
        Scalar r = v % p_;
        return r < 0 ? r + p_ : r;
    }

    Scalar add(Scalar a, Scalar b) const {
        if (is_finite()) return canon(a + b);
        Scalar r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
        return r;
    }
    Scalar sub(Scalar a, Scalar b) const {
        if (is_finite()) return canon(a - b);
        Scalar r;
        if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in sub");
        return r;
    }
    Scalar neg(Scalar a) const { return sub(0, a); }
    Scalar mul(Scalar a, Scalar b) const {
        if (is_finite()) return canon(canon(a) * canon(b));
        Scalar r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
        return r;
    }
    Scalar inv(Scalar a) const {
        if (!is_finite()) throw std::invalid_argument("no inverses over the integers");
        a = canon(a);
        if (a == 0) throw std::invalid_argument("division by zero");
        // extended Euclid
        Scalar t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            Scalar q = r / nr;
            Scalar tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return canon(t);
    }

    bool operator==(const Field& o) const { return tag_ == o.tag_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

    std::string name() const {
        switch (tag_) {
            case Tag::F2: return "F2";
            case Tag::Fp: return "F" + std::to_string(p_);
            default: return "Int";
        }
    }

    static bool is_prime(Scalar n) {
        if (n < 2) return false;
        for (Scalar d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    Field(Tag t, Scalar p) : tag_(t), p_(p) {}
    Tag tag_;
    Scalar p_;
};

} // namespace asymcheck
