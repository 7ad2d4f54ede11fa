#pragma once

// Arithmetic in the prime field F_p and dense univariate polynomials over it.
// Everything here is exact; p is a runtime parameter (small, desk scale).

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semialg/common.hpp"

namespace semialg {
namespace fp {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
    std::uint32_t r = 1 % p;
    std::uint32_t base = a % p;
    while (e) {
        if (e & 1) r = mul(r, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return r;
}

inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw std::domain_error("fp::inv: division by zero");
    return pow(a, p - 2, p);  // Fermat; p is prime
}

}  // namespace fp

// Dense polynomial over F_p, coefficients low-degree-first, no trailing zeros.
// The zero polynomial has an empty coefficient vector and degree -1.
class FpPoly {
  public:
    FpPoly() : p_(0) {}
    explicit FpPoly(std::uint32_t p) : p_(p) {}
    FpPoly(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static FpPoly zero(std::uint32_t p) { return FpPoly(p); }
    static FpPoly constant(std::uint32_t p, std::uint32_t a) { return FpPoly(p, {a}); }
    static FpPoly one(std::uint32_t p) { return constant(p, 1); }
    static FpPoly x(std::uint32_t p) { return FpPoly(p, {0, 1}); }

    std::uint32_t p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    std::uint32_t lead() const {
        if (is_zero()) throw std::domain_error("FpPoly::lead of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FpPoly& a, const FpPoly& b) { return !(a == b); }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        FpPoly r(a.p_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = fp::add(a.coeff(i), b.coeff(i), a.p_);
        r.trim();
        return r;
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        FpPoly r(a.p_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = fp::sub(a.coeff(i), b.coeff(i), a.p_);
        r.trim();
        return r;
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
        FpPoly r(a.p_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = fp::add(r.c_[i + j], fp::mul(a.c_[i], b.c_[j], a.p_), a.p_);
        }
        r.trim();
        return r;
    }

    FpPoly scaled(std::uint32_t s) const {
        FpPoly r(p_);
        r.c_.reserve(c_.size());
        for (auto x : c_) r.c_.push_back(fp::mul(x, s, p_));
        r.trim();
        return r;
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        return scaled(fp::inv(lead(), p_));
    }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const {
        if (d.is_zero()) throw std::domain_error("FpPoly::divmod: division by zero polynomial");
        FpPoly q(p_), r(*this);
        std::uint32_t dl = fp::inv(d.lead(), p_);
        while (!r.is_zero() && r.deg() >= d.deg()) {
            std::size_t shift = static_cast<std::size_t>(r.deg() - d.deg());
            std::uint32_t coef = fp::mul(r.lead(), dl, p_);
            if (q.c_.size() < shift + 1) q.c_.resize(shift + 1, 0);
            q.c_[shift] = fp::add(q.c_[shift], coef, p_);
            for (std::size_t i = 0; i < d.c_.size(); ++i) {
                std::size_t k = shift + i;
                r.c_[k] = fp::sub(r.c_[k], fp::mul(coef, d.c_[i], p_), p_);
            }
            r.trim();
        }
        q.trim();
        return {q, r};
    }

    FpPoly mod(const FpPoly& d) const { return divmod(d).second; }

    static FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = a.mod(b);
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    // Formal derivative d/dx.
    FpPoly derivative() const {
        FpPoly r(p_);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_.push_back(fp::mul(c_[i], static_cast<std::uint32_t>(i % p_), p_));
        r.trim();
        return r;
    }

    static FpPoly pow_mod(FpPoly base, std::uint64_t e, const FpPoly& m) {
        FpPoly r = FpPoly::one(base.p());
        base = base.mod(m);
        while (e) {
            if (e & 1) r = (r * base).mod(m);
            base = (base * base).mod(m);
            e >>= 1;
        }
        return r;
    }

    // Rabin test: monic f of degree d is irreducible over F_p iff
    // x^{p^d} = x (mod f) and gcd(x^{p^{d/r}} - x, f) = 1 for each prime r | d.
    bool is_irreducible() const {
        if (deg() < 1) return false;
        FpPoly f = monic();
        int d = f.deg();
        if (d == 1) return true;
        FpPoly xp = FpPoly::x(p_);
        auto frob_iter = [&](int times) {
            FpPoly t = xp;
            for (int i = 0; i < times; ++i) t = pow_mod(t, p_, f);
            return t;
        };
        std::vector<int> prime_divs;
        int m = d;
        for (int r = 2; r * r <= m; ++r)
            if (m % r == 0) {
                prime_divs.push_back(r);
                while (m % r == 0) m /= r;
            }
        if (m > 1) prime_divs.push_back(m);
        for (int r : prime_divs) {
            FpPoly t = frob_iter(d / r) - xp;
            if (!FpPoly::gcd(t, f).is_one()) return false;
        }
        return frob_iter(d) == xp.mod(f);
    }

    // Monic degree-k polynomials enumerated by the base-p counter over the
    // lower coefficients; used for the canonical modulus choice.
    static FpPoly monic_from_index(std::uint32_t p, std::size_t k, std::uint64_t idx) {
        std::vector<std::uint32_t> c(k + 1, 0);
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = static_cast<std::uint32_t>(idx % p);
            idx /= p;
        }
        c[k] = 1;
        return FpPoly(p, std::move(c));
    }

    // First irreducible monic polynomial of degree k in counter order.
    static FpPoly canonical_irreducible(std::uint32_t p, std::size_t k) {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= p;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            FpPoly f = monic_from_index(p, k, idx);
            if (f.is_irreducible()) return f;
        }
        throw std::logic_error("canonical_irreducible: none found");  // unreachable for prime p
    }

    std::string to_string() const {
        std::ostringstream os;
        os << '[';
        if (c_.empty()) {
            os << '0';
        } else {
            for (std::size_t i = 0; i < c_.size(); ++i) {
                if (i) os << ',';
                os << c_[i];
            }
        }
        os << ']';
        return os.str();
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> c_;
};

}  // namespace semialg
