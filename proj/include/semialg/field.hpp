#pragma once

// Exact fields: F_p, F_{p^k} (coefficient vectors mod a monic irreducible
// modulus) and the rational function field F_p(v) (reduced fractions with
// monic denominator). Elements carry a shared descriptor and compare by
// exact representation.

#include <cstdint>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semialg/fp.hpp"

namespace semialg {

enum class FieldKind { prime, extension, rational_function };

class FieldDescriptor;
using Field = std::shared_ptr<const FieldDescriptor>;

class FieldDescriptor {
  public:
    static Field prime(std::uint32_t p) {
        check_prime(p);
        return Field(new FieldDescriptor(FieldKind::prime, p, 1, FpPoly(), ""));
    }

    // F_{p^k}. If no modulus is given, the canonical one is used: the first
    // irreducible monic polynomial of degree k in base-p counter order, so
    // that serialized algebras are reproducible.
    static Field extension(std::uint32_t p, std::uint32_t k, const FpPoly* modulus = nullptr) {
        check_prime(p);
        if (k == 0) throw std::invalid_argument("extension degree must be positive");
        if (k == 1 && modulus == nullptr) return prime(p);
        FpPoly m = modulus ? *modulus : FpPoly::canonical_irreducible(p, k);
        if (m.p() != p || !m.is_monic() || m.deg() != static_cast<int>(k))
            throw std::invalid_argument("modulus must be monic of degree k over F_p");
        if (!m.is_irreducible()) throw std::invalid_argument("modulus is reducible");
        return Field(new FieldDescriptor(FieldKind::extension, p, k, std::move(m), ""));
    }

    static Field rational_function(std::uint32_t p, std::string var = "v") {
        check_prime(p);
        return Field(new FieldDescriptor(FieldKind::rational_function, p, 0, FpPoly(), std::move(var)));
    }

    FieldKind kind() const { return kind_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t k() const { return k_; }
    const FpPoly& modulus() const { return modulus_; }
    const std::string& var() const { return var_; }
    bool finite() const { return kind_ != FieldKind::rational_function; }

    // |F| for finite fields.
    std::uint64_t order() const {
        if (!finite()) throw std::domain_error("order of an infinite field");
        std::uint64_t o = 1;
        for (std::uint32_t i = 0; i < k_; ++i) o *= p_;
        return o;
    }

    bool equals(const FieldDescriptor& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_ &&
               var_ == o.var_;
    }

    std::string to_string() const {
        switch (kind_) {
            case FieldKind::prime: return "F" + std::to_string(p_);
            case FieldKind::extension: return "F" + std::to_string(order());
            default: return "F" + std::to_string(p_) + "(" + var_ + ")";
        }
    }

  private:
    FieldDescriptor(FieldKind kind, std::uint32_t p, std::uint32_t k, FpPoly modulus,
                    std::string var)
        : kind_(kind), p_(p), k_(k), modulus_(std::move(modulus)), var_(std::move(var)) {}

    static void check_prime(std::uint32_t p) {
        if (!fp::is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    }

    FieldKind kind_;
    std::uint32_t p_;
    std::uint32_t k_;   // extension degree; 1 for prime, unused for F_p(v)
    FpPoly modulus_;
    std::string var_;
};

inline bool same_field(const Field& a, const Field& b) {
    return a == b || (a && b && a->equals(*b));
}

class FieldElement {
  public:
    FieldElement() = default;

    static FieldElement zero(const Field& f) { return from_int(f, 0); }
    static FieldElement one(const Field& f) { return from_int(f, 1); }

    static FieldElement from_int(const Field& f, std::int64_t v) {
        std::int64_t m = v % static_cast<std::int64_t>(f->p());
        if (m < 0) m += f->p();
        auto u = static_cast<std::uint32_t>(m);
        if (f->kind() == FieldKind::rational_function)
            return ratfun(f, FpPoly::constant(f->p(), u), FpPoly::one(f->p()));
        FieldElement e;
        e.f_ = f;
        e.c_.assign(f->k(), 0);
        e.c_[0] = u;
        return e;
    }

    // Extension/prime element from coefficient vector (low-degree-first).
    static FieldElement from_coeffs(const Field& f, std::vector<std::uint32_t> c) {
        if (!f->finite()) throw std::invalid_argument("from_coeffs needs a finite field");
        FieldElement e;
        e.f_ = f;
        if (c.size() > f->k()) {
            FpPoly red = FpPoly(f->p(), std::move(c)).mod(modulus_of(f));
            c = red.coeffs();
        }
        c.resize(f->k(), 0);
        for (auto& x : c) x %= f->p();
        e.c_ = std::move(c);
        return e;
    }

    // Generator: x mod modulus for extensions, v for F_p(v).
    static FieldElement generator(const Field& f) {
        switch (f->kind()) {
            case FieldKind::extension: return from_coeffs(f, {0, 1});
            case FieldKind::rational_function:
                return ratfun(f, FpPoly::x(f->p()), FpPoly::one(f->p()));
            default: throw std::domain_error("prime field has no distinguished generator");
        }
    }

    static FieldElement ratfun(const Field& f, FpPoly num, FpPoly den) {
        if (f->kind() != FieldKind::rational_function)
            throw std::invalid_argument("ratfun element needs a rational function field");
        if (den.is_zero()) throw std::domain_error("zero denominator");
        FieldElement e;
        e.f_ = f;
        if (num.is_zero()) {
            e.num_ = FpPoly::zero(f->p());
            e.den_ = FpPoly::one(f->p());
            return e;
        }
        FpPoly g = FpPoly::gcd(num, den);
        if (g.deg() > 0) {
            num = num.divmod(g).first;
            den = den.divmod(g).first;
        }
        std::uint32_t dl = fp::inv(den.lead(), f->p());
        e.num_ = num.scaled(dl);
        e.den_ = den.scaled(dl);
        return e;
    }

    const Field& field() const { return f_; }

    bool is_zero() const {
        return f_->finite() ? all_zero(c_) : num_.is_zero();
    }
    bool is_one() const { return *this == one(f_); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return same_field(a.f_, b.f_) && a.c_ == b.c_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        if (a.f_->finite()) {
            FieldElement r = a;
            for (std::size_t i = 0; i < r.c_.size(); ++i)
                r.c_[i] = fp::add(r.c_[i], b.c_[i], a.f_->p());
            return r;
        }
        return ratfun(a.f_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        return a + (-b);
    }

    FieldElement operator-() const {
        if (f_->finite()) {
            FieldElement r = *this;
            for (auto& x : r.c_) x = fp::neg(x, f_->p());
            return r;
        }
        FieldElement r = *this;
        r.num_ = FpPoly::zero(f_->p()) - r.num_;
        return r;
    }

    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        if (a.f_->finite()) {
            if (a.f_->k() == 1) {
                FieldElement r = a;
                r.c_[0] = fp::mul(a.c_[0], b.c_[0], a.f_->p());
                return r;
            }
            FpPoly prod = FpPoly(a.f_->p(), a.c_) * FpPoly(a.f_->p(), b.c_);
            return from_coeffs(a.f_, prod.mod(modulus_of(a.f_)).coeffs());
        }
        return ratfun(a.f_, a.num_ * b.num_, a.den_ * b.den_);
    }

    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("division by zero in " + f_->to_string());
        if (!f_->finite()) return ratfun(f_, den_, num_);
        if (f_->k() == 1) {
            FieldElement r = *this;
            r.c_[0] = fp::inv(c_[0], f_->p());
            return r;
        }
        // extended Euclid against the modulus
        FpPoly a(f_->p(), c_), m = modulus_of(f_);
        FpPoly r0 = m, r1 = a;
        FpPoly s0 = FpPoly::zero(f_->p()), s1 = FpPoly::one(f_->p());
        while (!r1.is_zero()) {
            auto [q, r2] = r0.divmod(r1);
            FpPoly s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r0 = gcd = nonzero constant; modulus irreducible
        FpPoly invp = s0.scaled(fp::inv(r0.coeff(0), f_->p()));
        return from_coeffs(f_, invp.mod(m).coeffs());
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    FieldElement pow(std::uint64_t e) const {
        FieldElement r = one(f_);
        FieldElement base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // x^{p^m} on finite fields. m may be any integer; it acts through m mod k.
    FieldElement frobenius(std::int64_t m) const {
        if (!f_->finite())
            throw std::domain_error("frobenius is unsupported on rational function fields");
        std::int64_t k = f_->k();
        std::int64_t e = ((m % k) + k) % k;
        FieldElement r = *this;
        for (std::int64_t i = 0; i < e; ++i) r = r.pow(f_->p());
        return r;
    }

    // Formal d/dv on F_p(v); satisfies the quotient rule exactly.
    FieldElement derivative() const {
        if (f_->finite()) throw std::domain_error("derivative needs a rational function field");
        return ratfun(f_, num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    const std::vector<std::uint32_t>& coeffs() const {
        if (!f_->finite()) throw std::domain_error("coeffs: not a finite field element");
        return c_;
    }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }

    // Canonical index of a finite field element (base-p coefficient counter).
    std::uint64_t index() const {
        if (!f_->finite()) throw std::domain_error("index: not a finite field element");
        std::uint64_t idx = 0;
        for (std::size_t i = c_.size(); i-- > 0;) idx = idx * f_->p() + c_[i];
        return idx;
    }

    static FieldElement from_index(const Field& f, std::uint64_t idx) {
        if (!f->finite()) throw std::domain_error("from_index: not a finite field");
        std::vector<std::uint32_t> c(f->k());
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = static_cast<std::uint32_t>(idx % f->p());
            idx /= f->p();
        }
        return from_coeffs(f, std::move(c));
    }

    // Canonical strings: finite elements as coefficient lists low-degree-first
    // ("[0,1]" is the generator of F_4); fractions as "num/den".
    std::string to_string() const {
        if (f_->finite()) {
            std::ostringstream os;
            os << '[';
            for (std::size_t i = 0; i < c_.size(); ++i) {
                if (i) os << ',';
                os << c_[i];
            }
            os << ']';
            return os.str();
        }
        return num_.to_string() + "/" + den_.to_string();
    }

    static FieldElement parse(const Field& f, const std::string& s);

    // Uniform random element; for F_p(v) a fraction with entries of degree
    // at most `height` and nonzero denominator.
    static FieldElement random(const Field& f, std::mt19937_64& rng, std::uint32_t height = 4) {
        if (f->finite()) {
            std::uniform_int_distribution<std::uint64_t> d(0, f->order() - 1);
            return from_index(f, d(rng));
        }
        auto rand_poly = [&](bool nonzero) {
            std::uniform_int_distribution<std::uint32_t> dd(0, height);
            std::uniform_int_distribution<std::uint32_t> dc(0, f->p() - 1);
            for (;;) {
                std::uint32_t deg = dd(rng);
                std::vector<std::uint32_t> c(deg + 1);
                for (auto& x : c) x = dc(rng);
                FpPoly poly(f->p(), std::move(c));
                if (!nonzero || !poly.is_zero()) return poly;
            }
        };
        return ratfun(f, rand_poly(false), rand_poly(true));
    }

  private:
    static const FpPoly& modulus_of(const Field& f) { return f->modulus(); }

    static bool all_zero(const std::vector<std::uint32_t>& v) {
        for (auto x : v)
            if (x) return false;
        return true;
    }

    void check_same(const FieldElement& o) const {
        if (!same_field(f_, o.f_))
            throw std::invalid_argument("field mismatch: " + f_->to_string() + " vs " +
                                        o.f_->to_string());
    }

    Field f_;
    std::vector<std::uint32_t> c_;  // finite: k coefficients, reduced
    FpPoly num_, den_;              // rational function: reduced, monic denominator
};

inline FieldElement FieldElement::parse(const Field& f, const std::string& s) {
    auto parse_list = [&](const std::string& t) {
        if (t.size() < 2 || t.front() != '[' || t.back() != ']')
            throw std::invalid_argument("bad element string: " + s);
        std::vector<std::uint32_t> c;
        std::string body = t.substr(1, t.size() - 2);
        std::istringstream is(body);
        std::string item;
        while (std::getline(is, item, ','))
            c.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        return c;
    };
    if (f->finite()) return from_coeffs(f, parse_list(s));
    auto slash = s.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("bad fraction string: " + s);
    return ratfun(f, FpPoly(f->p(), parse_list(s.substr(0, slash))),
                  FpPoly(f->p(), parse_list(s.substr(slash + 1))));
}

}  // namespace semialg
