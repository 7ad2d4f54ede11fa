#pragma once

// Characteristic-p differential extensions over K = F_p(v) with delta = d/dv
// and constants F = F_p(v^p): the algebras (K, delta, d) as Petit algebras
// over K[t; delta], the V_p operator with its (t-b)^p identity, and the
// characteristic-3 division criterion predicates.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "semialg/construct.hpp"

namespace semialg {

class DiffField {
  public:
    explicit DiffField(std::uint32_t p)
        : p_(p),
          K_(FieldDescriptor::rational_function(p, "v")),
          F_(FieldDescriptor::rational_function(p, "v^p")) {}

    std::uint32_t p() const { return p_; }
    const Field& K() const { return K_; }
    const Field& constants() const { return F_; }

    FieldElement v() const { return FieldElement::generator(K_); }
    FieldElement delta(const FieldElement& x) const { return x.derivative(); }

    bool is_constant(const FieldElement& x) const { return delta(x).is_zero(); }

    // Substitute u := v^p, turning an element of F = F_p(u) into an element
    // of K lying in the constants subfield.
    FieldElement lift_constant(const FieldElement& a) const {
        return FieldElement::ratfun(K_, stretch(a.num()), stretch(a.den()));
    }

    // Rewrite x in K as sum_{i < p} x_i(v^p) v^i; returns (x_0, ..., x_{p-1})
    // as elements of F = F_p(u). Uses 1/D = D^{p-1} / D(v)^p with
    // D(v)^p = D-hat(v^p) in characteristic p.
    std::vector<FieldElement> to_coords(const FieldElement& x) const {
        FpPoly numer = x.num() * pow_poly(x.den(), p_ - 1);
        FpPoly dhat = compress(pow_poly(x.den(), p_));
        std::vector<FieldElement> out;
        out.reserve(p_);
        for (std::uint32_t i = 0; i < p_; ++i) {
            std::vector<std::uint32_t> ci;
            for (std::size_t j = i; j <= static_cast<std::size_t>(std::max(numer.deg(), 0));
                 j += p_)
                ci.push_back(numer.coeff(j));
            out.push_back(FieldElement::ratfun(F_, FpPoly(p_, std::move(ci)), dhat));
        }
        return out;
    }

    FieldElement from_coords(const std::vector<FieldElement>& coords) const {
        FieldElement acc = FieldElement::zero(K_);
        FieldElement vv = v();
        for (std::uint32_t i = 0; i < p_; ++i)
            acc = acc + lift_constant(coords[i]) * vv.pow(i);
        return acc;
    }

    // K as a p-dimensional algebra over F with basis {1, v, ..., v^{p-1}}.
    AlgebraSC K_algebra() const {
        FieldElement u = FieldElement::generator(F_);
        std::size_t n = p_;
        std::vector<FieldElement> sc(n * n * n, FieldElement::zero(F_));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t s = i + j;
                if (s < n)
                    sc[(i * n + j) * n + s] = FieldElement::one(F_);
                else
                    sc[(i * n + j) * n + (s - n)] = u;
            }
        std::vector<FieldElement> unit(n, FieldElement::zero(F_));
        unit[0] = FieldElement::one(F_);
        return AlgebraSC(F_, n, std::move(sc), std::move(unit),
                         "F" + std::to_string(p_) + "(v)");
    }

    MatrixF delta_matrix() const {
        MatrixF d(F_, p_, p_);
        for (std::uint32_t i = 1; i < p_; ++i)
            d.at(i - 1, i) = FieldElement::from_int(F_, static_cast<std::int64_t>(i));
        return d;
    }

    CoefficientRing::Ptr ring() const {
        return CoefficientRing::make_delta(K_algebra(), delta_matrix());
    }

    // V_p(b) = b^p + delta^{p-1}(b); the commutator terms vanish over the
    // commutative K.
    FieldElement vp(const FieldElement& b) const {
        FieldElement dtail = b;
        for (std::uint32_t i = 0; i + 1 < p_; ++i) dtail = delta(dtail);
        return b.pow(p_) + dtail;
    }

    // (t - b)^p = t^p - V_p(b), expanded exactly in K[t; delta].
    bool verify_vp_identity(const FieldElement& b, std::uint32_t height_cap = 64) const {
        if (b.num().deg() > static_cast<int>(height_cap) ||
            b.den().deg() > static_cast<int>(height_cap))
            throw cap_exceeded("verify_vp_identity height", height_cap,
                               static_cast<std::uint64_t>(
                                   std::max(b.num().deg(), b.den().deg())));
        auto r = ring();
        auto bc = to_coords(b);
        SkewPolynomial tb = SkewPolynomial::t(r) - SkewPolynomial::constant(r, bc);
        SkewPolynomial lhs = SkewPolynomial::one(r);
        for (std::uint32_t i = 0; i < p_; ++i) lhs = lhs * tb;
        SkewPolynomial rhs = SkewPolynomial::monomial(r, r->one(), p_) -
                             SkewPolynomial::constant(r, to_coords(vp(b)));
        return lhs == rhs;
    }

  private:
    // a(u) with u := v^p: spread exponents by p
    FpPoly stretch(const FpPoly& a) const {
        std::vector<std::uint32_t> c(static_cast<std::size_t>(std::max(a.deg(), 0)) * p_ + 1, 0);
        for (int i = 0; i <= a.deg(); ++i) c[static_cast<std::size_t>(i) * p_] = a.coeff(i);
        return FpPoly(p_, std::move(c));
    }

    // inverse of stretch on polynomials supported on multiples of p
    FpPoly compress(const FpPoly& a) const {
        std::vector<std::uint32_t> c;
        for (int i = 0; i <= a.deg(); i += p_) c.push_back(a.coeff(static_cast<std::size_t>(i)));
        for (int i = 0; i <= a.deg(); ++i)
            if (i % p_ && a.coeff(static_cast<std::size_t>(i)))
                throw std::logic_error("compress: polynomial is not in v^p");
        return FpPoly(p_, std::move(c));
    }

    static FpPoly pow_poly(FpPoly base, std::uint32_t e) {
        FpPoly r = FpPoly::one(base.p());
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    std::uint32_t p_;
    Field K_;
    Field F_;
};

struct DiffExtension {
    DiffField field;
    FieldElement ct;  // g = t^p - ct * t with ct in F (exponent-one case)
    FieldElement d;   // in K
    PetitAlgebra petit;
};

// (K, delta, d) = K[t;delta] / K[t;delta](g - d) with g = t^p - ct*t;
// dimension p^2 over F. Any ct in F gives a well-defined Petit algebra, but
// the structure theory (semi-invariance of g, associativity iff d in F)
// requires g to be the minimum p-polynomial of delta; for delta = d/dv on
// F_p(v) that forces ct = 0, i.e. g = t^p.
inline DiffExtension diff_extension(const DiffField& df, const FieldElement& ct,
                                    const FieldElement& d) {
    if (!same_field(ct.field(), df.constants()))
        throw std::invalid_argument("diff_extension: g coefficient must lie in the constants");
    if (!same_field(d.field(), df.K()))
        throw std::invalid_argument("diff_extension: d must lie in K");
    auto ring = df.ring();
    auto ct_in_s = ring->zero();
    // ct * 1 as an element of the coefficient algebra
    {
        auto u = ring->one();
        for (std::size_t e = 0; e < u.size(); ++e) ct_in_s[e] = ct * u[e];
    }
    SkewPolynomial f = SkewPolynomial::monomial(ring, ring->one(), df.p()) -
                       SkewPolynomial::monomial(ring, ct_in_s, 1) -
                       SkewPolynomial::constant(ring, df.to_coords(d));
    PetitAlgebra p = petit_algebra(ring, std::move(f), "(K,delta,d)");
    return DiffExtension{df, ct, d, std::move(p)};
}

struct SemiInvarianceReport {
    std::size_t checked = 0;
    bool all_ok = true;
};

// Verifies (g - d) a = a (g - d) in K[t;delta] for a in {v, v^2} plus seeded
// random samples.
inline SemiInvarianceReport semi_invariance_check(const DiffExtension& ext, std::size_t samples,
                                                  std::uint64_t seed) {
    const DiffField& df = ext.field;
    auto ring = ext.petit.ring;
    std::vector<FieldElement> test_elems = {df.v(), df.v() * df.v()};
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i)
        test_elems.push_back(FieldElement::random(df.K(), rng, 3));
    SemiInvarianceReport rep;
    for (const auto& a : test_elems) {
        auto ac = df.to_coords(a);
        SkewPolynomial ca = SkewPolynomial::constant(ring, ac);
        if (!(ext.petit.f * ca == ca * ext.petit.f)) rep.all_ok = false;
        ++rep.checked;
    }
    return rep;
}

struct Char3Report {
    bool cond1 = false;  // V_3(z) - c z != d
    bool cond2 = false;  // V_3(z) - z c - d + delta(c) != 0
};

// Predicate evaluator for the characteristic-3 division criterion at a given
// z. This is not a decision procedure: K is infinite.
inline Char3Report char3_criterion_eval(const DiffField& df, const FieldElement& z,
                                        const FieldElement& c_in_f, const FieldElement& d) {
    if (df.p() != 3) throw std::invalid_argument("char3_criterion_eval needs p = 3");
    FieldElement c = same_field(c_in_f.field(), df.K()) ? c_in_f : df.lift_constant(c_in_f);
    Char3Report rep;
    FieldElement v3 = df.vp(z);
    rep.cond1 = !(v3 - c * z - d).is_zero();
    rep.cond2 = !(v3 - z * c - d + df.delta(c)).is_zero();
    return rep;
}

// Bounded-height falsification search for cond1; returns the first sampled z
// with V_3(z) - c z = d, if any.
inline std::optional<FieldElement> char3_falsify(const DiffField& df, const FieldElement& c_in_f,
                                                 const FieldElement& d, std::size_t samples,
                                                 std::uint32_t height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        FieldElement z = FieldElement::random(df.K(), rng, height);
        if (!char3_criterion_eval(df, z, c_in_f, d).cond1) return z;
    }
    return std::nullopt;
}

}  // namespace semialg
