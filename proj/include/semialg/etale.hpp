#pragma once

// Etale F-algebras with a distinguished cyclic automorphism: cyclic field
// extensions F_{q^n}/F_q with the q-power Frobenius, and split algebras F^n
// with the coordinate shift. The algebra is materialized as structure
// constants over F together with the matrix of sigma, so norms, traces,
// fixed subalgebras and stabilizers reduce to exact linear algebra.

#include <cstdint>
#include <string>
#include <vector>

#include "semialg/algebra.hpp"

namespace semialg {

struct StabilizerData {
    std::size_t s = 0;   // minimal s > 0 with sigma^s(d) = d
    std::size_t r = 0;   // n = s*r
    Subalgebra fixed;    // E = Fix(sigma^s)
};

class GaloisCnAlgebra {
  public:
    // K = F_{q^n} with sigma: x -> x^q of exact order n.
    static GaloisCnAlgebra cyclic_ext(const Field& F, std::size_t n) {
        if (!F->finite()) throw std::invalid_argument("cyclic_ext needs a finite base field");
        if (n == 0) throw std::invalid_argument("degree must be positive");
        GaloisCnAlgebra g;
        g.F_ = F;
        g.n_ = n;
        std::uint32_t p = F->p(), a = F->k();
        Field K = FieldDescriptor::extension(p, a * static_cast<std::uint32_t>(n));
        g.comps_ = {K};
        g.perm_ = {0};
        g.frob_ = {a};

        // embed F into K: canonically-first root of F's modulus (trivial for
        // prime F)
        FieldElement fgen_img = FieldElement::one(K);
        if (a > 1) {
            const FpPoly& mod = F->modulus();
            bool found = false;
            for (std::uint64_t idx = 0; idx < K->order(); ++idx) {
                FieldElement cand = FieldElement::from_index(K, idx);
                FieldElement acc = FieldElement::zero(K);
                FieldElement pw = FieldElement::one(K);
                for (int i = 0; i <= mod.deg(); ++i) {
                    acc = acc + FieldElement::from_int(K, mod.coeff(static_cast<std::size_t>(i))) * pw;
                    pw = pw * cand;
                }
                if (acc.is_zero() && !cand.is_zero()) {
                    // require degree exactly a so the embedding is faithful
                    bool deg_a = cand.frobenius(a) == cand;
                    bool proper = true;
                    for (std::uint32_t dd = 1; dd < a; ++dd)
                        if (a % dd == 0 && cand.frobenius(dd) == cand) proper = false;
                    if (deg_a && proper) {
                        fgen_img = cand;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw std::logic_error("cyclic_ext: no embedding found");
        }
        auto embed = [&](const FieldElement& c) {
            FieldElement acc = FieldElement::zero(K);
            FieldElement pw = FieldElement::one(K);
            for (std::uint32_t i = 0; i < a; ++i) {
                acc = acc + FieldElement::from_int(K, c.coeffs()[i]) * pw;
                pw = pw * fgen_img;
            }
            return acc;
        };

        // F_p-linear change of basis between F-coordinates w.r.t. the power
        // basis {x^j} and native K coefficient vectors
        std::uint32_t an = a * static_cast<std::uint32_t>(n);
        Field P = FieldDescriptor::prime(p);
        FieldElement x = (an == 1) ? FieldElement::one(K) : FieldElement::generator(K);
        MatrixF phi(P, an, an);
        for (std::size_t j = 0; j < n; ++j) {
            FieldElement xj = x.pow(j);
            for (std::uint32_t b = 0; b < a; ++b) {
                // column of basis element (j, b): embed(g_F^b) * x^j
                FieldElement col = embed(power_basis_elem(F, b)) * xj;
                for (std::uint32_t r = 0; r < an; ++r)
                    phi.at(r, j * a + b) = FieldElement::from_int(P, col.coeffs()[r]);
            }
        }
        auto phi_inv = phi.inverse();
        if (!phi_inv) throw std::logic_error("cyclic_ext: power basis is degenerate");
        g.phi_ = phi;
        g.phi_inv_ = *phi_inv;
        g.K_ = K;
        g.embed_gen_ = fgen_img;
        g.x_ = x;

        // structure constants and sigma over F
        std::vector<FieldElement> sc;
        sc.reserve(n * n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                auto coords = g.to_coords(x.pow(i + j));
                for (std::size_t k = 0; k < n; ++k) sc.push_back(coords[k]);
            }
        auto unit = g.to_coords(FieldElement::one(K));
        g.alg_ = AlgebraSC(F, n, std::move(sc), std::move(unit),
                           "F" + std::to_string(K->order()) + "/" + F->to_string());
        MatrixF sig(F, n, n);
        std::uint64_t q = F->order();
        for (std::size_t j = 0; j < n; ++j) {
            auto coords = g.to_coords(x.pow(j).pow(q));
            for (std::size_t r = 0; r < n; ++r) sig.at(r, j) = coords[r];
        }
        g.sigma_ = sig;
        g.validate();
        return g;
    }

    // K = F^n with sigma the cyclic coordinate shift.
    static GaloisCnAlgebra split_etale(const Field& F, std::size_t n) {
        if (n == 0) throw std::invalid_argument("degree must be positive");
        GaloisCnAlgebra g;
        g.F_ = F;
        g.n_ = n;
        g.comps_.assign(n, F);
        g.perm_.resize(n);
        for (std::size_t i = 0; i < n; ++i) g.perm_[i] = (i + 1) % n;
        g.frob_.assign(n, 0);
        std::vector<FieldElement> sc(n * n * n, FieldElement::zero(F));
        for (std::size_t i = 0; i < n; ++i) sc[(i * n + i) * n + i] = FieldElement::one(F);
        std::vector<FieldElement> unit(n, FieldElement::one(F));
        g.alg_ = AlgebraSC(F, n, std::move(sc), std::move(unit),
                           F->to_string() + "^" + std::to_string(n));
        MatrixF sig(F, n, n);
        for (std::size_t i = 0; i < n; ++i)
            sig.at((i + 1) % n, i) = FieldElement::one(F);
        g.sigma_ = sig;
        g.validate();
        return g;
    }

    const Field& base() const { return F_; }
    std::size_t n() const { return n_; }
    const AlgebraSC& algebra() const { return alg_; }
    const MatrixF& sigma() const { return sigma_; }
    const std::vector<Field>& components() const { return comps_; }
    const std::vector<std::size_t>& permutation() const { return perm_; }
    const std::vector<std::uint32_t>& frobenius_powers() const { return frob_; }
    bool is_field() const { return comps_.size() == 1; }
    const Field& component_field() const { return comps_.front(); }

    std::vector<FieldElement> sigma_apply(const std::vector<FieldElement>& x,
                                          std::size_t power = 1) const {
        auto v = x;
        for (std::size_t i = 0; i < power % n_; ++i) v = sigma_.apply(v);
        return v;
    }

    // N(x) = prod_j sigma^j(x), T(x) = sum_j sigma^j(x); both land in F.
    FieldElement norm(const std::vector<FieldElement>& x) const {
        auto acc = x;
        auto cur = x;
        for (std::size_t j = 1; j < n_; ++j) {
            cur = sigma_.apply(cur);
            acc = alg_.multiply(acc, cur);
        }
        return scalar_of(acc);
    }

    FieldElement trace(const std::vector<FieldElement>& x) const {
        auto acc = x;
        auto cur = x;
        for (std::size_t j = 1; j < n_; ++j) {
            cur = sigma_.apply(cur);
            for (std::size_t e = 0; e < n_; ++e) acc[e] = acc[e] + cur[e];
        }
        return scalar_of(acc);
    }

    StabilizerData stabilizer(const std::vector<FieldElement>& d) const {
        StabilizerData out;
        auto cur = d;
        for (std::size_t s = 1; s <= n_; ++s) {
            cur = sigma_.apply(cur);
            if (cur == d) {
                out.s = s;
                break;
            }
        }
        if (out.s == 0 || n_ % out.s != 0)
            throw std::logic_error("stabilizer: sigma does not have exact order n");
        out.r = n_ / out.s;
        // Fix(sigma^s) = ker(sigma^s - id)
        MatrixF pw = MatrixF::identity(F_, n_);
        for (std::size_t i = 0; i < out.s; ++i) pw = sigma_ * pw;
        out.fixed = alg_.subalgebra((pw - MatrixF::identity(F_, n_)).kernel());
        return out;
    }

    // Conversions for the single-component case.
    std::vector<FieldElement> to_coords(const FieldElement& y) const {
        if (!is_field()) throw std::logic_error("to_coords: not a field component");
        if (comps_[0]->k() == 1) return {y};  // K = F prime-degree-1 case
        std::uint32_t an = comps_[0]->k();
        Field P = FieldDescriptor::prime(F_->p());
        std::vector<FieldElement> v;
        v.reserve(an);
        for (std::uint32_t i = 0; i < an; ++i)
            v.push_back(FieldElement::from_int(P, y.coeffs()[i]));
        auto c = phi_inv_.apply(v);
        std::uint32_t a = F_->k();
        std::vector<FieldElement> out;
        out.reserve(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            std::vector<std::uint32_t> chunk(a);
            for (std::uint32_t b = 0; b < a; ++b) chunk[b] = c[j * a + b].coeffs()[0];
            out.push_back(FieldElement::from_coeffs(F_, chunk));
        }
        return out;
    }

    FieldElement from_coords(const std::vector<FieldElement>& coords) const {
        if (!is_field()) throw std::logic_error("from_coords: not a field component");
        FieldElement acc = FieldElement::zero(K_);
        for (std::size_t j = 0; j < n_; ++j) {
            FieldElement cj = embed_scalar(coords[j]);
            acc = acc + cj * x_.pow(j);
        }
        return acc;
    }

    bool in_base_field(const std::vector<FieldElement>& x) const {
        return sigma_.apply(x) == x;  // Fix(sigma) = F (validated)
    }

    bool is_unit(const std::vector<FieldElement>& x) const {
        return alg_.left_mult(x).is_invertible();
    }

  private:
    GaloisCnAlgebra() = default;

    static FieldElement power_basis_elem(const Field& F, std::uint32_t b) {
        std::vector<std::uint32_t> c(F->k(), 0);
        c[b] = 1;
        return FieldElement::from_coeffs(F, std::move(c));
    }

    FieldElement embed_scalar(const FieldElement& c) const {
        FieldElement acc = FieldElement::zero(K_);
        FieldElement pw = FieldElement::one(K_);
        for (std::uint32_t i = 0; i < F_->k(); ++i) {
            acc = acc + FieldElement::from_int(K_, c.coeffs()[i]) * pw;
            pw = pw * embed_gen_;
        }
        return acc;
    }

    FieldElement scalar_of(const std::vector<FieldElement>& v) const {
        // v must lie in F*1
        std::size_t j = 0;
        const auto& unit = alg_.unit();
        while (j < n_ && unit[j].is_zero()) ++j;
        FieldElement c = v[j] / unit[j];
        for (std::size_t e = 0; e < n_; ++e)
            if (v[e] != c * unit[e])
                throw std::logic_error("norm/trace did not land in the base field");
        return c;
    }

    void validate() const {
        MatrixF pw = sigma_;
        for (std::size_t j = 1; j < n_; ++j) {
            if (pw == MatrixF::identity(F_, n_))
                throw std::invalid_argument("sigma has order smaller than n");
            pw = sigma_ * pw;
        }
        if (!(pw == MatrixF::identity(F_, n_)))
            throw std::invalid_argument("sigma does not have order n");
        MatrixF fix = (sigma_ - MatrixF::identity(F_, n_)).kernel();
        if (fix.rows() != 1 || !row_space_contains(fix, alg_.unit()))
            throw std::invalid_argument("Fix(sigma) is not F*1");
        // sigma is a ring automorphism: check on basis pairs
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) {
                auto lhs = sigma_.apply(alg_.sc_row(i, j));
                auto rhs = alg_.multiply(sigma_.apply(alg_.basis_vec(i)),
                                         sigma_.apply(alg_.basis_vec(j)));
                if (lhs != rhs) throw std::invalid_argument("sigma is not multiplicative");
            }
    }

    Field F_;
    std::vector<Field> comps_;
    std::vector<std::size_t> perm_;
    std::vector<std::uint32_t> frob_;
    std::size_t n_ = 0;
    AlgebraSC alg_;
    MatrixF sigma_;
    // single-component data
    Field K_;
    FieldElement embed_gen_;
    FieldElement x_;
    MatrixF phi_, phi_inv_;
};

// --- etale predicates on plain structure-constant algebras -------------------

namespace etale {

inline void require_comm_assoc(const AlgebraSC& a, const char* what) {
    if (!a.is_commutative())
        throw std::invalid_argument(std::string(what) + ": algebra is not commutative");
    if (!a.is_associative())
        throw std::invalid_argument(std::string(what) + ": algebra is not associative");
}

// The bilinear form (x, y) -> Tr(L_{xy}) is nondegenerate exactly for etale
// algebras (in the separable, finite setting used here).
inline bool trace_form_nondegenerate(const AlgebraSC& a) {
    require_comm_assoc(a, "trace_form_nondegenerate");
    std::size_t n = a.dim();
    MatrixF gram(a.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MatrixF l = a.left_mult(a.sc_row(i, j));
            FieldElement tr = FieldElement::zero(a.field());
            for (std::size_t e = 0; e < n; ++e) tr = tr + l.at(e, e);
            gram.at(i, j) = tr;
        }
    return gram.rank() == n;
}

// Matrix of the q-power map x -> x^q, which is F_q-linear on a commutative
// algebra over F_q.
inline MatrixF qpower_matrix(const AlgebraSC& a) {
    const Field& f = a.field();
    if (!f->finite()) throw std::domain_error("qpower_matrix: finite base field required");
    std::size_t n = a.dim();
    MatrixF qp(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto acc = a.basis_vec(i);
        for (std::uint32_t step = 0; step < f->k(); ++step) {
            auto prev = acc;
            for (std::uint32_t t = 1; t < f->p(); ++t) acc = a.multiply(acc, prev);
        }
        for (std::size_t r = 0; r < n; ++r) qp.at(r, i) = acc[r];
    }
    return qp;
}

// Number of primitive idempotents of an etale algebra over F_q, computed as
// dim {x : x^q = x}.
inline std::size_t count_primitive_idempotents(const AlgebraSC& a) {
    require_comm_assoc(a, "count_primitive_idempotents");
    if (!trace_form_nondegenerate(a))
        throw std::invalid_argument("count_primitive_idempotents: algebra is not etale");
    MatrixF qp = qpower_matrix(a);
    return (qp - MatrixF::identity(a.field(), a.dim())).kernel().rows();
}

// All nonzero idempotents, found by searching the q-power fixed space; at
// most |F|^dim(fixed space) candidates, guarded by the cap.
inline std::vector<std::vector<FieldElement>> nonzero_idempotents(const AlgebraSC& a,
                                                                  std::uint64_t cap = kDefaultCap) {
    require_comm_assoc(a, "nonzero_idempotents");
    MatrixF fixed = (qpower_matrix(a) - MatrixF::identity(a.field(), a.dim())).kernel();
    std::uint64_t q = a.field()->order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < fixed.rows(); ++i) {
        if (total > cap / q) throw cap_exceeded("nonzero_idempotents", cap, total);
        total *= q;
    }
    std::vector<std::vector<FieldElement>> out;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::uint64_t t = idx;
        auto v = a.zero_vec();
        for (std::size_t i = 0; i < fixed.rows(); ++i) {
            FieldElement c = FieldElement::from_index(a.field(), t % q);
            t /= q;
            if (c.is_zero()) continue;
            for (std::size_t e = 0; e < a.dim(); ++e) v[e] = v[e] + c * fixed.at(i, e);
        }
        if (!AlgebraSC::vec_is_zero(v) && a.multiply(v, v) == v) out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<std::vector<FieldElement>> primitive_idempotents(const AlgebraSC& a,
                                                                    std::uint64_t cap = kDefaultCap) {
    auto idems = nonzero_idempotents(a, cap);
    std::vector<std::vector<FieldElement>> prim;
    for (const auto& e : idems) {
        bool primitive = true;
        for (const auto& f : idems) {
            if (f == e) continue;
            if (a.multiply(e, f) == f) {  // f < e
                primitive = false;
                break;
            }
        }
        if (primitive) prim.push_back(e);
    }
    return prim;
}

}  // namespace etale

}  // namespace semialg
