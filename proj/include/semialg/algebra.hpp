#pragma once

// Finite-dimensional nonassociative algebras over an exact field, given by
// structure constants c[i][j][k] with b_i*b_j = sum_k c[i][j][k] b_k and a
// distinguished unit. Provides the associator machinery: the four nuclei and
// the center (deterministic echelon bases), opposite and tensor algebras,
// exhaustive division and isomorphism checks, and atom decomposition for
// commutative nuclei.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semialg/common.hpp"
#include "semialg/matrix.hpp"

namespace semialg {

class AlgebraSC;

inline std::vector<FieldElement> unit_axis(std::size_t n, std::size_t i, const Field& f) {
    std::vector<FieldElement> v(n, FieldElement::zero(f));
    v[i] = FieldElement::one(f);
    return v;
}

// Subspace of an algebra closed under multiplication, with the induced
// structure constants when the subspace is unital. `basis` rows are in
// parent coordinates (RREF).
struct Subalgebra {
    MatrixF basis;
    std::shared_ptr<const AlgebraSC> induced_ptr;
    bool unital = false;

    std::size_t dim() const { return basis.rows(); }
    const AlgebraSC& induced() const {
        if (!induced_ptr) throw std::logic_error("Subalgebra has no induced algebra");
        return *induced_ptr;
    }
};

class AlgebraSC {
  public:
    AlgebraSC() : dim_(0) {}

    AlgebraSC(Field f, std::size_t dim, std::vector<FieldElement> sc,
              std::vector<FieldElement> unit, std::string label = "")
        : f_(std::move(f)), dim_(dim), sc_(std::move(sc)), unit_(std::move(unit)),
          label_(std::move(label)) {
        if (dim_ == 0) throw std::invalid_argument("algebra dimension must be positive");
        if (sc_.size() != dim_ * dim_ * dim_ || unit_.size() != dim_)
            throw std::invalid_argument("structure constant table has wrong shape");
        validate_unit();
    }

    const Field& field() const { return f_; }
    std::size_t dim() const { return dim_; }
    const std::vector<FieldElement>& unit() const { return unit_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    // structural equality (labels ignored)
    friend bool operator==(const AlgebraSC& a, const AlgebraSC& b) {
        return same_field(a.f_, b.f_) && a.dim_ == b.dim_ && a.sc_ == b.sc_ && a.unit_ == b.unit_;
    }

    const FieldElement& c(std::size_t i, std::size_t j, std::size_t k) const {
        return sc_[(i * dim_ + j) * dim_ + k];
    }

    // b_i * b_j as a coordinate vector.
    std::vector<FieldElement> sc_row(std::size_t i, std::size_t j) const {
        return {sc_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j) * dim_),
                sc_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j + 1) * dim_)};
    }

    std::vector<FieldElement> zero_vec() const {
        return std::vector<FieldElement>(dim_, FieldElement::zero(f_));
    }

    std::vector<FieldElement> basis_vec(std::size_t i) const {
        auto v = zero_vec();
        v[i] = FieldElement::one(f_);
        return v;
    }

    std::vector<FieldElement> multiply(const std::vector<FieldElement>& x,
                                       const std::vector<FieldElement>& y) const {
        if (x.size() != dim_ || y.size() != dim_)
            throw std::invalid_argument("multiply: coordinate length mismatch");
        auto r = zero_vec();
        for (std::size_t i = 0; i < dim_; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (y[j].is_zero()) continue;
                FieldElement xy = x[i] * y[j];
                const FieldElement* row = &sc_[(i * dim_ + j) * dim_];
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!row[k].is_zero()) r[k] = r[k] + xy * row[k];
            }
        }
        return r;
    }

    std::vector<FieldElement> associator(const std::vector<FieldElement>& x,
                                         const std::vector<FieldElement>& y,
                                         const std::vector<FieldElement>& z) const {
        auto l = multiply(multiply(x, y), z);
        auto r = multiply(x, multiply(y, z));
        for (std::size_t i = 0; i < dim_; ++i) l[i] = l[i] - r[i];
        return l;
    }

    MatrixF left_mult(const std::vector<FieldElement>& x) const {
        MatrixF m(f_, dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            auto col = multiply(x, basis_vec(j));
            for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    MatrixF right_mult(const std::vector<FieldElement>& x) const {
        MatrixF m(f_, dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            auto col = multiply(basis_vec(j), x);
            for (std::size_t i = 0; i < dim_; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    static bool vec_is_zero(const std::vector<FieldElement>& v) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

    // --- nuclei -------------------------------------------------------------

    enum class NucleusKind { left, middle, right, full, center };

    // Engine selection exists for cross-validation: `packed` is the prime
    // field fast path, `generic` the field-agnostic reference.
    enum class NucleusEngine { automatic, generic, packed };

    Subalgebra nucleus(NucleusKind kind, NucleusEngine engine = NucleusEngine::automatic) const {
        bool packed = engine == NucleusEngine::packed ||
                      (engine == NucleusEngine::automatic && f_->kind() == FieldKind::prime);
        if (packed && f_->kind() != FieldKind::prime)
            throw std::invalid_argument("packed nucleus engine needs a prime base field");
        MatrixF basis = packed ? nucleus_basis_prime(kind) : nucleus_basis_generic(kind);
        return subalgebra(basis);
    }

    Subalgebra nucleus_left() const { return nucleus(NucleusKind::left); }
    Subalgebra nucleus_middle() const { return nucleus(NucleusKind::middle); }
    Subalgebra nucleus_right() const { return nucleus(NucleusKind::right); }
    Subalgebra nucleus_full() const { return nucleus(NucleusKind::full); }
    Subalgebra center() const { return nucleus(NucleusKind::center); }

    bool is_associative() const {
        return nucleus_basis_dim(NucleusKind::right) == dim_;
    }

    bool is_commutative() const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (c(i, j, k) != c(j, i, k)) return false;
        return true;
    }

    // Builds the subalgebra spanned by the given rows; throws if the span is
    // not multiplicatively closed. The induced algebra is only attached for
    // unital subspaces.
    Subalgebra subalgebra(const MatrixF& basis_rows) const {
        MatrixF basis = basis_rows.row_space();
        std::size_t b = basis.rows();
        Subalgebra s;
        s.basis = basis;
        if (b == 0) return s;
        std::vector<std::size_t> piv = pivot_columns(basis);
        auto coords_of = [&](const std::vector<FieldElement>& v) {
            std::vector<FieldElement> y(b, FieldElement::zero(f_));
            for (std::size_t i = 0; i < b; ++i) y[i] = v[piv[i]];
            // reconstruction check = closure under the span
            auto rec = std::vector<FieldElement>(dim_, FieldElement::zero(f_));
            for (std::size_t i = 0; i < b; ++i)
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!basis.at(i, k).is_zero()) rec[k] = rec[k] + y[i] * basis.at(i, k);
            for (std::size_t k = 0; k < dim_; ++k)
                if (rec[k] != v[k])
                    throw std::invalid_argument("subalgebra: span is not closed");
            return y;
        };
        std::vector<FieldElement> isc;
        isc.reserve(b * b * b);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j) {
                auto prod = multiply(basis.row(i), basis.row(j));
                auto y = coords_of(prod);
                for (std::size_t k = 0; k < b; ++k) isc.push_back(y[k]);
            }
        s.unital = row_space_contains(basis, unit_);
        if (s.unital) {
            auto iu = coords_of(unit_);
            s.induced_ptr = std::make_shared<const AlgebraSC>(
                AlgebraSC(f_, b, std::move(isc), std::move(iu)));
        }
        return s;
    }

    // --- derived algebras ----------------------------------------------------

    AlgebraSC opposite() const {
        std::vector<FieldElement> sc;
        sc.reserve(sc_.size());
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                for (std::size_t k = 0; k < dim_; ++k) sc.push_back(c(j, i, k));
        return AlgebraSC(f_, dim_, std::move(sc), unit_,
                         label_.empty() ? "" : label_ + "^op");
    }

    static AlgebraSC tensor(const AlgebraSC& a, const AlgebraSC& b) {
        if (!same_field(a.f_, b.f_))
            throw std::invalid_argument("tensor: base field mismatch");
        std::size_t n = a.dim_ * b.dim_;
        std::vector<FieldElement> sc;
        sc.reserve(n * n * n);
        for (std::size_t i1 = 0; i1 < a.dim_; ++i1)
            for (std::size_t i2 = 0; i2 < b.dim_; ++i2)
                for (std::size_t j1 = 0; j1 < a.dim_; ++j1)
                    for (std::size_t j2 = 0; j2 < b.dim_; ++j2)
                        for (std::size_t k1 = 0; k1 < a.dim_; ++k1) {
                            const FieldElement& ca = a.c(i1, j1, k1);
                            for (std::size_t k2 = 0; k2 < b.dim_; ++k2)
                                sc.push_back(ca.is_zero() ? FieldElement::zero(a.f_)
                                                          : ca * b.c(i2, j2, k2));
                        }
        std::vector<FieldElement> unit;
        unit.reserve(n);
        for (std::size_t i1 = 0; i1 < a.dim_; ++i1)
            for (std::size_t i2 = 0; i2 < b.dim_; ++i2) unit.push_back(a.unit_[i1] * b.unit_[i2]);
        return AlgebraSC(a.f_, n, std::move(sc), std::move(unit));
    }

    // Same structure constants over an extension of a prime base field.
    AlgebraSC scalar_extension(const Field& bigger) const {
        if (f_->kind() != FieldKind::prime)
            throw std::invalid_argument("scalar_extension implemented for prime base fields");
        if (bigger->p() != f_->p()) throw std::invalid_argument("characteristic mismatch");
        auto lift = [&](const FieldElement& x) {
            return FieldElement::from_int(bigger, x.coeffs()[0]);
        };
        std::vector<FieldElement> sc;
        sc.reserve(sc_.size());
        for (const auto& x : sc_) sc.push_back(lift(x));
        std::vector<FieldElement> unit;
        for (const auto& x : unit_) unit.push_back(lift(x));
        return AlgebraSC(bigger, dim_, std::move(sc), std::move(unit), label_);
    }

    // --- exhaustive checks ---------------------------------------------------

    struct DivisionReport {
        bool division = false;
        // first zero-divisor pair in canonical enumeration order, if any
        std::optional<std::pair<std::vector<FieldElement>, std::vector<FieldElement>>> witness;
    };

    // Determinant route: A is division iff L_x and R_x are invertible for all
    // nonzero x. Enumerates |F|^dim elements in canonical index order.
    DivisionReport is_division_exhaustive(std::uint64_t cap = kDefaultCap) const {
        require_finite("is_division_exhaustive");
        std::uint64_t total = pow_checked(f_->order(), dim_, cap, "is_division_exhaustive");
        DivisionReport rep;
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            auto x = element_from_index(idx);
            MatrixF lm = left_mult(x);
            MatrixF lk = lm.kernel();
            if (lk.rows() > 0) {
                rep.witness = {x, lk.row(0)};
                return rep;
            }
            MatrixF rm = right_mult(x);
            MatrixF rk = rm.kernel();
            if (rk.rows() > 0) {
                rep.witness = {rk.row(0), x};
                return rep;
            }
        }
        rep.division = true;
        return rep;
    }

    // Pair-enumeration route, used to cross-validate the determinant route.
    DivisionReport is_division_pairs(std::uint64_t cap = kDefaultCap) const {
        require_finite("is_division_pairs");
        std::uint64_t total = pow_checked(f_->order(), dim_, cap, "is_division_pairs");
        if (total > cap / total)
            throw cap_exceeded("is_division_pairs", cap, total);
        DivisionReport rep;
        for (std::uint64_t ix = 1; ix < total; ++ix) {
            auto x = element_from_index(ix);
            for (std::uint64_t iy = 1; iy < total; ++iy) {
                auto y = element_from_index(iy);
                if (vec_is_zero(multiply(x, y))) {
                    rep.witness = {x, y};
                    return rep;
                }
            }
        }
        rep.division = true;
        return rep;
    }

    bool verify_isomorphism(const AlgebraSC& target, const MatrixF& m) const {
        if (m.rows() != dim_ || m.cols() != dim_ || target.dim_ != dim_) return false;
        if (!same_field(f_, target.f_)) return false;
        if (!m.is_invertible()) return false;
        if (m.apply(unit_) != target.unit_) return false;
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                auto lhs = m.apply(sc_row(i, j));
                auto rhs = target.multiply(m.apply(basis_vec(i)), m.apply(basis_vec(j)));
                if (lhs != rhs) return false;
            }
        return true;
    }

    // Deterministic search for an isomorphism this -> target. Candidate basis
    // images are enumerated as a lexicographic DFS over columns (each column
    // running through elements in canonical index order) with sound pruning:
    // the first full solution in this order is returned. The cap counts
    // candidate column assignments explored.
    std::optional<MatrixF> find_isomorphism_exhaustive(const AlgebraSC& target,
                                                       std::uint64_t cap = kDefaultCap) const;

    struct Atom {
        std::size_t dim;                    // over the base field
        std::vector<FieldElement> idem;     // primitive idempotent in parent coordinates
    };

    // Atoms of A: the simple components of Nuc(A)/J(Nuc(A)). Only supported
    // when Nuc(A) is commutative (J is then the nilradical, computed via the
    // iterated q-power kernel); the components of the semisimple quotient are
    // field extensions whose dimensions are reported.
    std::vector<Atom> atoms_commutative(std::uint64_t cap = kDefaultCap) const;

    // --- enumeration helpers --------------------------------------------------

    std::vector<FieldElement> element_from_index(std::uint64_t idx) const {
        std::vector<FieldElement> v;
        v.reserve(dim_);
        std::uint64_t q = f_->order();
        for (std::size_t i = 0; i < dim_; ++i) {
            v.push_back(FieldElement::from_index(f_, idx % q));
            idx /= q;
        }
        return v;
    }

    std::uint64_t element_count_or_throw(std::uint64_t cap, const char* what) const {
        require_finite(what);
        return pow_checked(f_->order(), dim_, cap, what);
    }

  private:
    void require_finite(const char* what) const {
        if (!f_->finite())
            throw std::domain_error(std::string(what) + ": finite base field required");
    }

    static std::uint64_t pow_checked(std::uint64_t q, std::size_t e, std::uint64_t cap,
                                     const char* what) {
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < e; ++i) {
            if (total > cap / q) throw cap_exceeded(what, cap, total);
            total *= q;
        }
        if (total > cap) throw cap_exceeded(what, cap, total);
        return total;
    }

    void validate_unit() const {
        for (std::size_t i = 0; i < dim_; ++i) {
            auto e = basis_vec(i);
            if (multiply(unit_, e) != e || multiply(e, unit_) != e)
                throw std::invalid_argument("unit axiom fails at basis element " +
                                            std::to_string(i));
        }
    }

    static std::vector<std::size_t> pivot_columns(const MatrixF& rref_rows) {
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < rref_rows.rows(); ++i) {
            std::size_t j = 0;
            while (j < rref_rows.cols() && rref_rows.at(i, j).is_zero()) ++j;
            piv.push_back(j);
        }
        return piv;
    }

    std::size_t nucleus_basis_dim(NucleusKind kind) const {
        return (f_->kind() == FieldKind::prime) ? nucleus_basis_prime(kind).rows()
                                                : nucleus_basis_generic(kind).rows();
    }

    MatrixF nucleus_basis_generic(NucleusKind kind) const;
    MatrixF nucleus_basis_prime(NucleusKind kind) const;

    Field f_;
    std::size_t dim_;
    std::vector<FieldElement> sc_;
    std::vector<FieldElement> unit_;
    std::string label_;
};

// --- generic nucleus path ----------------------------------------------------

inline MatrixF AlgebraSC::nucleus_basis_generic(NucleusKind kind) const {
    const std::size_t n = dim_;
    MatrixF bas = MatrixF::identity(f_, n);

    auto shrink = [&](const std::vector<std::vector<FieldElement>>& residuals) {
        // residuals[c] is the condition value on basis row c; constraint rows
        // are indexed by the ambient coordinate.
        std::size_t b = bas.rows();
        MatrixF k(f_, n, b);
        for (std::size_t c = 0; c < b; ++c)
            for (std::size_t e = 0; e < n; ++e) k.at(e, c) = residuals[c][e];
        MatrixF y = k.kernel();
        bas = (y * bas).row_space();
    };

    bool need_right = kind == NucleusKind::right || kind == NucleusKind::full ||
                      kind == NucleusKind::center;
    bool need_left = kind == NucleusKind::left || kind == NucleusKind::full ||
                     kind == NucleusKind::center;
    bool need_middle = kind == NucleusKind::middle || kind == NucleusKind::full ||
                       kind == NucleusKind::center;

    for (std::size_t i = 0; i < n && bas.rows(); ++i)
        for (std::size_t j = 0; j < n && bas.rows(); ++j) {
            auto w = sc_row(i, j);
            auto ei = basis_vec(i), ej = basis_vec(j);
            if (need_right) {
                std::vector<std::vector<FieldElement>> res;
                for (std::size_t cidx = 0; cidx < bas.rows(); ++cidx) {
                    auto v = bas.row(cidx);
                    auto r = multiply(w, v);
                    auto s = multiply(ei, multiply(ej, v));
                    for (std::size_t e = 0; e < n; ++e) r[e] = r[e] - s[e];
                    res.push_back(std::move(r));
                }
                shrink(res);
            }
            if (need_left && bas.rows()) {
                std::vector<std::vector<FieldElement>> res;
                for (std::size_t cidx = 0; cidx < bas.rows(); ++cidx) {
                    auto v = bas.row(cidx);
                    auto r = multiply(multiply(v, ei), ej);
                    auto s = multiply(v, w);
                    for (std::size_t e = 0; e < n; ++e) r[e] = r[e] - s[e];
                    res.push_back(std::move(r));
                }
                shrink(res);
            }
            if (need_middle && bas.rows()) {
                std::vector<std::vector<FieldElement>> res;
                for (std::size_t cidx = 0; cidx < bas.rows(); ++cidx) {
                    auto v = bas.row(cidx);
                    auto r = multiply(multiply(ei, v), ej);
                    auto s = multiply(ei, multiply(v, ej));
                    for (std::size_t e = 0; e < n; ++e) r[e] = r[e] - s[e];
                    res.push_back(std::move(r));
                }
                shrink(res);
            }
        }
    if (kind == NucleusKind::center)
        for (std::size_t i = 0; i < n && bas.rows(); ++i) {
            auto ei = basis_vec(i);
            std::vector<std::vector<FieldElement>> res;
            for (std::size_t cidx = 0; cidx < bas.rows(); ++cidx) {
                auto v = bas.row(cidx);
                auto r = multiply(ei, v);
                auto s = multiply(v, ei);
                for (std::size_t e = 0; e < n; ++e) r[e] = r[e] - s[e];
                res.push_back(std::move(r));
            }
            shrink(res);
        }
    return bas;
}

// --- packed prime-field nucleus path -----------------------------------------

namespace detail {

// Candidate basis rows over F_p with the condition residuals evaluated via
// the packed structure constant table. Grouped so the inner matrix products
// shrink as soon as the kernel does.
class PrimeNucleus {
  public:
    PrimeNucleus(const AlgebraSC& alg, std::uint32_t p)
        : p_(p), n_(alg.dim()), sc_((std::size_t)n_ * n_ * n_) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k)
                    sc_[(i * n_ + j) * n_ + k] = alg.c(i, j, k).coeffs()[0];
        bas_ = PrimeMat::identity(p_, n_);
    }

    // out += e_i * v
    void mul_basis_left(std::size_t i, const std::uint32_t* v, std::uint64_t* out) const {
        for (std::size_t s = 0; s < n_; ++s) {
            std::uint32_t vs = v[s];
            if (!vs) continue;
            const std::uint32_t* row = &sc_[(i * n_ + s) * n_];
            for (std::size_t k = 0; k < n_; ++k) out[k] += (std::uint64_t)vs * row[k];
        }
    }

    // out += v * e_j
    void mul_basis_right(const std::uint32_t* v, std::size_t j, std::uint64_t* out) const {
        for (std::size_t u = 0; u < n_; ++u) {
            std::uint32_t vu = v[u];
            if (!vu) continue;
            const std::uint32_t* row = &sc_[(u * n_ + j) * n_];
            for (std::size_t k = 0; k < n_; ++k) out[k] += (std::uint64_t)vu * row[k];
        }
    }

    // out += w * v for a general (typically sparse) w
    void mul_vec(const std::uint32_t* w, const std::uint32_t* v, std::uint64_t* out) const {
        for (std::size_t u = 0; u < n_; ++u) {
            if (!w[u]) continue;
            for (std::size_t s = 0; s < n_; ++s) {
                std::uint64_t ws = (std::uint64_t)w[u] * v[s];
                if (!ws) continue;
                const std::uint32_t* row = &sc_[(u * n_ + s) * n_];
                for (std::size_t k = 0; k < n_; ++k) out[k] += ws * row[k];
            }
        }
    }

    MatrixF run(AlgebraSC::NucleusKind kind, const Field& f) {
        using NK = AlgebraSC::NucleusKind;
        bool right = kind == NK::right || kind == NK::full || kind == NK::center;
        bool left = kind == NK::left || kind == NK::full || kind == NK::center;
        bool middle = kind == NK::middle || kind == NK::full || kind == NK::center;
        if (right) run_associator(Mode::right);
        if (left) run_associator(Mode::left);
        if (middle) run_associator(Mode::middle);
        if (kind == NK::center) run_commutator();
        PrimeMat out = bas_;
        out.rref();
        return out.to_matrixf(f);
    }

  private:
    enum class Mode { right, left, middle };

    std::vector<std::uint32_t> reduce(const std::vector<std::uint64_t>& acc) const {
        std::vector<std::uint32_t> r(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r[i] = (std::uint32_t)(acc[i] % p_);
        return r;
    }

    // Constrain the current basis by the residual rows of one condition batch.
    void apply_batch(const std::vector<std::vector<std::uint32_t>>& residuals) {
        std::size_t b = bas_.rows;
        if (!b) return;
        bool any = false;
        for (const auto& r : residuals)
            for (auto x : r)
                if (x) {
                    any = true;
                    break;
                }
        if (!any) return;
        PrimeMat k(p_, n_ * (residuals.size() / b), b);
        std::size_t conds = residuals.size() / b;
        for (std::size_t t = 0; t < conds; ++t)
            for (std::size_t c = 0; c < b; ++c)
                for (std::size_t e = 0; e < n_; ++e)
                    k.at(t * n_ + e, c) = residuals[t * b + c][e];
        PrimeMat y = k.kernel();
        // bas <- y * bas
        PrimeMat nb(p_, y.rows, n_);
        for (std::size_t i = 0; i < y.rows; ++i)
            for (std::size_t t = 0; t < bas_.rows; ++t) {
                std::uint32_t yt = y.at(i, t);
                if (!yt) continue;
                for (std::size_t j = 0; j < n_; ++j)
                    nb.at(i, j) = fp::add(nb.at(i, j), fp::mul(yt, bas_.at(t, j), p_), p_);
            }
        nb.rref();
        bas_ = std::move(nb);
    }

    void run_associator(Mode mode) {
        for (std::size_t outer = 0; outer < n_ && bas_.rows; ++outer) {
            std::size_t b = bas_.rows;
            // shared inner application for the whole group
            std::vector<std::vector<std::uint32_t>> t1(b);
            for (std::size_t c = 0; c < b; ++c) {
                std::vector<std::uint64_t> acc(n_, 0);
                const std::uint32_t* v = &bas_.a[c * n_];
                switch (mode) {
                    case Mode::right: mul_basis_left(outer, v, acc.data()); break;   // b_j*v, outer=j
                    case Mode::left: mul_basis_right(v, outer, acc.data()); break;   // v*b_i, outer=i
                    case Mode::middle: mul_basis_left(outer, v, acc.data()); break;  // b_i*v, outer=i
                }
                t1[c] = reduce(acc);
            }
            std::vector<std::vector<std::uint32_t>> residuals;
            residuals.reserve(n_ * b);
            for (std::size_t inner = 0; inner < n_; ++inner) {
                for (std::size_t c = 0; c < b; ++c) {
                    const std::uint32_t* v = &bas_.a[c * n_];
                    std::vector<std::uint64_t> x(n_, 0), y(n_, 0);
                    const std::uint32_t* w;
                    switch (mode) {
                        case Mode::right:
                            // [b_inner, b_outer, v] = (b_i b_j) v - b_i (b_j v), i=inner, j=outer
                            w = &sc_[(inner * n_ + outer) * n_];
                            mul_vec(w, v, x.data());
                            mul_basis_left(inner, t1[c].data(), y.data());
                            break;
                        case Mode::left:
                            // [v, b_outer, b_inner] = (v b_i) b_j - v (b_i b_j), i=outer, j=inner
                            mul_basis_right(t1[c].data(), inner, x.data());
                            w = &sc_[(outer * n_ + inner) * n_];
                            mul_vec(v, w, y.data());
                            break;
                        case Mode::middle:
                            // [b_outer, v, b_inner] = (b_i v) b_j - b_i (v b_j), i=outer, j=inner
                            mul_basis_right(t1[c].data(), inner, x.data());
                            {
                                std::vector<std::uint64_t> vb(n_, 0);
                                mul_basis_right(v, inner, vb.data());
                                auto vbr = reduce(vb);
                                mul_basis_left(outer, vbr.data(), y.data());
                            }
                            break;
                    }
                    std::vector<std::uint32_t> r(n_);
                    for (std::size_t e = 0; e < n_; ++e)
                        r[e] = fp::sub((std::uint32_t)(x[e] % p_), (std::uint32_t)(y[e] % p_), p_);
                    residuals.push_back(std::move(r));
                }
            }
            apply_batch(residuals);
        }
    }

    void run_commutator() {
        for (std::size_t i = 0; i < n_ && bas_.rows; ++i) {
            std::size_t b = bas_.rows;
            std::vector<std::vector<std::uint32_t>> residuals;
            residuals.reserve(b);
            for (std::size_t c = 0; c < b; ++c) {
                const std::uint32_t* v = &bas_.a[c * n_];
                std::vector<std::uint64_t> x(n_, 0), y(n_, 0);
                mul_basis_left(i, v, x.data());
                mul_basis_right(v, i, y.data());
                std::vector<std::uint32_t> r(n_);
                for (std::size_t e = 0; e < n_; ++e)
                    r[e] = fp::sub((std::uint32_t)(x[e] % p_), (std::uint32_t)(y[e] % p_), p_);
                residuals.push_back(std::move(r));
            }
            apply_batch(residuals);
        }
    }

    std::uint32_t p_;
    std::size_t n_;
    std::vector<std::uint32_t> sc_;
    PrimeMat bas_;
};

}  // namespace detail

inline MatrixF AlgebraSC::nucleus_basis_prime(NucleusKind kind) const {
    detail::PrimeNucleus pn(*this, f_->p());
    return pn.run(kind, f_);
}

// --- isomorphism search --------------------------------------------------------

inline std::optional<MatrixF> AlgebraSC::find_isomorphism_exhaustive(const AlgebraSC& target,
                                                                     std::uint64_t cap) const {
    if (dim_ != target.dim_ || !same_field(f_, target.f_)) return std::nullopt;
    require_finite("find_isomorphism_exhaustive");
    const std::size_t n = dim_;
    std::uint64_t col_count = 1;
    {
        std::uint64_t q = f_->order();
        for (std::size_t i = 0; i < n; ++i) {
            if (col_count > (std::uint64_t)1 << 62) throw cap_exceeded("find_isomorphism", cap, col_count);
            col_count *= q;
        }
    }

    std::vector<std::vector<FieldElement>> cols(n, zero_vec());
    std::uint64_t tried = 0;

    // images of the first (j+1) basis vectors let us check products whose
    // structure-constant support lies inside the fixed prefix
    auto partial_ok = [&](std::size_t fixed) {
        // invertibility so far
        std::vector<std::vector<FieldElement>> rows;
        for (std::size_t c = 0; c <= fixed; ++c) rows.push_back(cols[c]);
        if (MatrixF::from_rows(f_, rows).rank() != fixed + 1) return false;
        // unit image once its support is fixed
        bool unit_ready = true;
        for (std::size_t c = 0; c < n; ++c)
            if (!unit_[c].is_zero() && c > fixed) unit_ready = false;
        if (unit_ready) {
            auto img = zero_vec();
            for (std::size_t c = 0; c <= fixed; ++c)
                if (!unit_[c].is_zero())
                    for (std::size_t e = 0; e < n; ++e) img[e] = img[e] + unit_[c] * cols[c][e];
            if (img != target.unit_) return false;
        }
        // homomorphism on checkable pairs involving the new column
        for (std::size_t a = 0; a <= fixed; ++a)
            for (std::size_t b2 = 0; b2 <= fixed; ++b2) {
                if (a != fixed && b2 != fixed) continue;  // checked earlier
                auto w = sc_row(a, b2);
                bool ready = true;
                for (std::size_t c = 0; c < n; ++c)
                    if (!w[c].is_zero() && c > fixed) {
                        ready = false;
                        break;
                    }
                if (!ready) continue;
                auto lhs = zero_vec();
                for (std::size_t c = 0; c <= fixed; ++c)
                    if (!w[c].is_zero())
                        for (std::size_t e = 0; e < n; ++e) lhs[e] = lhs[e] + w[c] * cols[c][e];
                auto rhs = target.multiply(cols[a], cols[b2]);
                if (lhs != rhs) return false;
            }
        return true;
    };

    MatrixF result(f_, n, n);
    auto emit = [&]() {
        MatrixF m(f_, n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) m.at(i, j) = cols[j][i];
        return m;
    };

    // iterative DFS over column values
    std::vector<std::uint64_t> idx(n, 0);
    std::size_t depth = 0;
    while (true) {
        if (idx[depth] == col_count) {
            if (depth == 0) return std::nullopt;
            idx[depth] = 0;
            --depth;
            ++idx[depth];
            continue;
        }
        if (++tried > cap) throw cap_exceeded("find_isomorphism_exhaustive", cap, tried);
        cols[depth] = target.element_from_index(idx[depth]);
        if (!partial_ok(depth)) {
            ++idx[depth];
            continue;
        }
        if (depth + 1 == n) {
            MatrixF m = emit();
            if (verify_isomorphism(target, m)) return m;
            ++idx[depth];
            continue;
        }
        ++depth;
        idx[depth] = 0;
    }
}

// --- atoms ----------------------------------------------------------------------

inline std::vector<AlgebraSC::Atom> AlgebraSC::atoms_commutative(std::uint64_t cap) const {
    require_finite("atoms_commutative");
    Subalgebra nuc = nucleus_full();
    const AlgebraSC& nu = nuc.induced();
    if (!nu.is_commutative())
        throw std::domain_error("atoms_commutative: nucleus is not commutative");
    const std::size_t m = nu.dim();
    std::uint64_t q = f_->order();

    // q-power map is F_q-linear on a commutative algebra over F_q
    MatrixF qpow(f_, m, m);
    for (std::size_t i = 0; i < m; ++i) {
        auto x = nu.basis_vec(i);
        auto acc = x;
        // x^q by repeated p-th powers
        for (std::uint32_t step = 0; step < f_->k(); ++step) {
            auto prev = acc;
            for (std::uint32_t t = 1; t < f_->p(); ++t) acc = nu.multiply(acc, prev);
        }
        for (std::size_t r = 0; r < m; ++r) qpow.at(r, i) = acc[r];
    }

    // nilradical = kernel of the iterated q-power map (q^steps >= m)
    MatrixF power = MatrixF::identity(f_, m);
    std::uint64_t reach = 1;
    while (reach < m) {
        power = qpow * power;
        reach *= q;
    }
    MatrixF radical = power.kernel();

    // quotient by the radical: complement coordinates at non-pivot columns
    std::vector<std::size_t> rad_piv = radical.rows() ? [&] {
        MatrixF r = radical;
        return r.rref();
    }() : std::vector<std::size_t>{};
    std::vector<bool> is_rad_piv(m, false);
    for (auto c : rad_piv) is_rad_piv[c] = true;
    std::vector<std::size_t> comp;
    for (std::size_t c = 0; c < m; ++c)
        if (!is_rad_piv[c]) comp.push_back(c);
    const std::size_t mq = comp.size();

    auto project = [&](std::vector<FieldElement> v) {
        for (std::size_t r = 0; r < radical.rows(); ++r) {
            FieldElement factor = v[rad_piv[r]];
            if (factor.is_zero()) continue;
            for (std::size_t cj = 0; cj < m; ++cj) v[cj] = v[cj] - factor * radical.at(r, cj);
        }
        std::vector<FieldElement> y;
        y.reserve(mq);
        for (auto c : comp) y.push_back(v[c]);
        return y;
    };
    auto lift = [&](const std::vector<FieldElement>& y) {
        std::vector<FieldElement> v(m, FieldElement::zero(f_));
        for (std::size_t i = 0; i < mq; ++i) v[comp[i]] = y[i];
        return v;
    };

    std::vector<FieldElement> qsc;
    qsc.reserve(mq * mq * mq);
    for (std::size_t i = 0; i < mq; ++i)
        for (std::size_t j = 0; j < mq; ++j) {
            auto prod = project(nu.multiply(lift(unit_axis(mq, i, f_)), lift(unit_axis(mq, j, f_))));
            for (auto& x : prod) qsc.push_back(x);
        }
    AlgebraSC quo(f_, mq, std::move(qsc), project(nu.unit()));

    // Berlekamp fixed space of the quotient
    MatrixF qp(f_, mq, mq);
    for (std::size_t i = 0; i < mq; ++i) {
        auto acc = quo.basis_vec(i);
        for (std::uint32_t step = 0; step < f_->k(); ++step) {
            auto prev = acc;
            for (std::uint32_t t = 1; t < f_->p(); ++t) acc = quo.multiply(acc, prev);
        }
        for (std::size_t r = 0; r < mq; ++r) qp.at(r, i) = acc[r];
    }
    MatrixF fixed = (qp - MatrixF::identity(f_, mq)).kernel();
    const std::size_t rdim = fixed.rows();

    // enumerate idempotents inside the fixed space
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < rdim; ++i) {
        if (total > cap / q) throw cap_exceeded("atoms_commutative", cap, total);
        total *= q;
    }
    std::vector<std::vector<FieldElement>> idems;
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        std::uint64_t t = idx;
        auto v = std::vector<FieldElement>(mq, FieldElement::zero(f_));
        for (std::size_t i = 0; i < rdim; ++i) {
            FieldElement coef = FieldElement::from_index(f_, t % q);
            t /= q;
            if (coef.is_zero()) continue;
            for (std::size_t e = 0; e < mq; ++e) v[e] = v[e] + coef * fixed.at(i, e);
        }
        if (quo.multiply(v, v) == v && !vec_is_zero(v)) idems.push_back(v);
    }
    // primitive = minimal nonzero under e <= f iff ef = e
    std::vector<Atom> atoms;
    for (const auto& e : idems) {
        bool primitive = true;
        for (const auto& f2 : idems) {
            if (f2 == e) continue;
            if (quo.multiply(e, f2) == f2) {  // f2 < e
                primitive = false;
                break;
            }
        }
        if (!primitive) continue;
        MatrixF mult = quo.left_mult(e);
        Atom a;
        a.dim = mult.rank();
        // lift back to parent coordinates: quotient -> nucleus -> parent
        auto in_nu = lift(e);
        std::vector<FieldElement> parent(dim_, FieldElement::zero(f_));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < dim_; ++c)
                parent[c] = parent[c] + in_nu[i] * nuc.basis.at(i, c);
        a.idem = std::move(parent);
        atoms.push_back(std::move(a));
    }
    return atoms;
}

}  // namespace semialg
