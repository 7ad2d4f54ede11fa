#pragma once

// The algebra constructions: Petit algebras S_f (right and left), cyclic and
// generalized cyclic algebras, Menichetti and generalized Menichetti
// algebras, skew matrix algebras, and the semiassociativity / splitting /
// matrix-unit machinery on top of them.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semialg/etale.hpp"
#include "semialg/skewpoly.hpp"

namespace semialg {

// --- skew matrix algebras -----------------------------------------------------

// Reduced skew set of degree n: c_{iij} = c_{jii} = 1, all entries nonzero.
struct SkewSet {
    std::size_t n = 0;
    std::vector<FieldElement> c;  // (i*n + j)*n + k

    SkewSet() = default;
    SkewSet(std::size_t n_, std::vector<FieldElement> entries) : n(n_), c(std::move(entries)) {
        if (c.size() != n * n * n) throw std::invalid_argument("skew set has wrong shape");
        validate();
    }

    static SkewSet ones(const Field& f, std::size_t n) {
        return SkewSet(n, std::vector<FieldElement>(n * n * n, FieldElement::one(f)));
    }

    const FieldElement& at(std::size_t i, std::size_t j, std::size_t k) const {
        return c[(i * n + j) * n + k];
    }
    FieldElement& at(std::size_t i, std::size_t j, std::size_t k) {
        return c[(i * n + j) * n + k];
    }

    void validate() const {
        for (const auto& x : c)
            if (x.is_zero()) throw std::invalid_argument("skew set entries must be nonzero");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!at(i, i, j).is_one() || !at(j, i, i).is_one())
                    throw std::invalid_argument("skew set is not reduced");
            }
    }
};

// M_n(F; c) on matrix units e_{ij} with e_{ij} e_{kl} = delta_{jk} c_{ijl} e_{il}.
inline AlgebraSC skew_matrix_algebra(const Field& f, const SkewSet& cs) {
    const std::size_t n = cs.n;
    const std::size_t dim = n * n;
    auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
    std::vector<FieldElement> sc(dim * dim * dim, FieldElement::zero(f));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (j == k)
                        sc[(idx(i, j) * dim + idx(k, l)) * dim + idx(i, l)] = cs.at(i, j, l);
    std::vector<FieldElement> unit(dim, FieldElement::zero(f));
    for (std::size_t i = 0; i < n; ++i) unit[idx(i, i)] = FieldElement::one(f);
    return AlgebraSC(f, dim, std::move(sc), std::move(unit),
                     "M" + std::to_string(n) + "(" + f->to_string() + ";c)");
}

// --- Petit algebras -------------------------------------------------------------

// S_f (or the left-division variant) on the degree-< m remainders, basis
// ordered degree-major: index = deg * dim(S) + coefficient index.
struct PetitAlgebra {
    AlgebraSC alg;
    CoefficientRing::Ptr ring;
    SkewPolynomial f;
    std::size_t m = 0;
    bool left = false;

    PetitAlgebra(AlgebraSC a, CoefficientRing::Ptr r, SkewPolynomial ff, std::size_t mm, bool l)
        : alg(std::move(a)), ring(std::move(r)), f(std::move(ff)), m(mm), left(l) {}

    std::vector<FieldElement> coords_of(const SkewPolynomial& g) const {
        if (g.deg() >= static_cast<int>(m))
            throw std::invalid_argument("polynomial does not represent a coset");
        std::vector<FieldElement> v;
        v.reserve(alg.dim());
        for (std::size_t j = 0; j < m; ++j) {
            auto cj = g.coeff(j);
            for (const auto& x : cj) v.push_back(x);
        }
        return v;
    }

    SkewPolynomial poly_of(const std::vector<FieldElement>& v) const {
        std::size_t ds = ring->dim();
        std::vector<CoefficientRing::Elem> coeffs;
        for (std::size_t j = 0; j < m; ++j)
            coeffs.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(j * ds),
                                v.begin() + static_cast<std::ptrdiff_t>((j + 1) * ds));
        return SkewPolynomial::from_coeffs(ring, std::move(coeffs));
    }
};

inline PetitAlgebra petit_algebra_impl(CoefficientRing::Ptr ring, SkewPolynomial f, bool left,
                                       std::string label) {
    if (f.deg() < 1) throw std::invalid_argument("petit_algebra: deg f must be >= 1");
    if (!f.is_monic()) throw std::invalid_argument("petit_algebra: f must be monic");
    const std::size_t m = static_cast<std::size_t>(f.deg());
    const std::size_t ds = ring->dim();
    const std::size_t dim = m * ds;
    const Field& F = ring->base();
    std::vector<FieldElement> sc;
    sc.reserve(dim * dim * dim);
    auto monomial_of = [&](std::size_t index) {
        std::size_t j = index / ds, a = index % ds;
        return SkewPolynomial::monomial(ring, ring->S().basis_vec(a), j);
    };
    for (std::size_t bi = 0; bi < dim; ++bi) {
        SkewPolynomial gi = monomial_of(bi);
        for (std::size_t bj = 0; bj < dim; ++bj) {
            SkewPolynomial gj = monomial_of(bj);
            SkewPolynomial prod = gi * gj;
            SkewPolynomial rem = left ? prod.mod_l(f) : prod.mod_r(f);
            for (std::size_t j = 0; j < m; ++j) {
                auto cj = rem.coeff(j);
                for (const auto& x : cj) sc.push_back(x);
            }
        }
    }
    std::vector<FieldElement> unit(dim, FieldElement::zero(F));
    {
        auto u = ring->one();
        for (std::size_t a = 0; a < ds; ++a) unit[a] = u[a];
    }
    AlgebraSC alg(F, dim, std::move(sc), std::move(unit), std::move(label));
    return PetitAlgebra(std::move(alg), std::move(ring), std::move(f), m, left);
}

inline PetitAlgebra petit_algebra(CoefficientRing::Ptr ring, SkewPolynomial f,
                                  std::string label = "S_f") {
    return petit_algebra_impl(std::move(ring), std::move(f), false, std::move(label));
}

inline PetitAlgebra petit_algebra_left(CoefficientRing::Ptr ring, SkewPolynomial f,
                                       std::string label = "fS") {
    return petit_algebra_impl(std::move(ring), std::move(f), true, std::move(label));
}

// Left Petit algebra of psi(f) over S^op[t; sigma^{-1}, -delta o sigma^{-1}]:
// the opposite of S_f up to the coefficient map below.
inline PetitAlgebra left_petit_of_psi(const PetitAlgebra& right) {
    return petit_algebra_left(right.ring->psi_target(), psi(right.f),
                              right.alg.label() + "~psi");
}

// F-linear matrix of g -> psi(g) between the right Petit algebra of f and
// the left Petit algebra of psi(f); an isomorphism from the opposite of S_f.
inline MatrixF psi_coefficient_map(const PetitAlgebra& right, const PetitAlgebra& leftp) {
    const std::size_t dim = right.alg.dim();
    MatrixF m(right.alg.field(), dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        SkewPolynomial g = right.poly_of(unit_axis(dim, b, right.alg.field()));
        auto coords = leftp.coords_of(psi(g));
        for (std::size_t r = 0; r < dim; ++r) m.at(r, b) = coords[r];
    }
    return m;
}

// The eigenspace of f: {g : deg g < m, f*g = 0 mod_r f}, as a subspace of the
// Petit algebra. Equals the right nucleus for non-invariant f.
inline MatrixF eigenspace_of_f(const PetitAlgebra& p) {
    const std::size_t dim = p.alg.dim();
    MatrixF cond(p.alg.field(), dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        SkewPolynomial g = p.poly_of(unit_axis(dim, b, p.alg.field()));
        SkewPolynomial r = p.left ? (p.f * g).mod_l(p.f) : (p.f * g).mod_r(p.f);
        auto coords = p.coords_of(r);
        for (std::size_t e = 0; e < dim; ++e) cond.at(e, b) = coords[e];
    }
    return cond.kernel();
}

// --- cyclic algebras -------------------------------------------------------------

struct CyclicAlgebra {
    GaloisCnAlgebra K;
    std::vector<FieldElement> d;  // coordinates in K
    PetitAlgebra petit;
};

// (K/F, sigma, d) = K[t;sigma] / K[t;sigma](t^n - d), dimension n^2 over F.
inline CyclicAlgebra cyclic_algebra(GaloisCnAlgebra K, std::vector<FieldElement> d,
                                    std::string label = "") {
    if (!K.is_unit(d)) throw std::invalid_argument("cyclic_algebra: d must be a unit of K");
    auto ring = CoefficientRing::make_sigma(K.algebra(), K.sigma());
    SkewPolynomial f =
        SkewPolynomial::monomial(ring, ring->one(), K.n()) - SkewPolynomial::constant(ring, d);
    if (label.empty()) {
        label = "(" + K.algebra().label() + ",s,d)";
    }
    PetitAlgebra p = petit_algebra(ring, std::move(f), std::move(label));
    return CyclicAlgebra{std::move(K), std::move(d), std::move(p)};
}

// Expected right nucleus of a cyclic algebra: span{K t^{js} : 0 <= j < r}
// with s the stabilizer exponent of d. Exact over fields; over etale K with
// zero divisors see cyclic_right_nucleus_annihilator below.
inline MatrixF cyclic_right_nucleus_expected(const CyclicAlgebra& ca, const StabilizerData& st) {
    const std::size_t n = ca.K.n();
    MatrixF rows(ca.petit.alg.field(), n * st.r, n * n);
    std::size_t rr = 0;
    for (std::size_t j = 0; j < st.r; ++j)
        for (std::size_t a = 0; a < n; ++a)
            rows.at(rr++, (j * st.s) * n + a) = FieldElement::one(ca.petit.alg.field());
    return rows.row_space();
}

// The exact right nucleus over any etale coefficient algebra:
// (t^n - d) g = sum_j (sigma^j(d) - d) b_j t^j modulo the right ideal, so
// Nuc_r = sum_j Ann_K(sigma^j(d) - d) t^j. Over a field every annihilator is
// 0 or K and this collapses to the span formula; over split etale K the
// differences sigma^j(d) - d can be nonzero zero divisors and the right
// nucleus is strictly larger than the span.
inline MatrixF cyclic_right_nucleus_annihilator(const CyclicAlgebra& ca) {
    const std::size_t n = ca.K.n();
    const Field& f = ca.petit.alg.field();
    std::vector<std::vector<FieldElement>> rows;
    for (std::size_t j = 0; j < n; ++j) {
        auto diff = ca.K.sigma_apply(ca.d, j);
        for (std::size_t e = 0; e < n; ++e) diff[e] = diff[e] - ca.d[e];
        MatrixF ann = ca.K.algebra().left_mult(diff).kernel();
        for (std::size_t r = 0; r < ann.rows(); ++r) {
            std::vector<FieldElement> row(n * n, FieldElement::zero(f));
            for (std::size_t e = 0; e < n; ++e) row[j * n + e] = ann.at(r, e);
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return MatrixF(f, 0, n * n);
    return MatrixF::from_rows(f, rows).row_space();
}

// --- generalized cyclic algebras ---------------------------------------------------

struct GeneralizedCyclic {
    CoefficientRing::Ptr B;       // coefficient algebra with its automorphism
    std::vector<FieldElement> d;  // coordinates in B
    std::size_t m = 0;            // order of sigma restricted to the center
    bool d_central = false;       // nucleus theorems need d in C
    Subalgebra center;            // C = Z(B)
    PetitAlgebra petit;
};

// (B, sigma, d) = B[t;sigma] / B[t;sigma](t^m - d) with m the order of
// sigma|_C. d in B^x is accepted; d outside the center is flagged.
inline GeneralizedCyclic generalized_cyclic(CoefficientRing::Ptr B, std::vector<FieldElement> d,
                                            std::string label = "(B,s,d)") {
    if (!B->is_unit(d)) throw std::invalid_argument("generalized_cyclic: d must be a unit");
    Subalgebra center = B->S().center();
    // order of sigma restricted to the center
    std::size_t m = 0;
    {
        MatrixF cur = B->sigma();
        for (std::size_t k = 1; k <= 4096; ++k) {
            bool fixes_center = true;
            for (std::size_t i = 0; i < center.dim() && fixes_center; ++i) {
                auto v = center.basis.row(i);
                if (cur.apply(v) != v) fixes_center = false;
            }
            if (fixes_center) {
                m = k;
                break;
            }
            cur = B->sigma() * cur;
        }
        if (m == 0) throw std::invalid_argument("generalized_cyclic: sigma|_C has no small order");
    }
    bool central = row_space_contains(center.basis, d);
    SkewPolynomial f =
        SkewPolynomial::monomial(B, B->one(), m) - SkewPolynomial::constant(B, d);
    PetitAlgebra p = petit_algebra(B, std::move(f), std::move(label));
    return GeneralizedCyclic{std::move(B), std::move(d), m, central, std::move(center),
                             std::move(p)};
}

// --- Menichetti algebras ---------------------------------------------------------

// c_{i,j} = (k_0 ... k_{j-1})^{-1} (k_i k_{i+1} ... k_{i+j-1}), indices mod m.
template <class MulFn, class InvFn, class OneFn>
std::vector<std::vector<FieldElement>> menichetti_c_table(
    const std::vector<std::vector<FieldElement>>& k, MulFn mul, InvFn inv, OneFn one) {
    const std::size_t m = k.size();
    std::vector<std::vector<FieldElement>> c(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            auto head = one();
            for (std::size_t t = 0; t < j; ++t) head = mul(head, k[t]);
            auto tail = one();
            for (std::size_t t = 0; t < j; ++t) tail = mul(tail, k[(i + t) % m]);
            c[i * m + j] = mul(inv(head), tail);
        }
    return c;
}

struct MenichettiData {
    GaloisCnAlgebra K;
    std::vector<std::vector<FieldElement>> k;  // k_0..k_{m-1}, coordinates in K
    std::vector<std::vector<FieldElement>> c;  // c[i*m+j]
    AlgebraSC alg;                             // dim m^2 over F, basis index i*m + u (z-major)
};

// (K/F, k_0, ..., k_{m-1}) with tau_j := sigma^j and the product
// (a z_i)(b z_j) = tau_j(a) b c_{j,i} z_{i+j}.
inline MenichettiData menichetti(GaloisCnAlgebra K, std::vector<std::vector<FieldElement>> k,
                                 std::string label = "") {
    const std::size_t m = K.n();
    if (k.size() != m) throw std::invalid_argument("menichetti: need m scalars k_i");
    for (const auto& ki : k)
        if (!K.is_unit(ki)) throw std::invalid_argument("menichetti: k_i must be units");
    const AlgebraSC& ka = K.algebra();
    auto c = menichetti_c_table(
        k, [&](const auto& a, const auto& b) { return ka.multiply(a, b); },
        [&](const auto& a) {
            auto sol = ka.left_mult(a).solve(ka.unit());
            if (!sol) throw std::invalid_argument("menichetti: non-invertible scalar");
            return *sol;
        },
        [&] { return ka.unit(); });
    const Field& F = K.base();
    const std::size_t dim = m * m;
    std::vector<FieldElement> sc(dim * dim * dim, FieldElement::zero(F));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t u = 0; u < m; ++u)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t v = 0; v < m; ++v) {
                    // (b_u z_i)(b_v z_j) = sigma^j(b_u) b_v c_{j,i} z_{i+j}
                    auto w = ka.multiply(ka.multiply(K.sigma_apply(ka.basis_vec(u), j),
                                                     ka.basis_vec(v)),
                                         c[j * m + i]);
                    std::size_t zi = (i + j) % m;
                    for (std::size_t e = 0; e < m; ++e)
                        sc[((i * m + u) * dim + (j * m + v)) * dim + (zi * m + e)] = w[e];
                }
    std::vector<FieldElement> unit(dim, FieldElement::zero(F));
    for (std::size_t e = 0; e < m; ++e) unit[e] = ka.unit()[e];  // 1_K z_0
    if (label.empty()) label = "Men(" + ka.label() + ")";
    AlgebraSC alg(F, dim, std::move(sc), std::move(unit), std::move(label));
    return MenichettiData{std::move(K), std::move(k), std::move(c), std::move(alg)};
}

// Multiplication via the m x m block matrix form, kept as an independent
// evaluation route: (x y)_r = sum_j c_{j, r-j} sigma^j(x_{r-j}) y_j.
inline std::vector<FieldElement> menichetti_matrix_multiply(const MenichettiData& md,
                                                            const std::vector<FieldElement>& x,
                                                            const std::vector<FieldElement>& y) {
    const std::size_t m = md.K.n();
    const AlgebraSC& ka = md.K.algebra();
    std::vector<FieldElement> out(m * m, FieldElement::zero(md.K.base()));
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t i = (r + m - j) % m;
            std::vector<FieldElement> xi(x.begin() + static_cast<std::ptrdiff_t>(i * m),
                                         x.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
            std::vector<FieldElement> yj(y.begin() + static_cast<std::ptrdiff_t>(j * m),
                                         y.begin() + static_cast<std::ptrdiff_t>((j + 1) * m));
            auto term = ka.multiply(md.c[j * m + i], ka.multiply(md.K.sigma_apply(xi, j), yj));
            for (std::size_t e = 0; e < m; ++e) out[r * m + e] = out[r * m + e] + term[e];
        }
    return out;
}

struct GeneralizedMenichettiData {
    CoefficientRing::Ptr D;  // coefficient algebra with its automorphism
    std::size_t m = 0;
    std::vector<std::vector<FieldElement>> k;  // central units, coordinates in D
    std::vector<std::vector<FieldElement>> c;
    AlgebraSC alg;  // dim m * dim(D) over F, basis index i*dim(D) + u
};

// (D, sigma, k_0, ..., k_{m-1}) on D^m with the same product rule, k_i
// central units of D.
inline GeneralizedMenichettiData generalized_menichetti(CoefficientRing::Ptr D,
                                                        std::vector<std::vector<FieldElement>> k,
                                                        std::string label = "GenMen") {
    Subalgebra center = D->S().center();
    const std::size_t m = k.size();
    if (m == 0) throw std::invalid_argument("generalized_menichetti: need at least one scalar");
    for (const auto& ki : k) {
        if (!D->is_unit(ki))
            throw std::invalid_argument("generalized_menichetti: k_i must be units");
        if (!row_space_contains(center.basis, ki))
            throw std::invalid_argument("generalized_menichetti: k_i must be central");
    }
    // sigma|_C must have order m
    {
        MatrixF cur = MatrixF::identity(D->base(), D->dim());
        for (std::size_t t = 0; t < m; ++t) cur = D->sigma() * cur;
        for (std::size_t i = 0; i < center.dim(); ++i) {
            auto v = center.basis.row(i);
            if (cur.apply(v) != v)
                throw std::invalid_argument("generalized_menichetti: sigma|_C order is not m");
        }
    }
    const AlgebraSC& da = D->S();
    auto c = menichetti_c_table(
        k, [&](const auto& a, const auto& b) { return da.multiply(a, b); },
        [&](const auto& a) { return D->inverse(a); }, [&] { return da.unit(); });
    const Field& F = D->base();
    const std::size_t ds = da.dim();
    const std::size_t dim = m * ds;
    std::vector<FieldElement> sc(dim * dim * dim, FieldElement::zero(F));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t u = 0; u < ds; ++u)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t v = 0; v < ds; ++v) {
                    auto su = da.basis_vec(u);
                    for (std::size_t t = 0; t < j; ++t) su = D->sigma().apply(su);
                    auto w = da.multiply(da.multiply(su, da.basis_vec(v)), c[j * m + i]);
                    std::size_t zi = (i + j) % m;
                    for (std::size_t e = 0; e < ds; ++e)
                        sc[((i * ds + u) * dim + (j * ds + v)) * dim + (zi * ds + e)] = w[e];
                }
    std::vector<FieldElement> unit(dim, FieldElement::zero(F));
    for (std::size_t e = 0; e < ds; ++e) unit[e] = da.unit()[e];
    AlgebraSC alg(F, dim, std::move(sc), std::move(unit), std::move(label));
    return GeneralizedMenichettiData{std::move(D), m, std::move(k), std::move(c), std::move(alg)};
}

// --- semiassociativity ------------------------------------------------------------

struct SemiassocReport {
    bool etale = false;
    bool in_nucleus = false;
    bool dim_match = false;
    std::size_t faithful_rank = 0;
    std::size_t expected_rank = 0;
    bool faithful = false;
    bool semiassociative = false;
};

// A is E-semiassociative iff E is etale, E lies in Nuc(A), dim A = (dim E)^2
// and the action map E (x) E -> End(A), e (x) e' -> (a -> e a e'), has full
// rank (dim E)^2. Cyclicity then follows from faithfulness plus the
// dimension count.
inline SemiassocReport semiassoc_check(const AlgebraSC& A, const MatrixF& e_rows) {
    Subalgebra E = A.subalgebra(e_rows);  // throws if not closed
    if (!E.unital) throw std::invalid_argument("semiassoc_check: E must be unital");
    SemiassocReport rep;
    const std::size_t n = A.dim(), de = E.dim();
    rep.expected_rank = de * de;
    const AlgebraSC& ei = E.induced();
    rep.etale = ei.is_commutative() && ei.is_associative() && etale::trace_form_nondegenerate(ei);

    rep.in_nucleus = true;
    for (std::size_t i = 0; i < de && rep.in_nucleus; ++i) {
        auto e = E.basis.row(i);
        for (std::size_t x = 0; x < n && rep.in_nucleus; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                auto bx = A.basis_vec(x), by = A.basis_vec(y);
                if (!AlgebraSC::vec_is_zero(A.associator(e, bx, by)) ||
                    !AlgebraSC::vec_is_zero(A.associator(bx, e, by)) ||
                    !AlgebraSC::vec_is_zero(A.associator(bx, by, e))) {
                    rep.in_nucleus = false;
                    break;
                }
            }
    }

    rep.dim_match = (de * de == n);

    MatrixF action(A.field(), n * n, de * de);
    for (std::size_t i = 0; i < de; ++i)
        for (std::size_t j = 0; j < de; ++j) {
            auto e1 = E.basis.row(i), e2 = E.basis.row(j);
            for (std::size_t u = 0; u < n; ++u) {
                auto w = A.multiply(e1, A.multiply(A.basis_vec(u), e2));
                for (std::size_t r = 0; r < n; ++r) action.at(u * n + r, i * de + j) = w[r];
            }
        }
    rep.faithful_rank = action.rank();
    rep.faithful = rep.faithful_rank == rep.expected_rank;

    rep.semiassociative = rep.etale && rep.in_nucleus && rep.dim_match && rep.faithful;
    return rep;
}

// A is cyclic over E^e with generator a iff span{e a e'} = A.
inline bool cyclic_module_check(const AlgebraSC& A, const MatrixF& e_rows,
                                const std::vector<FieldElement>& a) {
    Subalgebra E = A.subalgebra(e_rows);
    const std::size_t n = A.dim(), de = E.dim();
    MatrixF span(A.field(), de * de, n);
    for (std::size_t i = 0; i < de; ++i)
        for (std::size_t j = 0; j < de; ++j) {
            auto w = A.multiply(E.basis.row(i), A.multiply(a, E.basis.row(j)));
            for (std::size_t r = 0; r < n; ++r) span.at(i * de + j, r) = w[r];
        }
    return span.rank() == n;
}

// --- splitting certificates ---------------------------------------------------------

struct SplitCertificate {
    std::size_t degree = 0;
    std::size_t idempotent_count = 0;
    enum class Verdict { split_certified, not_split_certified, inconclusive } verdict =
        Verdict::inconclusive;
    std::string note;
};

// Splitness criterion: A of degree n is split iff F^n is a unital subalgebra
// of Nuc(A). E is a commutative etale subalgebra of the nucleus; counting its
// primitive idempotents certifies splitness from below. "not split" is only
// certified when E is the entire (commutative) nucleus, or when the caller
// supplies an upper bound for orthogonal idempotent families in the nucleus
// (e.g. n for a nucleus isomorphic to M_n(K)).
inline SplitCertificate split_certificate(const AlgebraSC& A, const MatrixF& e_rows,
                                          std::optional<std::size_t> nucleus_idempotent_bound = {}) {
    SplitCertificate cert;
    std::size_t n = A.dim();
    std::size_t deg = static_cast<std::size_t>(std::llround(std::sqrt(double(n))));
    if (deg * deg != n) throw std::invalid_argument("split_certificate: dim A is not a square");
    cert.degree = deg;

    Subalgebra E = A.subalgebra(e_rows);
    if (!E.unital) throw std::invalid_argument("split_certificate: E must be unital");
    const AlgebraSC& ei = E.induced();
    if (!ei.is_commutative() || !ei.is_associative() || !etale::trace_form_nondegenerate(ei))
        throw std::invalid_argument("split_certificate: E is not etale");
    for (std::size_t i = 0; i < E.dim(); ++i) {
        auto e = E.basis.row(i);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (!AlgebraSC::vec_is_zero(A.associator(e, A.basis_vec(x), A.basis_vec(y))) ||
                    !AlgebraSC::vec_is_zero(A.associator(A.basis_vec(x), e, A.basis_vec(y))) ||
                    !AlgebraSC::vec_is_zero(A.associator(A.basis_vec(x), A.basis_vec(y), e)))
                    throw std::invalid_argument("split_certificate: E is not in the nucleus");
    }

    cert.idempotent_count = etale::count_primitive_idempotents(ei);
    if (cert.idempotent_count >= deg) {
        cert.verdict = SplitCertificate::Verdict::split_certified;
        cert.note = "F^degree embeds into E";
        return cert;
    }
    Subalgebra nuc = A.nucleus_full();
    if (nuc.dim() == E.dim() && same_row_space(nuc.basis, E.basis)) {
        cert.verdict = SplitCertificate::Verdict::not_split_certified;
        cert.note = "E is the whole nucleus and has too few idempotents";
        return cert;
    }
    if (nucleus_idempotent_bound && *nucleus_idempotent_bound < deg) {
        cert.verdict = SplitCertificate::Verdict::not_split_certified;
        cert.note = "orthogonal idempotent bound below the degree";
        return cert;
    }
    cert.verdict = SplitCertificate::Verdict::inconclusive;
    cert.note = "E is a proper etale subalgebra of the nucleus";
    return cert;
}

// --- matrix units from idempotents ----------------------------------------------------

struct MatrixUnitsResult {
    SkewSet c;
    MatrixF to_parent;  // columns: image of e_{ij} (index i*n+j) in A
};

// From a complete orthogonal family of nucleus idempotents with
// one-dimensional Peirce components, choose normalized matrix units and read
// off a reduced skew set. Normalization: x_{ii} = e_i, x_{0j} is the
// canonical first basis vector of e_0 A e_j, x_{j0} is scaled so that
// x_{0j} x_{j0} = e_0, and x_{ij} = x_{i0} x_{0j} for the rest.
inline MatrixUnitsResult matrix_units_from_idempotents(
    const AlgebraSC& A, const std::vector<std::vector<FieldElement>>& idem) {
    const std::size_t n = idem.size();
    const std::size_t dim = A.dim();
    if (n * n != dim)
        throw std::invalid_argument("matrix_units: number of idempotents does not match degree");
    const Field& F = A.field();
    // validate the family
    auto sum = A.zero_vec();
    for (const auto& e : idem) {
        if (A.multiply(e, e) != e) throw std::invalid_argument("matrix_units: not idempotent");
        for (std::size_t r = 0; r < dim; ++r) sum[r] = sum[r] + e[r];
    }
    if (sum != A.unit())
        throw std::invalid_argument("matrix_units: idempotents do not sum to 1");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && !AlgebraSC::vec_is_zero(A.multiply(idem[i], idem[j])))
                throw std::invalid_argument("matrix_units: idempotents are not orthogonal");
        }
    for (const auto& e : idem)
        for (std::size_t x = 0; x < dim; ++x)
            for (std::size_t y = 0; y < dim; ++y)
                if (!AlgebraSC::vec_is_zero(A.associator(e, A.basis_vec(x), A.basis_vec(y))) ||
                    !AlgebraSC::vec_is_zero(A.associator(A.basis_vec(x), e, A.basis_vec(y))) ||
                    !AlgebraSC::vec_is_zero(A.associator(A.basis_vec(x), A.basis_vec(y), e)))
                    throw std::invalid_argument("matrix_units: idempotents not in the nucleus");

    // Peirce components e_i A e_j
    auto peirce = [&](std::size_t i, std::size_t j) {
        MatrixF li = A.left_mult(idem[i]) - MatrixF::identity(F, dim);
        MatrixF rj = A.right_mult(idem[j]) - MatrixF::identity(F, dim);
        return MatrixF::vstack(li, rj).kernel();
    };

    std::vector<std::vector<FieldElement>> x(n * n);
    for (std::size_t i = 0; i < n; ++i) x[i * n + i] = idem[i];
    auto scalar_ratio = [&](const std::vector<FieldElement>& v,
                            const std::vector<FieldElement>& w) {
        // v = lambda w; returns lambda (throws when not proportional)
        std::size_t r = 0;
        while (r < dim && w[r].is_zero()) ++r;
        if (r == dim) throw std::invalid_argument("matrix_units: zero Peirce product");
        FieldElement lam = v[r] / w[r];
        for (std::size_t e = 0; e < dim; ++e)
            if (v[e] != lam * w[e])
                throw std::invalid_argument("matrix_units: product escapes its Peirce line");
        return lam;
    };
    for (std::size_t j = 1; j < n; ++j) {
        MatrixF p0j = peirce(0, j);
        MatrixF pj0 = peirce(j, 0);
        if (p0j.rows() != 1 || pj0.rows() != 1)
            throw std::invalid_argument("matrix_units: Peirce component of wrong dimension");
        x[0 * n + j] = p0j.row(0);
        // x_{j0} scaled so that x_{0j} x_{j0} = e_0
        auto prod = A.multiply(x[0 * n + j], pj0.row(0));
        FieldElement lam = scalar_ratio(prod, idem[0]);
        if (lam.is_zero()) throw std::invalid_argument("matrix_units: degenerate pairing");
        auto scaled = pj0.row(0);
        FieldElement inv = lam.inverse();
        for (auto& e : scaled) e = e * inv;
        x[j * n + 0] = scaled;
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) {
            if (i == j) continue;
            x[i * n + j] = A.multiply(x[i * n + 0], x[0 * n + j]);
            if (AlgebraSC::vec_is_zero(x[i * n + j]))
                throw std::invalid_argument("matrix_units: vanishing matrix unit");
        }

    // read the skew set off the chosen units and validate it
    std::vector<FieldElement> centries(n * n * n, FieldElement::zero(F));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                auto prod = A.multiply(x[i * n + k], x[k * n + j]);
                centries[(i * n + k) * n + j] = scalar_ratio(prod, x[i * n + j]);
            }
    SkewSet cs(n, std::move(centries));
    // orthogonality products must vanish
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (j != k &&
                        !AlgebraSC::vec_is_zero(A.multiply(x[i * n + j], x[k * n + l])))
                        throw std::invalid_argument("matrix_units: orthogonality fails");

    MatrixF m(F, dim, dim);
    for (std::size_t col = 0; col < n * n; ++col)
        for (std::size_t r = 0; r < dim; ++r) m.at(r, col) = x[col][r];
    AlgebraSC target = skew_matrix_algebra(F, cs);
    if (!target.verify_isomorphism(A, m))
        throw std::logic_error("matrix_units: presentation does not verify");
    return MatrixUnitsResult{std::move(cs), std::move(m)};
}

// --- tensor of a central simple algebra with a cyclic algebra ----------------------------

struct TensorCsaReport {
    AlgebraSC tensor_side;
    GeneralizedCyclic generalized_side;
    bool iso_verified = false;
    bool d_in_F = false;
    std::size_t nucleus_dim = 0;
    bool nucleus_is_coefficient_algebra = false;
    std::size_t nucleus_center_dim = 0;
};

// Verifies D0 (x) (E/F,tau,d) = (D0 (x) E)[t;tau~] / (t^m - 1(x)d) via the
// canonical coefficient map, and computes the nucleus data.
inline TensorCsaReport tensor_csa_cyclic(const AlgebraSC& d0, const GaloisCnAlgebra& E,
                                         const std::vector<FieldElement>& d) {
    if (!d0.is_associative())
        throw std::invalid_argument("tensor_csa_cyclic: D0 must be associative");
    if (d0.center().dim() != 1)
        throw std::invalid_argument("tensor_csa_cyclic: D0 must be central over F");
    if (!same_field(d0.field(), E.base()))
        throw std::invalid_argument("tensor_csa_cyclic: field mismatch");

    const std::size_t m = E.n();
    const std::size_t nd = d0.dim();
    CyclicAlgebra cyc = cyclic_algebra(E, d);
    AlgebraSC tensor_side = AlgebraSC::tensor(d0, cyc.petit.alg);
    tensor_side.set_label("D0(x)" + cyc.petit.alg.label());

    // B = D0 (x) E with tau~ = id (x) tau, d_B = 1 (x) d
    AlgebraSC b = AlgebraSC::tensor(d0, E.algebra());
    MatrixF taut(b.field(), nd * m, nd * m);
    for (std::size_t u = 0; u < nd; ++u)
        for (std::size_t v = 0; v < m; ++v)
            for (std::size_t vv = 0; vv < m; ++vv)
                taut.at(u * m + vv, u * m + v) = E.sigma().at(vv, v);
    std::vector<FieldElement> db(nd * m, FieldElement::zero(b.field()));
    for (std::size_t u = 0; u < nd; ++u)
        for (std::size_t v = 0; v < m; ++v) db[u * m + v] = d0.unit()[u] * d[v];
    auto ring = CoefficientRing::make_sigma(std::move(b), std::move(taut));
    GeneralizedCyclic gen = generalized_cyclic(ring, db, "(D0(x)E,s~,d)");

    TensorCsaReport rep{std::move(tensor_side), std::move(gen)};
    rep.d_in_F = E.in_base_field(d);

    // canonical coefficient map a (x) (x_v t^j) -> (a (x) x_v) t^j
    const std::size_t dim = rep.tensor_side.dim();
    MatrixF cmap(rep.tensor_side.field(), dim, dim);
    for (std::size_t u = 0; u < nd; ++u)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t v = 0; v < m; ++v) {
                std::size_t from = u * (m * m) + (j * m + v);
                std::size_t to = j * (nd * m) + (u * m + v);
                cmap.at(to, from) = FieldElement::one(rep.tensor_side.field());
            }
    rep.iso_verified = rep.tensor_side.verify_isomorphism(rep.generalized_side.petit.alg, cmap);

    Subalgebra nuc = rep.tensor_side.nucleus_full();
    rep.nucleus_dim = nuc.dim();
    // expected: the t^0 block D0 (x) E (x) 1
    MatrixF expected(rep.tensor_side.field(), nd * m, dim);
    for (std::size_t u = 0; u < nd; ++u)
        for (std::size_t v = 0; v < m; ++v)
            expected.at(u * m + v, u * (m * m) + v) = FieldElement::one(rep.tensor_side.field());
    rep.nucleus_is_coefficient_algebra = same_row_space(nuc.basis, expected);
    rep.nucleus_center_dim = nuc.induced().center().dim();
    return rep;
}

}  // namespace semialg
