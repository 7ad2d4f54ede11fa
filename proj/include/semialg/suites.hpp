#pragma once

// Named verification suites over the construction matrix: nucleus structure,
// opposite algebras, division criteria, splitting, semiassociativity, Brauer
// monoid distinguishers and the differential identities. Shared by the CLI
// `verify` command and the acceptance binary.

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semialg/recipe.hpp"

namespace semialg {
namespace suites {

struct CaseResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;

    bool all_pass() const {
        for (const auto& c : cases)
            if (!c.pass) return false;
        return !cases.empty();
    }

    void add(std::string name, bool pass, std::string detail = "") {
        cases.push_back({std::move(name), pass, std::move(detail)});
    }

    json to_findings() const {
        json arr = json::array();
        for (const auto& c : cases) {
            json j;
            j["case"] = c.name;
            j["pass"] = c.pass;
            if (!c.detail.empty()) j["detail"] = c.detail;
            arr.push_back(std::move(j));
        }
        json out;
        out["cases"] = std::move(arr);
        out["total"] = cases.size();
        std::size_t passed = 0;
        for (const auto& c : cases)
            if (c.pass) ++passed;
        out["passed"] = passed;
        return out;
    }
};

struct Options {
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultCap;
    std::size_t samples = 50;
};

// --- shared construction matrix -----------------------------------------------

struct MatrixEntry {
    std::string name;
    AlgebraSC alg;
    std::optional<PetitAlgebra> petit;
    std::optional<bool> d_in_base;  // only for t^m - d shaped instances
    MatrixF etale_rows;
};

// d in F for f = t^m - d over S[t;sigma,delta]: d central, fixed by sigma,
// annihilated by delta.
inline bool distinguished_in_base(const CoefficientRing& ring,
                                  const std::vector<FieldElement>& d) {
    if (ring.apply_sigma(d) != d) return false;
    if (!AlgebraSC::vec_is_zero(ring.apply_delta(d))) return false;
    Subalgebra c = ring.S().center();
    return row_space_contains(c.basis, d);
}

inline MatrixF coefficient_block(const AlgebraSC& a, std::size_t block, const Field& f) {
    MatrixF rows(f, block, a.dim());
    for (std::size_t i = 0; i < block; ++i) rows.at(i, i) = FieldElement::one(f);
    return rows;
}

// Cyclic instances: all proper d for field extensions, sampled units for the
// split etale algebras.
inline std::vector<MatrixEntry> cyclic_matrix(std::uint64_t seed, bool proper_only = false) {
    std::vector<MatrixEntry> out;
    for (std::uint32_t q : {2u, 3u}) {
        Field F = FieldDescriptor::prime(q);
        for (std::size_t n : {2u, 3u, 4u}) {
            GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, n);
            Field kf = K.component_field();
            for (std::uint64_t idx = 1; idx < kf->order(); ++idx) {
                FieldElement dn = FieldElement::from_index(kf, idx);
                auto d = K.to_coords(dn);
                bool in_f = K.in_base_field(d);
                if (proper_only && in_f) continue;
                CyclicAlgebra c = cyclic_algebra(K, d);
                std::ostringstream name;
                name << "cyclic q" << q << " n" << n << " d=" << dn.to_string();
                MatrixF e_rows = coefficient_block(c.petit.alg, n, F);
                AlgebraSC alg = c.petit.alg;
                out.push_back({name.str(), std::move(alg), std::move(c.petit), in_f,
                               std::move(e_rows)});
            }
            // split etale: up to 10 sampled units
            GaloisCnAlgebra S = GaloisCnAlgebra::split_etale(F, n);
            std::vector<std::uint64_t> unit_idx;
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < n; ++i) total *= q;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                auto d = S.algebra().element_from_index(idx);
                if (S.is_unit(d)) unit_idx.push_back(idx);
            }
            std::mt19937_64 rng(seed * 1000 + q * 10 + n);
            std::vector<std::uint64_t> chosen;
            std::set<std::uint64_t> seen;
            while (chosen.size() < std::min<std::size_t>(10, unit_idx.size())) {
                std::uint64_t pick = unit_idx[rng() % unit_idx.size()];
                if (seen.insert(pick).second) chosen.push_back(pick);
            }
            for (std::uint64_t idx : chosen) {
                auto d = S.algebra().element_from_index(idx);
                bool in_f = S.in_base_field(d);
                if (proper_only && in_f) continue;
                CyclicAlgebra c = cyclic_algebra(S, d);
                std::ostringstream name;
                name << "cyclic-split q" << q << " n" << n << " d#" << idx;
                MatrixF e_rows = coefficient_block(c.petit.alg, n, F);
                AlgebraSC alg = c.petit.alg;
                out.push_back({name.str(), std::move(alg), std::move(c.petit), in_f,
                               std::move(e_rows)});
            }
        }
    }
    return out;
}

// B = M_2(F_4) over F_2 with entrywise Frobenius; d = w (proper) and d = 1.
inline std::vector<MatrixEntry> generalized_cyclic_matrix() {
    std::vector<MatrixEntry> out;
    for (const char* dtext : {"w", "1"}) {
        Recipe r = Recipe::parse(std::string("gencyclic:M2(F4)/F2:d=") + dtext);
        Constructed c = build_recipe(r);
        out.push_back({std::string("gencyclic M2(F4) d=") + dtext, c.alg, std::move(c.petit),
                       c.d_in_base, c.etale_rows});
    }
    return out;
}

inline std::vector<MatrixEntry> menichetti_matrix() {
    std::vector<MatrixEntry> out;
    for (std::uint32_t q : {2u, 3u}) {
        Field F = FieldDescriptor::prime(q);
        for (std::size_t m : {2u, 3u}) {
            GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, m);
            auto g = K.algebra().basis_vec(1);
            std::vector<std::vector<std::vector<FieldElement>>> ksets;
            ksets.push_back(std::vector<std::vector<FieldElement>>(m, K.algebra().unit()));
            {
                std::vector<std::vector<FieldElement>> ks(m, K.algebra().unit());
                ks[m - 1] = g;
                ksets.push_back(ks);
            }
            int tag = 0;
            for (auto& ks : ksets) {
                GaloisCnAlgebra Kc = GaloisCnAlgebra::cyclic_ext(F, m);
                MenichettiData md = menichetti(Kc, ks);
                std::ostringstream name;
                name << "menichetti q" << q << " m" << m << " k#" << tag++;
                out.push_back({name.str(), md.alg, std::nullopt, std::nullopt,
                               coefficient_block(md.alg, m, F)});
            }
        }
    }
    return out;
}

inline std::vector<MatrixEntry> skew_matrix_matrix() {
    std::vector<MatrixEntry> out;
    auto diag_rows = [](const AlgebraSC& a, std::size_t n, const Field& f) {
        MatrixF rows(f, n, a.dim());
        for (std::size_t i = 0; i < n; ++i) rows.at(i, i * n + i) = FieldElement::one(f);
        return rows;
    };
    {
        Field F = FieldDescriptor::prime(2);
        AlgebraSC a = skew_matrix_algebra(F, SkewSet::ones(F, 2));
        out.push_back({"skewmatrix M2(F2)", a, std::nullopt, std::nullopt, diag_rows(a, 2, F)});
    }
    {
        Field F = FieldDescriptor::extension(2, 2);
        SkewSet cs = SkewSet::ones(F, 2);
        cs.at(1, 0, 1) = FieldElement::generator(F);
        AlgebraSC a = skew_matrix_algebra(F, cs);
        out.push_back({"skewmatrix M2(F4) lambda=w", a, std::nullopt, std::nullopt,
                       diag_rows(a, 2, F)});
    }
    {
        Field F = FieldDescriptor::prime(3);
        SkewSet cs = SkewSet::ones(F, 3);
        cs.at(0, 1, 2) = FieldElement::from_int(F, 2);
        cs.at(2, 0, 1) = FieldElement::from_int(F, 2);
        AlgebraSC a = skew_matrix_algebra(F, cs);
        out.push_back({"skewmatrix M3(F3)", a, std::nullopt, std::nullopt, diag_rows(a, 3, F)});
    }
    return out;
}

// Petit instances outside the cyclic family: t^2 over F_4 (associative,
// semiassociative, not simple).
inline std::vector<MatrixEntry> petit_matrix() {
    std::vector<MatrixEntry> out;
    Field F = FieldDescriptor::prime(2);
    GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, 2);
    auto ring = CoefficientRing::make_sigma(K.algebra(), K.sigma());
    SkewPolynomial t = SkewPolynomial::t(ring);
    PetitAlgebra p = petit_algebra(ring, t * t, "S_{t^2}");
    MatrixF e_rows = coefficient_block(p.alg, 2, F);
    AlgebraSC alg = p.alg;
    out.push_back({"petit t^2 over F4", std::move(alg), std::move(p), true, std::move(e_rows)});
    return out;
}

// --- criterion 1: nucleus theorem ------------------------------------------------

inline SuiteResult nucleus_theorem(const Options& opt) {
    SuiteResult res{"nucleus-theorem", {}};
    for (std::uint32_t q : {2u, 3u}) {
        Field F = FieldDescriptor::prime(q);
        for (std::size_t n : {2u, 3u, 4u}) {
            GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, n);
            Field kf = K.component_field();
            std::size_t checked = 0, ok = 0, nuc_ok = 0;
            for (std::uint64_t idx = 1; idx < kf->order(); ++idx) {
                FieldElement dn = FieldElement::from_index(kf, idx);
                auto d = K.to_coords(dn);
                if (K.in_base_field(d)) continue;
                CyclicAlgebra c = cyclic_algebra(K, d);
                StabilizerData st = K.stabilizer(d);
                Subalgebra nr = c.petit.alg.nucleus_right();
                if (nr.basis == cyclic_right_nucleus_expected(c, st)) ++ok;
                Subalgebra nu = c.petit.alg.nucleus_full();
                if (nu.basis == coefficient_block(c.petit.alg, n, F).row_space()) ++nuc_ok;
                ++checked;
            }
            std::ostringstream name, detail;
            name << "field case q" << q << " n" << n;
            detail << ok << "/" << checked << " right-nucleus matches, " << nuc_ok << "/"
                   << checked << " Nuc=K";
            res.add(name.str(), ok == checked && nuc_ok == checked && checked > 0, detail.str());

            // split etale case with sampled units
            GaloisCnAlgebra S = GaloisCnAlgebra::split_etale(F, n);
            std::vector<std::uint64_t> unit_idx;
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < n; ++i) total *= q;
            for (std::uint64_t uidx = 0; uidx < total; ++uidx)
                if (S.is_unit(S.algebra().element_from_index(uidx))) unit_idx.push_back(uidx);
            std::mt19937_64 rng(opt.seed * 1000 + q * 10 + n);
            std::set<std::uint64_t> chosen;
            while (chosen.size() < std::min<std::size_t>(10, unit_idx.size()))
                chosen.insert(unit_idx[rng() % unit_idx.size()]);
            std::size_t sok = 0, aok = 0;
            for (std::uint64_t uidx : chosen) {
                auto d = S.algebra().element_from_index(uidx);
                CyclicAlgebra c = cyclic_algebra(S, d);
                StabilizerData st = S.stabilizer(d);
                MatrixF nr = c.petit.alg.nucleus_right().basis;
                if (nr == cyclic_right_nucleus_expected(c, st)) ++sok;
                if (nr == cyclic_right_nucleus_annihilator(c)) ++aok;
            }
            // The span formula is exact over fields but fails over split
            // etale coefficients whenever sigma^j(d) - d is a nonzero zero
            // divisor; the annihilator span is the exact description. Both
            // comparisons are reported: the first as stated, the second as
            // the corrected formula.
            std::ostringstream sname, sdetail;
            sname << "split case q" << q << " n" << n;
            sdetail << sok << "/" << chosen.size() << " right-nucleus matches span formula";
            res.add(sname.str(), sok == chosen.size() && !chosen.empty(), sdetail.str());
            std::ostringstream aname, adetail;
            aname << "split case q" << q << " n" << n << " (annihilator span)";
            adetail << aok << "/" << chosen.size() << " right-nucleus matches corrected formula";
            res.add(aname.str(), aok == chosen.size() && !chosen.empty(), adetail.str());
        }
    }
    return res;
}

// --- criterion 2: opposite algebras ------------------------------------------------

inline SuiteResult opposite(const Options&) {
    SuiteResult res{"opposite", {}};
    Field f2 = FieldDescriptor::prime(2);

    auto check_psi_iso = [&](const CyclicAlgebra& c, const std::string& name) {
        PetitAlgebra leftp = left_petit_of_psi(c.petit);
        // psi(t^n - d) = t^n - sigma^{-n}(d) = t^n - d here
        SkewPolynomial expect =
            SkewPolynomial::monomial(leftp.ring, leftp.ring->one(), c.K.n()) -
            SkewPolynomial::constant(leftp.ring, c.d);
        bool shape = leftp.f == expect;
        MatrixF m = psi_coefficient_map(c.petit, leftp);
        bool iso = c.petit.alg.opposite().verify_isomorphism(leftp.alg, m);
        res.add(name + " psi shape", shape);
        res.add(name + " coefficient map isomorphism", iso);
    };

    {
        GaloisCnAlgebra k4 = GaloisCnAlgebra::cyclic_ext(f2, 2);
        check_psi_iso(cyclic_algebra(k4, k4.algebra().basis_vec(1)), "(F4/F2,s,w)");
    }
    {
        GaloisCnAlgebra k8 = GaloisCnAlgebra::cyclic_ext(f2, 3);
        // d = x, a generator of F_8 over F_2
        check_psi_iso(cyclic_algebra(k8, k8.algebra().basis_vec(1)), "(F8/F2,s,x)");
    }
    {
        // K = F_16, d in F_4 \ F_2: s = 2; Nuc_l of the opposite has dim 8 != dim K
        GaloisCnAlgebra k16 = GaloisCnAlgebra::cyclic_ext(f2, 4);
        Field f16 = k16.component_field();
        bool done = false;
        for (std::uint64_t i = 0; i < 16 && !done; ++i) {
            FieldElement dn = FieldElement::from_index(f16, i);
            if (dn.frobenius(2) == dn && dn.frobenius(1) != dn) {
                auto d = k16.to_coords(dn);
                CyclicAlgebra c = cyclic_algebra(k16, d);
                AlgebraSC op = c.petit.alg.opposite();
                std::size_t nl = op.nucleus_left().dim();
                std::ostringstream detail;
                detail << "Nuc_l(op) dim " << nl << ", dim K = 4";
                res.add("(F16/F2,s,d in F4) opposite left nucleus", nl == 8 && nl != 4,
                        detail.str());
                done = true;
            }
        }
        if (!done) res.add("(F16/F2,s,d in F4) found d", false);
    }
    return res;
}

// --- criterion 3: division-criteria triple agreement -------------------------------

inline SuiteResult division_criteria(const Options& opt) {
    SuiteResult res{"division-criteria", {}};
    struct Inst {
        std::uint32_t p;
        std::uint32_t base_k;
        std::size_t n;
    };
    for (Inst inst : {Inst{2, 1, 2}, Inst{3, 1, 2}, Inst{2, 1, 3}}) {
        Field F = FieldDescriptor::prime(inst.p);
        GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, inst.n);
        Field kf = K.component_field();
        auto ring = CoefficientRing::make_sigma(K.algebra(), K.sigma());
        std::size_t checked = 0, agree = 0, division_proper = 0, proper = 0;
        for (std::uint64_t idx = 1; idx < kf->order(); ++idx) {
            FieldElement dn = FieldElement::from_index(kf, idx);
            auto d = K.to_coords(dn);
            SkewPolynomial f = SkewPolynomial::monomial(ring, ring->one(), inst.n) -
                               SkewPolynomial::constant(ring, d);
            bool irr = skew::is_irreducible_exhaustive(f, opt.cap);
            CyclicAlgebra c = cyclic_algebra(K, d);
            bool div = c.petit.alg.is_division_exhaustive(opt.cap).division;
            bool nc = skew::norm_criterion(f, opt.cap).no_solution;
            if (irr == div && div == nc) ++agree;
            if (!K.in_base_field(d)) {
                ++proper;
                if (div) ++division_proper;
            }
            ++checked;
        }
        std::ostringstream name, detail;
        name << "K=F" << kf->order() << " n=" << inst.n;
        detail << agree << "/" << checked << " triple agreement; " << division_proper << "/"
               << proper << " proper d are division";
        res.add(name.str(), agree == checked && division_proper == proper, detail.str());
    }
    return res;
}

// --- criterion 4: split-quaternion presentation -------------------------------------

inline SuiteResult split_quaternion(const Options& opt) {
    SuiteResult res{"split-quaternion", {}};
    Field f2 = FieldDescriptor::prime(2);
    Field f4 = FieldDescriptor::extension(2, 2);
    FieldElement w = FieldElement::generator(f4);

    GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(f2, 2);
    CyclicAlgebra c = cyclic_algebra(K, K.algebra().basis_vec(1));
    // (K/F,s,d) (x)_F K as an algebra over K = F_4
    AlgebraSC T = c.petit.alg.scalar_extension(f4);

    FieldElement lambda = w.frobenius(1) / w;  // sigma(d)/d
    res.add("lambda = sigma(w)/w = w", lambda == w);

    SkewSet cs = SkewSet::ones(f4, 2);
    cs.at(1, 0, 1) = lambda;
    AlgebraSC m2c = skew_matrix_algebra(f4, cs);
    auto iso = T.find_isomorphism_exhaustive(m2c, opt.cap);
    res.add("isomorphism with M2(F4;c) found", iso.has_value());
    if (iso) res.add("isomorphism verifies", T.verify_isomorphism(m2c, *iso));

    // the two idempotents of F_4 (x) F_4 = span{1, x} inside T
    MatrixF krows(f4, 2, 4);
    krows.at(0, 0) = FieldElement::one(f4);
    krows.at(1, 1) = FieldElement::one(f4);
    Subalgebra ksub = T.subalgebra(krows);
    auto prim = etale::primitive_idempotents(ksub.induced());
    res.add("two primitive idempotents in K (x) K", prim.size() == 2);
    if (prim.size() == 2) {
        std::vector<std::vector<FieldElement>> lifted;
        for (const auto& e : prim) {
            std::vector<FieldElement> v(4, FieldElement::zero(f4));
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t r = 0; r < 4; ++r) v[r] = v[r] + e[i] * krows.at(i, r);
            lifted.push_back(std::move(v));
        }
        MatrixUnitsResult mu = matrix_units_from_idempotents(T, lifted);
        FieldElement c212 = mu.c.at(1, 0, 1);
        FieldElement c121 = mu.c.at(0, 1, 0);
        // swapping the two idempotents conjugates the presentation and maps
        // lambda to sigma(lambda); both label orders are accepted
        bool lambda_matches = (c212 == lambda || c212 == lambda.frobenius(1));
        std::ostringstream detail;
        detail << "c121=" << c121.to_string() << " c212=" << c212.to_string()
               << " lambda=" << lambda.to_string();
        res.add("matrix units reproduce lambda up to idempotent order", lambda_matches,
                detail.str());
        res.add("matrix units give a reduced presentation with c121=1", c121.is_one());
    }
    return res;
}

// --- criterion 5 (+8, +10 across the same matrix) -----------------------------------

inline std::vector<MatrixEntry> construction_matrix(std::uint64_t seed) {
    std::vector<MatrixEntry> all = cyclic_matrix(seed);
    for (auto& e : generalized_cyclic_matrix()) all.push_back(std::move(e));
    for (auto& e : menichetti_matrix()) all.push_back(std::move(e));
    for (auto& e : skew_matrix_matrix()) all.push_back(std::move(e));
    for (auto& e : petit_matrix()) all.push_back(std::move(e));
    return all;
}

inline SuiteResult semiassoc_all(const Options& opt) {
    SuiteResult res{"semiassoc-all", {}};
    std::size_t checked = 0, ok = 0;
    std::vector<std::string> failures;
    for (const auto& entry : construction_matrix(opt.seed)) {
        SemiassocReport rep = semiassoc_check(entry.alg, entry.etale_rows);
        bool pass = rep.semiassociative && rep.faithful_rank == rep.expected_rank;
        ++checked;
        if (pass)
            ++ok;
        else
            failures.push_back(entry.name);
    }
    std::ostringstream detail;
    detail << ok << "/" << checked << " instances semiassociative at full rank";
    for (const auto& f : failures) detail << "; FAIL " << f;
    res.add("construction matrix", ok == checked && checked > 0, detail.str());
    return res;
}

inline SuiteResult associativity_sweep(const Options& opt) {
    SuiteResult res{"associativity", {}};
    std::size_t checked = 0, ok = 0;
    std::vector<std::string> failures;
    for (const auto& entry : construction_matrix(opt.seed)) {
        if (!entry.petit || !entry.d_in_base) continue;
        bool assoc = entry.alg.is_associative();
        bool rinv = entry.petit->f.is_right_invariant();
        bool din = *entry.d_in_base;
        ++checked;
        if (assoc == rinv && rinv == din)
            ++ok;
        else
            failures.push_back(entry.name);
    }
    // differential instances participate through criterion 9's own sweep;
    // here the skew-polynomial-backed matrix must agree with zero exceptions
    std::ostringstream detail;
    detail << ok << "/" << checked << " instances: associative <=> right-invariant <=> d in F";
    for (const auto& f : failures) detail << "; FAIL " << f;
    res.add("construction matrix", ok == checked && checked > 0, detail.str());
    return res;
}

inline SuiteResult eigenspace_sweep(const Options& opt) {
    SuiteResult res{"eigenspace", {}};
    std::size_t checked = 0, ok = 0;
    std::vector<std::string> failures;
    for (const auto& entry : construction_matrix(opt.seed)) {
        if (!entry.petit) continue;
        ++checked;
        if (same_row_space(eigenspace_of_f(*entry.petit), entry.alg.nucleus_right().basis))
            ++ok;
        else
            failures.push_back(entry.name);
    }
    std::ostringstream detail;
    detail << ok << "/" << checked << " Petit instances: eigenspace of f = right nucleus";
    for (const auto& f : failures) detail << "; FAIL " << f;
    res.add("construction matrix", ok == checked && checked > 0, detail.str());
    return res;
}

// --- criterion 6: infinite order certificates ----------------------------------------

inline SuiteResult infinite_order(const Options&) {
    SuiteResult res{"infinite-order", {}};
    Field f2 = FieldDescriptor::prime(2);
    GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(f2, 2);
    CyclicAlgebra base = cyclic_algebra(K, K.algebra().basis_vec(1));
    AlgebraSC power = base.petit.alg;
    for (std::size_t k = 2; k <= 3; ++k) {
        power = AlgebraSC::tensor(power, base.petit.alg);
        std::size_t degree = 1;
        for (std::size_t i = 0; i < k; ++i) degree *= 2;
        Subalgebra nuc = power.nucleus_full();
        std::size_t expected_idems = degree / 2;  // n^{k-1} with n = 2
        bool etale_nuc = nuc.unital && nuc.induced().is_commutative() &&
                         etale::trace_form_nondegenerate(nuc.induced());
        std::size_t count = etale_nuc ? etale::count_primitive_idempotents(nuc.induced()) : 0;
        SplitCertificate cert = split_certificate(power, nuc.basis);
        std::ostringstream name, detail;
        name << "tensor power k=" << k;
        detail << "nucleus dim " << nuc.dim() << ", idempotents " << count << ", degree "
               << degree << ", verdict " << static_cast<int>(cert.verdict);
        res.add(name.str(),
                etale_nuc && count == expected_idems && count < degree &&
                    cert.verdict == SplitCertificate::Verdict::not_split_certified,
                detail.str());
    }
    return res;
}

// --- criterion 7: tensor with a central simple algebra --------------------------------

inline SuiteResult tensor_csa(const Options&) {
    SuiteResult res{"tensor-csa", {}};
    Field f2 = FieldDescriptor::prime(2);
    AlgebraSC m2 = skew_matrix_algebra(f2, SkewSet::ones(f2, 2));
    GaloisCnAlgebra E = GaloisCnAlgebra::cyclic_ext(f2, 2);
    TensorCsaReport rep = tensor_csa_cyclic(m2, E, E.algebra().basis_vec(1));
    res.add("canonical isomorphism verified", rep.iso_verified);
    res.add("nucleus dim 8 = dim M2(F4)", rep.nucleus_dim == 8);
    res.add("nucleus equals D0 (x) E", rep.nucleus_is_coefficient_algebra);
    res.add("nucleus center dim 2 (= F_4)", rep.nucleus_center_dim == 2);
    return res;
}

// --- Menichetti-specific checks --------------------------------------------------------

inline SuiteResult menichetti_suite(const Options& opt) {
    SuiteResult res{"menichetti", {}};
    for (std::uint32_t q : {2u, 3u}) {
        Field F = FieldDescriptor::prime(q);
        for (std::size_t m : {2u, 3u}) {
            GaloisCnAlgebra K = GaloisCnAlgebra::cyclic_ext(F, m);
            // all k_i = 1 is associative
            MenichettiData ones = menichetti(K, std::vector<std::vector<FieldElement>>(
                                                    m, K.algebra().unit()));
            std::ostringstream n1;
            n1 << "q" << q << " m" << m << " all-ones associative";
            res.add(n1.str(), ones.alg.is_associative());
            // a twisted instance: K in the nucleus, semiassociative, matrix form agrees
            std::vector<std::vector<FieldElement>> ks(m, K.algebra().unit());
            ks[m - 1] = K.algebra().basis_vec(1);
            GaloisCnAlgebra K2 = GaloisCnAlgebra::cyclic_ext(F, m);
            MenichettiData md = menichetti(K2, ks);
            SemiassocReport rep =
                semiassoc_check(md.alg, coefficient_block(md.alg, m, F));
            std::ostringstream n2;
            n2 << "q" << q << " m" << m << " twisted semiassociative";
            res.add(n2.str(), rep.semiassociative && rep.in_nucleus);
            std::mt19937_64 rng(opt.seed + 31 * q + m);
            bool agree = true;
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < md.alg.dim(); ++i) count *= q;
            for (int s = 0; s < 200; ++s) {
                auto x = md.alg.element_from_index(rng() % count);
                auto y = md.alg.element_from_index(rng() % count);
                if (md.alg.multiply(x, y) != menichetti_matrix_multiply(md, x, y)) agree = false;
            }
            std::ostringstream n3;
            n3 << "q" << q << " m" << m << " matrix form agrees (200 pairs)";
            res.add(n3.str(), agree);
        }
    }
    return res;
}

// --- criterion 9: differential identities -----------------------------------------------

inline SuiteResult differential_suite(const Options& opt, std::vector<std::uint32_t> ps = {2, 3}) {
    SuiteResult res{"differential", {}};
    for (std::uint32_t p : ps) {
        DiffField df(p);
        std::mt19937_64 rng(opt.seed * 77 + p);
        // V_p identity on seeded random b of height <= 8
        std::size_t vp_ok = 0;
        for (std::size_t s = 0; s < opt.samples; ++s)
            if (df.verify_vp_identity(FieldElement::random(df.K(), rng, 8))) ++vp_ok;
        std::ostringstream n1, d1;
        n1 << "p=" << p << " (t-b)^p = t^p - V_p(b)";
        d1 << vp_ok << "/" << opt.samples;
        res.add(n1.str(), vp_ok == opt.samples, d1.str());

        // associativity <=> d in F over 20 d values (10 per side)
        FieldElement ct = FieldElement::zero(df.constants());
        std::size_t assoc_ok = 0, assoc_n = 0;
        for (int s = 0; s < 10; ++s) {
            FieldElement d = df.lift_constant(FieldElement::random(df.constants(), rng, 2));
            DiffExtension e = diff_extension(df, ct, d);
            if (e.petit.alg.is_associative() == df.is_constant(d) &&
                e.petit.f.is_right_invariant() == df.is_constant(d))
                ++assoc_ok;
            ++assoc_n;
        }
        for (int s = 0; s < 10; ++s) {
            FieldElement d = FieldElement::random(df.K(), rng, 2);
            while (df.is_constant(d)) d = FieldElement::random(df.K(), rng, 2);
            DiffExtension e = diff_extension(df, ct, d);
            if (!e.petit.alg.is_associative() && !e.petit.f.is_right_invariant()) ++assoc_ok;
            ++assoc_n;
        }
        std::ostringstream n2, d2;
        n2 << "p=" << p << " associative <=> d in F (20 values)";
        d2 << assoc_ok << "/" << assoc_n;
        res.add(n2.str(), assoc_ok == assoc_n, d2.str());

        // K inside Nuc_r for d outside F, plus semi-invariance of g - d
        DiffExtension e = diff_extension(df, ct, df.v());
        Subalgebra nr = e.petit.alg.nucleus_right();
        bool k_in = true;
        for (std::uint32_t i = 0; i < p; ++i)
            if (!row_space_contains(nr.basis, e.petit.alg.basis_vec(i))) k_in = false;
        std::ostringstream n3;
        n3 << "p=" << p << " K inside Nuc_r for d = v";
        res.add(n3.str(), k_in);
        SemiInvarianceReport si = semi_invariance_check(e, 10, opt.seed + p);
        std::ostringstream n4;
        n4 << "p=" << p << " g - d is semi-invariant";
        res.add(n4.str(), si.all_ok);

        // additivity of V on 100 pairs
        std::size_t add_ok = 0;
        for (int s = 0; s < 100; ++s) {
            FieldElement a = FieldElement::random(df.K(), rng, 3);
            FieldElement b = FieldElement::random(df.K(), rng, 3);
            if (df.vp(a + b) - (a + b) == (df.vp(a) - a) + (df.vp(b) - b)) ++add_ok;
        }
        std::ostringstream n5, d5;
        n5 << "p=" << p << " V additive (100 pairs)";
        d5 << add_ok << "/100";
        res.add(n5.str(), add_ok == 100, d5.str());
    }
    return res;
}

// --- registry ----------------------------------------------------------------------------

inline std::vector<std::string> suite_names() {
    return {"nucleus-theorem", "opposite",       "division-criteria",
            "split-quaternion", "semiassoc-all", "tensor-csa",
            "infinite-order",   "menichetti",    "differential"};
}

inline SuiteResult run_suite(const std::string& name, const Options& opt) {
    if (name == "nucleus-theorem") return nucleus_theorem(opt);
    if (name == "opposite") return opposite(opt);
    if (name == "division-criteria") return division_criteria(opt);
    if (name == "split-quaternion") return split_quaternion(opt);
    if (name == "semiassoc-all") {
        // covers the semiassociativity matrix plus the associativity and
        // eigenspace sweeps over the same instances
        SuiteResult res = semiassoc_all(opt);
        for (auto& c : associativity_sweep(opt).cases)
            res.add("associativity: " + c.name, c.pass, c.detail);
        for (auto& c : eigenspace_sweep(opt).cases)
            res.add("eigenspace: " + c.name, c.pass, c.detail);
        return res;
    }
    if (name == "tensor-csa") return tensor_csa(opt);
    if (name == "infinite-order") return infinite_order(opt);
    if (name == "menichetti") return menichetti_suite(opt);
    if (name == "differential") return differential_suite(opt);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace suites
}  // namespace semialg
