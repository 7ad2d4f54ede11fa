#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "semialg/etale.hpp"

using namespace semialg;

TEST_CASE("cyclic extension F_4/F_2") {
    Field f2 = FieldDescriptor::prime(2);
    GaloisCnAlgebra k = GaloisCnAlgebra::cyclic_ext(f2, 2);
    CHECK(k.n() == 2);
    CHECK(k.algebra().dim() == 2);
    CHECK(k.is_field());
    CHECK(k.component_field()->order() == 4);

    // sigma = squaring, sigma^2 = id; Fix(sigma) = F_2
    auto w = k.algebra().basis_vec(1);
    auto sw = k.sigma_apply(w);
    CHECK(sw != w);
    CHECK(k.sigma_apply(sw) == w);

    // N(w) = w * w^2 = 1, T(w) = w + w^2 = 1
    CHECK(k.norm(w) == FieldElement::one(f2));
    CHECK(k.trace(w) == FieldElement::one(f2));
    CHECK(k.norm(k.algebra().basis_vec(0)) == FieldElement::one(f2));
}

TEST_CASE("cyclic extension F_16/F_2 has sigma of order 4") {
    Field f2 = FieldDescriptor::prime(2);
    GaloisCnAlgebra k = GaloisCnAlgebra::cyclic_ext(f2, 4);
    CHECK(k.algebra().dim() == 4);
    // native <-> coordinate round trips
    Field f16 = k.component_field();
    for (std::uint64_t i = 0; i < 16; ++i) {
        FieldElement y = FieldElement::from_index(f16, i);
        CHECK(k.from_coords(k.to_coords(y)) == y);
    }
    // multiplication through coordinates matches native multiplication
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        FieldElement a = FieldElement::random(f16, rng);
        FieldElement b = FieldElement::random(f16, rng);
        CHECK(k.from_coords(k.algebra().multiply(k.to_coords(a), k.to_coords(b))) == a * b);
    }
}

TEST_CASE("cyclic extension over a non-prime base: F_16/F_4") {
    Field f4 = FieldDescriptor::extension(2, 2);
    GaloisCnAlgebra k = GaloisCnAlgebra::cyclic_ext(f4, 2);
    CHECK(k.n() == 2);
    CHECK(k.algebra().dim() == 2);
    CHECK(k.component_field()->order() == 16);
    // norm and trace land in F_4 and agree with operator det/trace
    Field f16 = k.component_field();
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        FieldElement y = FieldElement::random(f16, rng);
        auto coords = k.to_coords(y);
        MatrixF l = k.algebra().left_mult(coords);
        CHECK(k.norm(coords) == l.det());
        FieldElement tr = FieldElement::zero(f4);
        for (std::size_t i = 0; i < 2; ++i) tr = tr + l.at(i, i);
        CHECK(k.trace(coords) == tr);
    }
}

TEST_CASE("norm and trace agree with multiplication operators") {
    for (auto [p, n] : {std::pair<int, int>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        Field f = FieldDescriptor::prime(p);
        GaloisCnAlgebra k = GaloisCnAlgebra::cyclic_ext(f, n);
        std::mt19937_64 rng(p * 10 + n);
        for (int t = 0; t < 30; ++t) {
            auto x = k.algebra().element_from_index(rng() % k.component_field()->order());
            MatrixF l = k.algebra().left_mult(x);
            CHECK(k.norm(x) == l.det());
            FieldElement tr = FieldElement::zero(f);
            for (std::size_t i = 0; i < k.n(); ++i) tr = tr + l.at(i, i);
            CHECK(k.trace(x) == tr);
        }
    }
}

TEST_CASE("split etale algebra") {
    Field f3 = FieldDescriptor::prime(3);
    GaloisCnAlgebra k = GaloisCnAlgebra::split_etale(f3, 3);
    CHECK(k.algebra().dim() == 3);
    CHECK(!k.is_field());
    // sigma has order 3 and shifts coordinates
    auto e0 = k.algebra().basis_vec(0);
    CHECK(k.sigma_apply(e0) == k.algebra().basis_vec(1));
    // Fix(shift) is the diagonal
    StabilizerData st = k.stabilizer(k.algebra().unit());
    CHECK(st.s == 1);
    CHECK(st.r == 3);
    CHECK(st.fixed.dim() == 1);
}

TEST_CASE("stabilizer data") {
    Field f2 = FieldDescriptor::prime(2);
    GaloisCnAlgebra k4 = GaloisCnAlgebra::cyclic_ext(f2, 2);
    // d = w: sigma(w) = w^2 != w, so s = 2, r = 1, E = F_4
    auto w = k4.algebra().basis_vec(1);
    StabilizerData st = k4.stabilizer(w);
    CHECK(st.s == 2);
    CHECK(st.r == 1);
    CHECK(st.fixed.dim() == 2);

    // d in F: s = 1, r = n, E = F
    StabilizerData st2 = k4.stabilizer(k4.algebra().unit());
    CHECK(st2.s == 1);
    CHECK(st2.r == 2);
    CHECK(st2.fixed.dim() == 1);

    // K = F_16/F_2 with d in F_4 \ F_2: s = 2, r = 2, E = F_4
    GaloisCnAlgebra k16 = GaloisCnAlgebra::cyclic_ext(f2, 4);
    Field f16 = k16.component_field();
    bool found = false;
    for (std::uint64_t i = 0; i < 16 && !found; ++i) {
        FieldElement d = FieldElement::from_index(f16, i);
        if (d.frobenius(2) == d && d.frobenius(1) != d) {
            auto coords = k16.to_coords(d);
            StabilizerData st3 = k16.stabilizer(coords);
            CHECK(st3.s == 2);
            CHECK(st3.r == 2);
            CHECK(st3.fixed.dim() == 2);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("stabilizer fixed subalgebra on split etale") {
    Field f3 = FieldDescriptor::prime(3);
    GaloisCnAlgebra k = GaloisCnAlgebra::split_etale(f3, 4);
    // d with distinct period: (a, b, a, b) has sigma^2(d) = d
    auto d = k.algebra().zero_vec();
    d[0] = FieldElement::from_int(f3, 1);
    d[1] = FieldElement::from_int(f3, 2);
    d[2] = FieldElement::from_int(f3, 1);
    d[3] = FieldElement::from_int(f3, 2);
    StabilizerData st = k.stabilizer(d);
    CHECK(st.s == 2);
    CHECK(st.r == 2);
    CHECK(st.fixed.dim() == 2);
    CHECK(st.fixed.unital);
}

TEST_CASE("trace form detects etale algebras") {
    Field f2 = FieldDescriptor::prime(2);
    // F_4 as F_2-algebra: etale
    GaloisCnAlgebra k = GaloisCnAlgebra::cyclic_ext(f2, 2);
    CHECK(etale::trace_form_nondegenerate(k.algebra()));
    // F x F: etale
    GaloisCnAlgebra s = GaloisCnAlgebra::split_etale(f2, 2);
    CHECK(etale::trace_form_nondegenerate(s.algebra()));
    // dual numbers F_2[x]/(x^2): x annihilates the form
    auto e = [&](int v) { return FieldElement::from_int(f2, v); };
    std::vector<FieldElement> sc(8, e(0));
    sc[0] = e(1);
    sc[(0 * 2 + 1) * 2 + 1] = e(1);
    sc[(1 * 2 + 0) * 2 + 1] = e(1);
    AlgebraSC dual(f2, 2, sc, {e(1), e(0)});
    CHECK(!etale::trace_form_nondegenerate(dual));
}

TEST_CASE("trace form degeneracy matches nilpotent search at desk scale") {
    // cross-oracle: a commutative associative algebra over F_q is etale iff
    // it has no nonzero nilpotents
    std::vector<AlgebraSC> algebras;
    Field f2 = FieldDescriptor::prime(2);
    Field f3 = FieldDescriptor::prime(3);
    algebras.push_back(GaloisCnAlgebra::cyclic_ext(f2, 2).algebra());
    algebras.push_back(GaloisCnAlgebra::cyclic_ext(f3, 2).algebra());
    algebras.push_back(GaloisCnAlgebra::split_etale(f2, 3).algebra());
    {
        auto e = [&](int v) { return FieldElement::from_int(f3, v); };
        std::vector<FieldElement> sc(8, e(0));
        sc[0] = e(1);
        sc[(0 * 2 + 1) * 2 + 1] = e(1);
        sc[(1 * 2 + 0) * 2 + 1] = e(1);
        algebras.emplace_back(f3, 2, sc, std::vector<FieldElement>{e(1), e(0)});
    }
    for (const auto& a : algebras) {
        bool nilpotent_found = false;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < a.dim(); ++i) total *= a.field()->order();
        for (std::uint64_t idx = 1; idx < total && !nilpotent_found; ++idx) {
            auto x = a.element_from_index(idx);
            auto pw = x;
            for (std::size_t e = 1; e < a.dim() && !nilpotent_found; ++e) {
                pw = a.multiply(pw, x);
                if (AlgebraSC::vec_is_zero(pw)) nilpotent_found = true;
            }
        }
        CHECK(etale::trace_form_nondegenerate(a) == !nilpotent_found);
    }
}

TEST_CASE("primitive idempotent counting") {
    Field f2 = FieldDescriptor::prime(2);
    Field f3 = FieldDescriptor::prime(3);
    // fields have exactly one
    CHECK(etale::count_primitive_idempotents(GaloisCnAlgebra::cyclic_ext(f2, 3).algebra()) == 1);
    CHECK(etale::count_primitive_idempotents(GaloisCnAlgebra::cyclic_ext(f3, 2).algebra()) == 1);
    // split etale F^n has n
    CHECK(etale::count_primitive_idempotents(GaloisCnAlgebra::split_etale(f2, 4).algebra()) == 4);
    // F_4 (x) F_4 over F_2 has 2
    AlgebraSC k4 = GaloisCnAlgebra::cyclic_ext(f2, 2).algebra();
    CHECK(etale::count_primitive_idempotents(AlgebraSC::tensor(k4, k4)) == 2);
    // non-etale input is a precondition error
    auto e = [&](int v) { return FieldElement::from_int(f2, v); };
    std::vector<FieldElement> sc(8, e(0));
    sc[0] = e(1);
    sc[(0 * 2 + 1) * 2 + 1] = e(1);
    sc[(1 * 2 + 0) * 2 + 1] = e(1);
    AlgebraSC dual(f2, 2, sc, {e(1), e(0)});
    CHECK_THROWS_AS(etale::count_primitive_idempotents(dual), std::invalid_argument);
}

TEST_CASE("idempotent count of tensor powers K^{(x)k} is n^{k-1}") {
    for (auto [p, n] : {std::pair<int, int>{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        Field f = FieldDescriptor::prime(p);
        AlgebraSC k = GaloisCnAlgebra::cyclic_ext(f, n).algebra();
        AlgebraSC t2 = AlgebraSC::tensor(k, k);
        AlgebraSC t3 = AlgebraSC::tensor(t2, k);
        CHECK(etale::count_primitive_idempotents(k) == 1);
        CHECK(etale::count_primitive_idempotents(t2) == static_cast<std::size_t>(n));
        CHECK(etale::count_primitive_idempotents(t3) == static_cast<std::size_t>(n * n));
    }
}

TEST_CASE("explicit idempotents") {
    Field f2 = FieldDescriptor::prime(2);
    AlgebraSC k4 = GaloisCnAlgebra::cyclic_ext(f2, 2).algebra();
    AlgebraSC t = AlgebraSC::tensor(k4, k4);
    auto prim = etale::primitive_idempotents(t);
    REQUIRE(prim.size() == 2);
    // orthogonal, sum to 1, each squares to itself
    auto sum = t.zero_vec();
    for (const auto& e : prim) {
        CHECK(t.multiply(e, e) == e);
        for (std::size_t i = 0; i < 4; ++i) sum[i] = sum[i] + e[i];
    }
    CHECK(sum == t.unit());
    CHECK(AlgebraSC::vec_is_zero(t.multiply(prim[0], prim[1])));
}

TEST_CASE("sigma order validation rejects wrong orders") {
    Field f2 = FieldDescriptor::prime(2);
    // split_etale with n = 1 is fine (sigma = id of order 1)
    GaloisCnAlgebra k1 = GaloisCnAlgebra::split_etale(f2, 1);
    CHECK(k1.n() == 1);
}
