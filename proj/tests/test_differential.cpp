#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "semialg/differential.hpp"

using namespace semialg;

TEST_CASE("constants subfield detection and coordinates") {
    for (std::uint32_t p : {2u, 3u}) {
        DiffField df(p);
        FieldElement v = df.v();
        CHECK(df.delta(v) == FieldElement::one(df.K()));
        CHECK(df.is_constant(v.pow(p)));
        CHECK(!df.is_constant(v));
        std::mt19937_64 rng(p);
        for (int s = 0; s < 100; ++s) {
            FieldElement x = FieldElement::random(df.K(), rng, 4);
            // round trip through the v-basis coordinates
            auto coords = df.to_coords(x);
            REQUIRE(coords.size() == p);
            CHECK(df.from_coords(coords) == x);
            // delta(x) = 0 iff all coordinates above index 0 vanish
            bool upper_zero = true;
            for (std::uint32_t i = 1; i < p; ++i)
                if (!coords[i].is_zero()) upper_zero = false;
            CHECK(df.is_constant(x) == upper_zero);
            // delta^p = 0
            FieldElement it = x;
            for (std::uint32_t i = 0; i < p; ++i) it = df.delta(it);
            CHECK(it.is_zero());
        }
    }
}

TEST_CASE("V_p oracle values") {
    DiffField d2(2);
    FieldElement v2 = d2.v();
    // p = 2: V_2(v) = v^2 + 1
    CHECK(d2.vp(v2) == v2 * v2 + FieldElement::one(d2.K()));
    // b in F: V_p(b) = b^p
    FieldElement b = d2.lift_constant(FieldElement::generator(d2.constants()));  // v^2
    CHECK(d2.vp(b) == b * b);

    DiffField d3(3);
    FieldElement v3 = d3.v();
    // p = 3: V_3(v) = v^3 (delta^2(v) = 0)
    CHECK(d3.vp(v3) == v3.pow(3));
}

TEST_CASE("(t - b)^p = t^p - V_p(b)") {
    DiffField d2(2);
    FieldElement v = d2.v();
    CHECK(d2.verify_vp_identity(FieldElement::zero(d2.K())));
    CHECK(d2.verify_vp_identity(v));
    // V_2(1/v) = 1/v^2 + 1/v^2 = 0, so both sides are t^2
    FieldElement invv = FieldElement::one(d2.K()) / v;
    CHECK(d2.vp(invv).is_zero());
    CHECK(d2.verify_vp_identity(invv));

    for (std::uint32_t p : {2u, 3u}) {
        DiffField df(p);
        std::mt19937_64 rng(100 + p);
        for (int s = 0; s < 50; ++s)
            CHECK(df.verify_vp_identity(FieldElement::random(df.K(), rng, 8)));
    }
}

TEST_CASE("V(a) = V_p(a) - a is additive") {
    for (std::uint32_t p : {2u, 3u}) {
        DiffField df(p);
        std::mt19937_64 rng(7 * p);
        auto bigv = [&](const FieldElement& a) { return df.vp(a) - a; };
        for (int s = 0; s < 100; ++s) {
            FieldElement a = FieldElement::random(df.K(), rng, 3);
            FieldElement b = FieldElement::random(df.K(), rng, 3);
            CHECK(bigv(a + b) == bigv(a) + bigv(b));
        }
    }
}

TEST_CASE("differential extension dimensions and associativity") {
    DiffField df(2);
    // g = t^p is the minimum p-polynomial of d/dv on F_p(v)
    FieldElement ct = FieldElement::zero(df.constants());
    // d = v: not a constant -> nonassociative
    DiffExtension e1 = diff_extension(df, ct, df.v());
    CHECK(e1.petit.alg.dim() == 4);
    CHECK(!e1.petit.alg.is_associative());
    // d = v^2 in F -> associative
    DiffExtension e2 = diff_extension(df, ct, df.v() * df.v());
    CHECK(e2.petit.alg.is_associative());
    CHECK(e2.petit.f.is_right_invariant());

    // associativity <=> d in constants, over a sample of d values
    std::mt19937_64 rng(40);
    for (int s = 0; s < 20; ++s) {
        FieldElement d = FieldElement::random(df.K(), rng, 2);
        DiffExtension e = diff_extension(df, ct, d);
        CHECK(e.petit.alg.is_associative() == df.is_constant(d));
        CHECK(e.petit.f.is_right_invariant() == df.is_constant(d));
    }
}

TEST_CASE("g = t^p - ct with ct != 0 still constructs an algebra of the right size") {
    // the Petit construction itself does not need g to be the minimum
    // polynomial; only the structure theory does
    DiffField df(2);
    DiffExtension e = diff_extension(df, FieldElement::one(df.constants()), df.v());
    CHECK(e.petit.alg.dim() == 4);
    CHECK(!e.petit.alg.is_associative());
}

TEST_CASE("K lies in the right nucleus for d outside the constants") {
    for (std::uint32_t p : {2u, 3u}) {
        DiffField df(p);
        DiffExtension e = diff_extension(df, FieldElement::zero(df.constants()), df.v());
        Subalgebra nr = e.petit.alg.nucleus_right();
        // the coefficient block K t^0 sits inside Nuc_r
        for (std::uint32_t i = 0; i < p; ++i)
            CHECK(row_space_contains(nr.basis, e.petit.alg.basis_vec(i)));
        // eigenspace law holds here as well
        CHECK(same_row_space(eigenspace_of_f(e.petit), nr.basis));
    }
}

TEST_CASE("semi-invariance of g - d") {
    for (std::uint32_t p : {2u, 3u}) {
        DiffField df(p);
        DiffExtension e = diff_extension(df, FieldElement::zero(df.constants()), df.v());
        SemiInvarianceReport rep = semi_invariance_check(e, 10, 17);
        CHECK(rep.all_ok);
        CHECK(rep.checked == 12);
    }
}

TEST_CASE("characteristic-3 criterion predicates") {
    DiffField df(3);
    FieldElement v = df.v();
    FieldElement zero_c = FieldElement::zero(df.constants());
    // z in F, c = 0: cond1 iff z^3 != d
    FieldElement z = df.lift_constant(FieldElement::generator(df.constants()));
    Char3Report r1 = char3_criterion_eval(df, z, zero_c, z.pow(3));
    CHECK(!r1.cond1);
    Char3Report r2 = char3_criterion_eval(df, z, zero_c, z.pow(3) + FieldElement::one(df.K()));
    CHECK(r2.cond1);
    // z = v, c = 0, d = v^3: cond1 false since V_3(v) = v^3
    Char3Report r3 = char3_criterion_eval(df, v, zero_c, v.pow(3));
    CHECK(!r3.cond1);
    // c in F => delta(c) = 0 => the two conditions coincide (commutative K)
    std::mt19937_64 rng(5);
    for (int s = 0; s < 50; ++s) {
        FieldElement zz = FieldElement::random(df.K(), rng, 3);
        FieldElement cc = FieldElement::random(df.constants(), rng, 2);
        FieldElement dd = FieldElement::random(df.K(), rng, 3);
        Char3Report r = char3_criterion_eval(df, zz, cc, dd);
        CHECK(r.cond1 == r.cond2);
    }
    // falsification search finds z = v for d = V_3(v)
    auto hit = char3_falsify(df, zero_c, v.pow(3), 4000, 1, 1);
    CHECK(hit.has_value());
}

TEST_CASE("height cap on the V_p identity") {
    DiffField df(2);
    FieldElement v = df.v();
    CHECK_THROWS_AS(df.verify_vp_identity(v.pow(80), 64), cap_exceeded);
}
