#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "semialg/field.hpp"

using namespace semialg;

TEST_CASE("prime field construction and arithmetic") {
    Field f2 = FieldDescriptor::prime(2);
    Field f3 = FieldDescriptor::prime(3);
    CHECK(f2->order() == 2);
    CHECK(f3->order() == 3);
    CHECK(FieldElement::from_int(f3, 5) == FieldElement::from_int(f3, 2));
    CHECK((FieldElement::from_int(f3, 2) + FieldElement::from_int(f3, 2)) ==
          FieldElement::one(f3));
    CHECK_THROWS_AS(FieldDescriptor::prime(6), std::invalid_argument);
}

TEST_CASE("F4 with canonical modulus x^2+x+1") {
    Field f4 = FieldDescriptor::extension(2, 2);
    CHECK(f4->modulus().coeffs() == std::vector<std::uint32_t>({1, 1, 1}));
    FieldElement w = FieldElement::generator(f4);
    // w^2 = w + 1
    CHECK(w * w == w + FieldElement::one(f4));
    CHECK(w.to_string() == "[0,1]");
    CHECK((w + FieldElement::one(f4)).to_string() == "[1,1]");
    // w^3 = 1
    CHECK(w.pow(3) == FieldElement::one(f4));
}

TEST_CASE("explicit modulus validation") {
    FpPoly red(2, {1, 0, 1});  // x^2+1 = (x+1)^2 over F_2
    CHECK_THROWS_AS(FieldDescriptor::extension(2, 2, &red), std::invalid_argument);
    FpPoly wrongdeg(2, {1, 1, 1});
    CHECK_THROWS_AS(FieldDescriptor::extension(2, 3, &wrongdeg), std::invalid_argument);
    FpPoly ok(2, {1, 1, 0, 1});  // x^3+x+1
    Field f8 = FieldDescriptor::extension(2, 3, &ok);
    CHECK(f8->order() == 8);
}

TEST_CASE("canonical moduli are the counter-first irreducibles") {
    CHECK(FieldDescriptor::extension(2, 3)->modulus().coeffs() ==
          std::vector<std::uint32_t>({1, 1, 0, 1}));  // x^3+x+1
    CHECK(FieldDescriptor::extension(2, 4)->modulus().coeffs() ==
          std::vector<std::uint32_t>({1, 1, 0, 0, 1}));  // x^4+x+1
    CHECK(FieldDescriptor::extension(3, 2)->modulus().coeffs() ==
          std::vector<std::uint32_t>({1, 0, 1}));  // x^2+1
}

TEST_CASE("frobenius") {
    Field f4 = FieldDescriptor::extension(2, 2);
    FieldElement w = FieldElement::generator(f4);
    CHECK(w.frobenius(1) == w + FieldElement::one(f4));  // w^2 = w+1
    CHECK(w.frobenius(2) == w);                          // order k is identity
    CHECK(FieldElement::zero(f4).frobenius(1) == FieldElement::zero(f4));

    Field f3 = FieldDescriptor::prime(3);
    for (int v = 0; v < 3; ++v) {
        FieldElement x = FieldElement::from_int(f3, v);
        CHECK(x.frobenius(5) == x);  // Frobenius fixes the prime field
    }

    Field fv = FieldDescriptor::rational_function(2);
    CHECK_THROWS_AS(FieldElement::generator(fv).frobenius(1), std::domain_error);
}

TEST_CASE("frobenius is additive and multiplicative") {
    Field f9 = FieldDescriptor::extension(3, 2);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        FieldElement a = FieldElement::random(f9, rng);
        FieldElement b = FieldElement::random(f9, rng);
        CHECK((a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1));
        CHECK((a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1));
    }
}

TEST_CASE("rational function arithmetic") {
    Field fv = FieldDescriptor::rational_function(2);
    FieldElement v = FieldElement::generator(fv);
    FieldElement one = FieldElement::one(fv);
    // (v+1)/v + 1/v = 1 in characteristic 2
    FieldElement a = (v + one) / v;
    FieldElement b = one / v;
    CHECK(a + b == one);
    // derivative examples
    CHECK(v.derivative() == one);
    CHECK((v * v).derivative() == FieldElement::zero(fv));  // 2v = 0
    CHECK_THROWS_AS(FieldElement::zero(fv).inverse(), std::domain_error);
}

TEST_CASE("fractions are normalized") {
    Field fv = FieldDescriptor::rational_function(3);
    FieldElement v = FieldElement::generator(fv);
    FieldElement two = FieldElement::from_int(fv, 2);
    // (2v)/(2v^2) reduces to 1/v with monic denominator
    FieldElement x = (two * v) / (two * v * v);
    CHECK(x == FieldElement::one(fv) / v);
    CHECK(x.den().is_monic());
    CHECK(x.to_string() == "[1]/[0,1]");
}

TEST_CASE("field axioms on random samples") {
    std::vector<Field> fields = {
        FieldDescriptor::prime(2),
        FieldDescriptor::prime(3),
        FieldDescriptor::extension(2, 2),
        FieldDescriptor::extension(2, 3),
        FieldDescriptor::extension(3, 2),
        FieldDescriptor::rational_function(2),
        FieldDescriptor::rational_function(3),
    };
    std::mt19937_64 rng(1);
    for (const auto& f : fields) {
        for (int i = 0; i < 1000; ++i) {
            FieldElement a = FieldElement::random(f, rng, 3);
            FieldElement b = FieldElement::random(f, rng, 3);
            FieldElement c = FieldElement::random(f, rng, 3);
            REQUIRE((a * b) * c == a * (b * c));
            REQUIRE(a * (b + c) == a * b + a * c);
            REQUIRE(a + b == b + a);
            if (!a.is_zero()) REQUIRE(a * a.inverse() == FieldElement::one(f));
        }
    }
}

TEST_CASE("derivative satisfies the product rule; vanishes on p-th powers") {
    for (std::uint32_t p : {2u, 3u}) {
        Field fv = FieldDescriptor::rational_function(p);
        std::mt19937_64 rng(p);
        for (int i = 0; i < 200; ++i) {
            FieldElement a = FieldElement::random(fv, rng, 4);
            FieldElement b = FieldElement::random(fv, rng, 4);
            REQUIRE((a * b).derivative() == a * b.derivative() + a.derivative() * b);
            REQUIRE(a.pow(p).derivative() == FieldElement::zero(fv));
        }
    }
}

TEST_CASE("element strings round-trip") {
    Field f4 = FieldDescriptor::extension(2, 2);
    FieldElement w = FieldElement::generator(f4);
    CHECK(FieldElement::parse(f4, w.to_string()) == w);
    Field fv = FieldDescriptor::rational_function(3);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        FieldElement x = FieldElement::random(fv, rng, 5);
        CHECK(FieldElement::parse(fv, x.to_string()) == x);
    }
}

TEST_CASE("canonical element indexing") {
    Field f9 = FieldDescriptor::extension(3, 2);
    for (std::uint64_t i = 0; i < 9; ++i)
        CHECK(FieldElement::from_index(f9, i).index() == i);
    CHECK(FieldElement::from_index(f9, 0).is_zero());
}
