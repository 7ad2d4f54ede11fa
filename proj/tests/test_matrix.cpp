#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "semialg/matrix.hpp"

using namespace semialg;

namespace {

MatrixF random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    MatrixF m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = FieldElement::random(f, rng, 2);
    return m;
}

}  // namespace

TEST_CASE("identity rank and determinant") {
    Field f2 = FieldDescriptor::prime(2);
    MatrixF id = MatrixF::identity(f2, 4);
    CHECK(id.rank() == 4);
    CHECK(id.det() == FieldElement::one(f2));
    CHECK(id.kernel().rows() == 0);
}

TEST_CASE("kernel of [[1,1],[1,1]] over F_2 is span{(1,1)}") {
    Field f2 = FieldDescriptor::prime(2);
    MatrixF m(f2, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) m.at(i, j) = FieldElement::one(f2);
    MatrixF k = m.kernel();
    REQUIRE(k.rows() == 1);
    CHECK(k.at(0, 0) == FieldElement::one(f2));
    CHECK(k.at(0, 1) == FieldElement::one(f2));
}

TEST_CASE("singular determinant is zero") {
    Field f3 = FieldDescriptor::prime(3);
    MatrixF m(f3, 2, 2);
    m.at(0, 0) = FieldElement::from_int(f3, 1);
    m.at(0, 1) = FieldElement::from_int(f3, 2);
    m.at(1, 0) = FieldElement::from_int(f3, 2);
    m.at(1, 1) = FieldElement::from_int(f3, 1);  // rows dependent: (1,2) and (2,1)=2*(1,2)? no
    // make it genuinely singular
    m.at(1, 0) = FieldElement::from_int(f3, 2);
    m.at(1, 1) = FieldElement::from_int(f3, 4);
    CHECK(m.det() == FieldElement::zero(f3));
}

TEST_CASE("rank-nullity, kernel membership, inverse identity") {
    std::mt19937_64 rng(11);
    std::vector<Field> fields = {FieldDescriptor::prime(2), FieldDescriptor::prime(3),
                                 FieldDescriptor::extension(2, 2),
                                 FieldDescriptor::rational_function(2)};
    for (const auto& f : fields) {
        for (int t = 0; t < 25; ++t) {
            std::size_t r = 1 + t % 5, c = 1 + (t * 7) % 5;
            MatrixF m = random_matrix(f, r, c, rng);
            MatrixF k = m.kernel();
            REQUIRE(m.rank() + k.rows() == c);
            for (std::size_t i = 0; i < k.rows(); ++i) {
                auto v = m.apply(k.row(i));
                for (auto& x : v) REQUIRE(x.is_zero());
            }
            if (r == c) {
                auto inv = m.inverse();
                if (inv) {
                    CHECK((m * *inv) == MatrixF::identity(f, r));
                    CHECK(!m.det().is_zero());
                } else {
                    CHECK(m.det().is_zero());
                }
            }
        }
    }
}

TEST_CASE("solve finds solutions and detects inconsistency") {
    Field f3 = FieldDescriptor::prime(3);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        MatrixF m = random_matrix(f3, 3, 3, rng);
        std::vector<FieldElement> x0;
        for (int i = 0; i < 3; ++i) x0.push_back(FieldElement::random(f3, rng));
        auto b = m.apply(x0);
        auto x = m.solve(b);
        REQUIRE(x.has_value());
        CHECK(m.apply(*x) == b);
    }
    // inconsistent system: 0*x = 1
    MatrixF z(f3, 1, 1);
    CHECK(!z.solve({FieldElement::one(f3)}).has_value());
}

TEST_CASE("deterministic kernels: repeated runs agree") {
    Field f2 = FieldDescriptor::prime(2);
    std::mt19937_64 rng(3);
    MatrixF m = random_matrix(f2, 4, 6, rng);
    CHECK(m.kernel() == m.kernel());
    CHECK(same_row_space(m.kernel(), m.kernel()));
}

TEST_CASE("PrimeMat agrees with MatrixF over prime fields") {
    std::mt19937_64 rng(17);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Field f = FieldDescriptor::prime(p);
        for (int t = 0; t < 30; ++t) {
            MatrixF m = random_matrix(f, 2 + t % 4, 2 + (t * 3) % 5, rng);
            PrimeMat pm = PrimeMat::from_matrixf(m);
            CHECK(pm.kernel().to_matrixf(f) == m.kernel());
            PrimeMat pr = pm;
            CHECK(pr.rref().size() == m.rank());
        }
    }
}

TEST_CASE("row space helpers") {
    Field f2 = FieldDescriptor::prime(2);
    MatrixF a(f2, 2, 3), b(f2, 2, 3);
    a.at(0, 0) = FieldElement::one(f2);
    a.at(1, 1) = FieldElement::one(f2);
    b.at(0, 0) = FieldElement::one(f2);
    b.at(0, 1) = FieldElement::one(f2);
    b.at(1, 1) = FieldElement::one(f2);
    CHECK(same_row_space(a, b));
    CHECK(row_space_contains(a, {FieldElement::one(f2), FieldElement::one(f2),
                                 FieldElement::zero(f2)}));
    CHECK(!row_space_contains(a, {FieldElement::zero(f2), FieldElement::zero(f2),
                                  FieldElement::one(f2)}));
}
