#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmatrix.hpp"
#include <random>

using namespace gentle;

static QMatrix from_longs(const Field& F, size_t r, size_t c, std::initializer_list<long> v) {
    QMatrix m(r, c);
    auto it = v.begin();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.at(i, j) = F.from_long(*it++);
    return m;
}

TEST_CASE("rank") {
    Field Q;
    CHECK(rank(Q, QMatrix::identity(Q, 2)) == 2);
    CHECK(rank(Q, QMatrix(3, 4)) == 0);
    CHECK(rank(Q, from_longs(Q, 2, 2, {1, 2, 2, 4})) == 1);
}

TEST_CASE("solve_linear") {
    Field Q;
    QMatrix b = from_longs(Q, 2, 1, {5, -3});
    auto x = solve_linear(Q, QMatrix::identity(Q, 2), b);
    REQUIRE(x);
    CHECK(*x == b);

    auto y = solve_linear(Q, from_longs(Q, 1, 2, {1, 1}), from_longs(Q, 1, 1, {2}));
    REQUIRE(y);
    CHECK(Field::eq(Q.add(y->at(0, 0), y->at(1, 0)), Q.from_long(2)));

    CHECK_FALSE(solve_linear(Q, from_longs(Q, 2, 1, {1, 1}), from_longs(Q, 2, 1, {0, 1})));
    CHECK_THROWS_AS(solve_linear(Q, QMatrix(2, 2), QMatrix(3, 1)), domain_error);
}

TEST_CASE("kernel_basis") {
    Field Q;
    CHECK(kernel_basis(Q, QMatrix::identity(Q, 3)).cols() == 0);
    CHECK(kernel_basis(Q, QMatrix(4, 4)).cols() == 4);
    QMatrix k = kernel_basis(Q, from_longs(Q, 2, 2, {1, 2, 2, 4}));
    REQUIRE(k.cols() == 1);
    // proportional to (2, -1)
    CHECK(Field::eq(Q.mul(k.at(0, 0), Q.from_long(-1)), Q.mul(k.at(1, 0), Q.from_long(2))));
}

TEST_CASE("rank + kernel + solve consistency on random matrices") {
    Field Q;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        QMatrix A(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) A.at(i, j) = Q.from_long((long)(rng() % 7) - 3);
        QMatrix K = kernel_basis(Q, A);
        CHECK(K.cols() + rank(Q, A) == c);
        CHECK(A.mul(Q, K).is_zero());
        // A * (solution of A x = A y) = A y exactly
        QMatrix y(c, 1);
        for (size_t j = 0; j < c; ++j) y.at(j, 0) = Q.from_long((long)(rng() % 5) - 2);
        QMatrix b = A.mul(Q, y);
        auto x = solve_linear(Q, A, b);
        REQUIRE(x);
        CHECK(A.mul(Q, *x) == b);
    }
}

TEST_CASE("modular field elimination") {
    Field F(13);
    QMatrix A = from_longs(F, 2, 2, {1, 2, 2, 4});
    CHECK(rank(F, A) == 1);
    CHECK(kernel_basis(F, A).cols() == 1);
}
