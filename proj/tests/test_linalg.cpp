#include <doctest.h>

#include <cmath>

#include "dfr/linalg.hpp"
#include "testkit.hpp"

using namespace dfr::linalg;

namespace {

Matrix random_matrix(testkit::Rng& rng, std::size_t rows, std::size_t cols, double lo = -1.0,
                     double hi = 1.0) {
    Matrix m(rows, cols);
    for (auto& v : m.data()) v = rng.uniform(lo, hi);
    return m;
}

double rel(const Matrix& got, const Matrix& want) {
    return testkit::rel_error(got.data(), want.data());
}

}  // namespace

TEST_CASE("matmul identity") {
    Matrix a(2, 2, {1, 2, 3, 4});
    CHECK(matmul(Matrix::identity(2), a) == a);
}

TEST_CASE("matmul hand example") {
    Matrix a(2, 2, {1, 2, 3, 4});
    Matrix b(2, 1, {1, 1});
    Matrix c = matmul(a, b);
    CHECK(c(0, 0) == 3);
    CHECK(c(1, 0) == 7);
}

TEST_CASE("matmul dimension mismatch names both shapes") {
    Matrix a(2, 3), b(2, 2);
    CHECK_THROWS_WITH_AS(matmul(a, b), doctest::Contains("2x3"), std::invalid_argument);
}

TEST_CASE("matmul associativity on random triples") {
    testkit::Rng rng{11};
    for (int it = 0; it < 20; ++it) {
        Matrix a = random_matrix(rng, 4, 5), b = random_matrix(rng, 5, 3),
               c = random_matrix(rng, 3, 6);
        CHECK(rel(matmul(matmul(a, b), c), matmul(a, matmul(b, c))) < 1e-10);
    }
}

TEST_CASE("matrix rejects non-finite entries") {
    CHECK_THROWS_AS(Matrix(1, 2, {1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST_CASE("ridge_solve with identity B shrinks by 1/(1+reg)") {
    Matrix a(2, 3, {1, 2, 3, 4, 5, 6});
    const double reg = 0.5;
    Matrix r = ridge_solve(a, Matrix::identity(3), reg);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(r(i, j) == doctest::Approx(a(i, j) / (1.0 + reg)).epsilon(1e-12));
}

TEST_CASE("ridge_solve hand example, reg = 0") {
    Matrix a(1, 2, {2, 4});
    Matrix b(1, 2, {1, 2});
    Matrix r = ridge_solve(a, b, 0.0);
    CHECK(r(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("ridge_solve huge reg drives entries to zero") {
    testkit::Rng rng{5};
    Matrix a = random_matrix(rng, 3, 8), b = random_matrix(rng, 4, 8);
    Matrix r = ridge_solve(a, b, 1e12);
    for (double v : r.data()) CHECK(std::fabs(v) < 1e-6);
}

TEST_CASE("ridge_solve singular Gram errors when reg = 0") {
    Matrix a(1, 2, {1, 1});
    Matrix b(2, 2, {1, 2, 2, 4});  // rank 1
    CHECK_THROWS_WITH_AS(ridge_solve(a, b, 0.0), doctest::Contains("singular Gram"),
                         std::runtime_error);
}

TEST_CASE("ridge_solve shape mismatch") {
    CHECK_THROWS_AS(ridge_solve(Matrix(2, 3), Matrix(2, 4), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ridge_solve(Matrix(2, 3), Matrix(2, 3), -1.0), std::invalid_argument);
}

TEST_CASE("ridge_solve satisfies the normal equation on well-conditioned inputs") {
    testkit::Rng rng{7};
    for (int it = 0; it < 10; ++it) {
        Matrix a = random_matrix(rng, 10, 50), b = random_matrix(rng, 10, 50);
        const double reg = 0.3;
        Matrix x = ridge_solve(a, b, reg);

        Matrix gram = matmul(b, b.transpose());
        for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) += reg;
        CHECK(rel(matmul(x, gram), matmul(a, b.transpose())) < 1e-9);
    }
}

TEST_CASE("ridge_solve agrees with the Gauss-Jordan oracle") {
    testkit::Rng rng{13};
    for (int it = 0; it < 100; ++it) {
        Matrix a = random_matrix(rng, 4, 12), b = random_matrix(rng, 10, 12);
        const double reg = rng.uniform(0.01, 2.0);
        CHECK(rel(ridge_solve(a, b, reg), testkit::oracle_ridge(a, b, reg)) < 1e-8);
    }
}

TEST_CASE("flatten ordering and round trip") {
    Matrix m(2, 2, {1, 2, 3, 4});
    CHECK(flatten(m) == Vector{1, 2, 3, 4});
    CHECK(flatten(Matrix(1, 1, {7})) == Vector{7});

    testkit::Rng rng{3};
    for (int it = 0; it < 20; ++it) {
        const std::size_t r = 1 + rng.next() % 6, c = 1 + rng.next() % 6;
        Matrix m2 = random_matrix(rng, r, c);
        CHECK(unflatten(flatten(m2), r, c) == m2);
    }
}
