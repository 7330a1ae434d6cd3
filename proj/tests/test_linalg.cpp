#include <catch2/catch_amalgamated.hpp>

#include "reeblab/errors.hpp"
#include "reeblab/linalg.hpp"

using namespace reeblab;

TEST_CASE("vector arithmetic") {
    Vec x{1.0, 2.0, 3.0};
    Vec y{-1.0, 0.5, 2.0};
    CHECK(dot(x, y) == Catch::Approx(6.0));
    CHECK(norm(Vec{3.0, 4.0}) == Catch::Approx(5.0));
    CHECK(max_abs(Vec{-7.0, 2.0, 1.0}) == Catch::Approx(7.0));

    Vec r = add(x, y);
    CHECK(r[0] == 0.0);
    CHECK(r[2] == 5.0);
    r = sub(x, y);
    CHECK(r[0] == 2.0);
    r = scale(2.0, x);
    CHECK(r[1] == 4.0);
    Vec acc{0.0, 0.0, 0.0};
    axpy(3.0, x, acc);
    CHECK(acc[2] == 9.0);
}

TEST_CASE("matrix products and transpose") {
    Mat a{{1.0, 2.0}, {3.0, 4.0}};
    Mat b{{0.0, 1.0}, {1.0, 0.0}};
    Mat c = matmul(a, b);
    CHECK(c(0, 0) == 2.0);
    CHECK(c(0, 1) == 1.0);
    CHECK(c(1, 0) == 4.0);
    CHECK(c(1, 1) == 3.0);

    Vec v = matvec(a, Vec{1.0, -1.0});
    CHECK(v[0] == -1.0);
    CHECK(v[1] == -1.0);

    Mat at = transpose(a);
    CHECK(at(0, 1) == 3.0);

    Mat i3 = Mat::identity(3);
    CHECK(i3(2, 2) == 1.0);
    CHECK(i3(0, 1) == 0.0);
}

TEST_CASE("solve and inverse round-trip") {
    Mat a{{4.0, 1.0, 0.0}, {1.0, 3.0, -1.0}, {0.0, -1.0, 2.0}};
    Vec b{1.0, 2.0, 3.0};
    Vec x = solve(a, b);
    Vec back = matvec(a, x);
    for (int i = 0; i < 3; ++i) CHECK(back[i] == Catch::Approx(b[i]).margin(1e-12));

    Mat inv = inverse(a);
    Mat prod = matmul(a, inv);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(prod(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-12));
}

TEST_CASE("singular system raises metric_error") {
    Mat a{{1.0, 2.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(solve(a, Vec{1.0, 1.0}), metric_error);
    CHECK_THROWS_AS(inverse(a), metric_error);
}

TEST_CASE("positive definiteness probe") {
    Mat pd{{2.0, -1.0}, {-1.0, 2.0}};
    Mat indef{{1.0, 2.0}, {2.0, 1.0}};
    CHECK(is_positive_definite(pd));
    CHECK_FALSE(is_positive_definite(indef));
}

TEST_CASE("symmetry defect and outer product") {
    Mat s{{1.0, 2.0}, {2.0, 5.0}};
    CHECK(symmetry_defect(s) == 0.0);
    Mat ns{{1.0, 2.0}, {2.5, 5.0}};
    CHECK(symmetry_defect(ns) == Catch::Approx(0.5));

    Mat o = outer(Vec{1.0, 2.0}, Vec{3.0, 4.0});
    CHECK(o(0, 0) == 3.0);
    CHECK(o(1, 0) == 6.0);
    CHECK(o(0, 1) == 4.0);
}
