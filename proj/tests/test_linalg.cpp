#include "csa/linalg.hpp"

#include "doctest.h"

using namespace csa;

namespace {

Mat random_mat(const FieldPtr& f, i64 rows, i64 cols, Rng& rng) {
    Mat m = mat_zero(f, rows, cols);
    for (i64 i = 0; i < rows; ++i)
        for (i64 j = 0; j < cols; ++j) {
            Poly n = random_monic(f, rng.below(3), rng) * Poly::constant(f->from_index(rng.below(f->size())));
            Poly d = random_monic(f, rng.below(2), rng);
            m[i][j] = RatFunc(n, d);
        }
    return m;
}

}  // namespace

TEST_CASE("inverse and multiplication") {
    auto F5 = ff_make(5, 1);
    Rng rng(123);
    int invertible_seen = 0;
    for (int trial = 0; trial < 8; ++trial) {
        Mat a = random_mat(F5, 4, 4, rng);
        auto inv = mat_inverse(a);
        if (!inv) continue;
        ++invertible_seen;
        CHECK(mat_equal(mat_mul(a, *inv), mat_identity(F5, 4)));
        CHECK(mat_equal(mat_mul(*inv, a), mat_identity(F5, 4)));
    }
    CHECK(invertible_seen >= 5);  // random matrices over an infinite field are mostly invertible
}

TEST_CASE("solve and kernel") {
    auto F3 = ff_make(3, 1);
    Rng rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        Mat a = random_mat(F3, 3, 5, rng);
        auto kernel = mat_right_kernel(a);
        CHECK(i64(kernel.size()) == 5 - mat_rank(a));
        for (const auto& v : kernel) {
            Vec img = mat_apply(a, v);
            for (const auto& x : img) CHECK(x.is_zero());
        }
        // consistent system: b = A x0
        Vec x0(5, RatFunc::zero(F3));
        for (auto& x : x0) x = RatFunc(random_monic(F3, rng.below(2), rng));
        Vec b = mat_apply(a, x0);
        auto sol = mat_solve(a, b);
        REQUIRE(sol.has_value());
        Vec chk = mat_apply(a, *sol);
        for (size_t i = 0; i < b.size(); ++i) CHECK(chk[i] == b[i]);
    }
}

TEST_CASE("inconsistent system reports nullopt") {
    auto F3 = ff_make(3, 1);
    Mat a = mat_zero(F3, 2, 2);
    a[0][0] = RatFunc::one(F3);
    a[1][0] = RatFunc::one(F3);
    Vec b{RatFunc::one(F3), RatFunc::zero(F3)};
    CHECK_FALSE(mat_solve(a, b).has_value());
}

TEST_CASE("coords_in_span") {
    auto F5 = ff_make(5, 1);
    Rng rng(9);
    Mat basis = random_mat(F5, 3, 4, rng);
    Mat combo = mat_zero(F5, 2, 4);
    Mat coef = random_mat(F5, 2, 3, rng);
    combo = mat_mul(coef, basis);
    auto c = coords_in_span(basis, combo);
    REQUIRE(c.has_value());
    CHECK(mat_equal(mat_mul(*c, basis), combo));
}
