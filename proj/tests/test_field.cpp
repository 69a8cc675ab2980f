#include "csa/field.hpp"

#include <algorithm>

#include "doctest.h"

using namespace csa;

namespace {

// independent order oracle: count powers until 1
i64 order_by_enumeration(const FieldElem& x) {
    FieldElem cur = x;
    i64 ord = 1;
    while (!cur.is_one()) {
        cur = cur * x;
        ++ord;
    }
    return ord;
}

}  // namespace

TEST_CASE("prime fields are deterministic and well formed") {
    auto F3 = ff_make(3, 1);
    CHECK(F3->size() == 3);
    CHECK(F3->generator() == F3->from_int(2));  // least primitive element of F_3
    CHECK((F3->from_int(1) + F3->from_int(2)).is_zero());

    auto F5 = ff_make(5, 1);
    CHECK(order_by_enumeration(F5->from_int(2)) == 4);  // 2 has multiplicative order 4
    CHECK(F5->from_int(2).mul_order() == 4);
    CHECK(F5->generator() == F5->from_int(2));
}

TEST_CASE("ff_make rejects bad input") {
    CHECK_THROWS_AS(ff_make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(ff_make(2, 25), std::invalid_argument);  // beyond size bound
}

TEST_CASE("extension fields: F_9 basics") {
    auto F9 = ff_make(3, 2);
    CHECK(F9->size() == 9);
    // Frobenius x -> x^3 has order 2
    auto g = F9->generator();
    CHECK(g.frobenius(1).frobenius(1) == g);
    CHECK(g.frobenius(1) != g);
    CHECK(g.mul_order() == 8);
    // every constructed field: generator order = |F|-1 (exhaustive check)
    for (i64 k = 1; k < F9->size(); ++k) {
        auto x = F9->from_index(k);
        CHECK(x.mul_order() == order_by_enumeration(x));
    }
}

TEST_CASE("field arithmetic satisfies inverses and distributivity on all of F_27") {
    auto F = ff_make(3, 3);
    for (i64 i = 1; i < F->size(); ++i) {
        auto x = F->from_index(i);
        CHECK((x * x.inverse()).is_one());
    }
    for (i64 i = 0; i < 30; ++i) {
        auto a = F->from_index((7 * i + 1) % F->size());
        auto b = F->from_index((11 * i + 5) % F->size());
        auto c = F->from_index((13 * i + 2) % F->size());
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("embeddings") {
    auto F3 = ff_make(3, 1);
    auto F9 = ff_make(3, 2);
    auto F27 = ff_make(3, 3);
    auto F81 = ff_make(3, 4);

    SUBCASE("prime-field inclusion") {
        auto e = ff_embed(F3, F9);
        CHECK(e.apply(F3->from_int(2)) == F9->from_int(2));
    }

    SUBCASE("F_9 into F_81: image of the root satisfies the modulus") {
        auto e = ff_embed(F9, F81);
        // homomorphism check on random pairs
        for (i64 k = 0; k < 20; ++k) {
            auto a = F9->from_index((5 * k + 3) % 9);
            auto b = F9->from_index((7 * k + 1) % 9);
            CHECK(e.apply(a * b) == e.apply(a) * e.apply(b));
            CHECK(e.apply(a + b) == e.apply(a) + e.apply(b));
        }
        // the structural root's image is a root of F_9's modulus in F_81
        auto r = e.root_image();
        FieldElem acc = F81->zero();
        for (i64 i = F9->degree(); i >= 0; --i)
            acc = acc * r + ff_embed(F3, F81).apply(F9->modulus()[i]);
        CHECK(acc.is_zero());
    }

    SUBCASE("non-divisible degrees rejected") {
        CHECK_THROWS_AS(ff_embed(F9, F27), std::invalid_argument);
    }

    SUBCASE("embeddings commute along the 3 | 9 | 81 tower") {
        auto e39 = ff_embed(F3, F9);
        auto e981 = ff_embed(F9, F81);
        auto e381 = ff_embed(F3, F81);
        for (i64 k = 0; k < 3; ++k)
            CHECK(e381.apply(F3->from_index(k)) == e981.apply(e39.apply(F3->from_index(k))));
        // and along F_9 -> F_81 -> F_6561
        auto F6561 = ff_make(3, 8);
        auto big = ff_embed(F9, F6561);
        auto hop = ff_embed(F81, F6561);
        for (i64 k = 0; k < 9; ++k) {
            auto x = F9->from_index(k);
            CHECK(big.apply(x) == hop.apply(e981.apply(x)));
        }
    }

    SUBCASE("preimage detects membership") {
        auto e = ff_embed(F9, F81);
        auto x = F9->generator();
        auto y = e.apply(x);
        REQUIRE(e.preimage(y).has_value());
        CHECK(*e.preimage(y) == x);
        // an element of F_81 \ F_9 has no preimage
        i64 found_outside = 0;
        for (i64 k = 0; k < F81->size() && found_outside < 3; ++k) {
            auto z = F81->from_index(k);
            if (!e.preimage(z)) ++found_outside;
        }
        CHECK(found_outside == 3);
    }
}

TEST_CASE("roots of unity") {
    auto F5 = ff_make(5, 1);
    auto e4 = ff_root_of_unity(F5, 4);
    CHECK(order_by_enumeration(e4) == 4);

    auto F13 = ff_make(13, 1);
    auto e3 = ff_root_of_unity(F13, 3);
    CHECK(order_by_enumeration(e3) == 3);
    CHECK(e3.pow(3).is_one());

    auto F7 = ff_make(7, 1);
    CHECK_THROWS_AS(ff_root_of_unity(F7, 4), std::invalid_argument);
}

TEST_CASE("power classes") {
    auto F5 = ff_make(5, 1);
    CHECK(ff_power_class(F5->one(), 4) == 0);
    // fourth powers mod 5 are {1}; 2 is the fixed generator
    CHECK(ff_power_class(F5->from_int(2), 4) == 1);

    auto F13 = ff_make(13, 1);
    // oracle: enumerate cubes mod 13
    std::vector<i64> cubes;
    for (i64 x = 1; x < 13; ++x) cubes.push_back(x * x * x % 13);
    bool four_is_cube = std::find(cubes.begin(), cubes.end(), 4) != cubes.end();
    CHECK_FALSE(four_is_cube);
    CHECK(ff_power_class(F13->from_int(4), 3) != 0);

    // additivity on random pairs
    auto F9 = ff_make(3, 2);
    for (i64 i = 1; i < 9; ++i)
        for (i64 j = 1; j < 9; ++j) {
            auto x = F9->from_index(i), y = F9->from_index(j);
            CHECK(ff_power_class(x * y, 4) == (ff_power_class(x, 4) + ff_power_class(y, 4)) % 4);
        }
    CHECK_THROWS_AS(ff_power_class(F5->zero(), 4), std::invalid_argument);
}

TEST_CASE("norm solving") {
    auto F3 = ff_make(3, 1);
    auto F9 = ff_make(3, 2);
    auto emb = ff_embed(F3, F9);

    SUBCASE("lambda = 1 gives a = 1") {
        CHECK(ff_norm_solve(emb, F3->one()).is_one());
    }

    SUBCASE("lambda = -1: solution has norm -1 (g^4 for the order-8 generator)") {
        auto a = ff_norm_solve(emb, F3->from_int(-1));
        CHECK(ff_norm(emb, a) == emb.apply(F3->from_int(-1)));
    }

    SUBCASE("every lambda in sub* is a norm, exactly") {
        for (i64 k = 1; k < 3; ++k) {
            auto lam = F3->from_index(k);
            auto a = ff_norm_solve(emb, lam);
            // N(a) = a * a^3 for F_9 | F_3
            CHECK(a * a.pow(3) == emb.apply(lam));
        }
        auto F25 = ff_make(5, 2);
        auto e2 = ff_embed(ff_make(5, 1), F25);
        for (i64 k = 1; k < 5; ++k) {
            auto lam = ff_make(5, 1)->from_index(k);
            CHECK(ff_norm(e2, ff_norm_solve(e2, lam)) == e2.apply(lam));
        }
    }

    SUBCASE("zero rejected") {
        CHECK_THROWS_AS(ff_norm_solve(emb, F3->zero()), std::invalid_argument);
    }
}

TEST_CASE("normal elements") {
    auto F3 = ff_make(3, 1);

    SUBCASE("trivial extension") {
        auto e = ff_embed(F3, F3);
        CHECK(ff_normal_element(e).is_one());
    }

    SUBCASE("F_9 | F_3") {
        auto F9 = ff_make(3, 2);
        auto e = ff_embed(F3, F9);
        auto a = ff_normal_element(e);
        // {a, a^3} independent over F_3 <=> a^3 is not a scalar multiple of a
        auto c1 = a, c2 = a.pow(3);
        bool indep = true;
        for (i64 s = 0; s < 3; ++s)
            if (c2 == c1 * F9->from_int(s)) indep = false;
        CHECK(indep);
    }

    SUBCASE("F_81 | F_3: 4x4 conjugate matrix invertible") {
        auto F81 = ff_make(3, 4);
        auto e = ff_embed(F3, F81);
        auto a = ff_normal_element(e);
        // rank oracle over F_3 on absolute coordinates
        std::vector<std::vector<i64>> rows;
        auto conj = a;
        for (int i = 0; i < 4; ++i) {
            rows.push_back(conj.coords());
            conj = conj.pow(3);
        }
        // Gaussian elimination mod 3
        int rank = 0;
        for (int c = 0; c < 4; ++c) {
            int pr = -1;
            for (int r = rank; r < 4; ++r)
                if (rows[r][c] % 3 != 0) { pr = r; break; }
            if (pr < 0) continue;
            std::swap(rows[rank], rows[pr]);
            for (int r = 0; r < 4; ++r) {
                if (r == rank) continue;
                while (rows[r][c] % 3 != 0) {
                    for (int k = 0; k < 4; ++k) rows[r][k] = (rows[r][k] + rows[rank][k]) % 3;
                }
            }
            ++rank;
        }
        CHECK(rank == 4);
    }
}

TEST_CASE("field text form") {
    auto F9 = ff_make(3, 2);
    CHECK(F9->str().substr(0, 7) == "GF(3^2;");
    auto g = F9->generator();
    CHECK(!g.str().empty());
}
