// Derivative normalizer and standard-form reduction.

#include "ddl/catalog.hpp"
#include "ddl/normal_form.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ddl;

TEST_CASE("normalizer on phi' = (1, 2)") {
    auto ds = *catalog_curve("davenport-schmidt");
    auto z = derivative_normalizer(ds, Rational(1));
    // z . (1, 2) = B (1,2) C^{-1} = (1, 0)
    QMatrix dphi(1, 2);
    dphi(0, 0) = Rational(1);
    dphi(0, 1) = Rational(2);
    CHECK(z.B() * dphi * z.C().inverse() == eb_target(1, 1, 2));
    CHECK(z.B().det() * z.C().det() == Rational(1));
}

TEST_CASE("normalizer is the identity when phi' is already normal") {
    auto esc = *catalog_curve("escape");  // phi'(s) = (1, 0)
    auto z = derivative_normalizer(esc, Rational(1));
    CHECK(z.B() == QMatrix::identity(1));
    CHECK(z.C() == QMatrix::identity(2));
}

TEST_CASE("normalizer rejects zero derivative") {
    RFMatrix e(1, 2);
    e(0, 0) = RationalFunction(Rational(5));
    MatrixCurve constant(e, Rational(0), Rational(1));
    CHECK_THROWS_AS(derivative_normalizer(constant, Rational(1, 2)), Error);
}

TEST_CASE("normalizer handles rank-deficient and square cases") {
    // rank 1 out of m = 2: determinant fix lands in the zero rows
    QMatrix M(2, 3);
    M(0, 0) = Rational(2);
    M(0, 1) = Rational(4);
    M(1, 0) = Rational(1);
    M(1, 1) = Rational(2);
    auto z = normalizer_for(M);
    CHECK(z.B() * M * z.C().inverse() == eb_target(1, 2, 3));

    // full-rank square with square determinant: solvable
    QMatrix S(2, 2);
    S(0, 0) = Rational(2);
    S(1, 1) = Rational(2);  // det 4
    auto zs = normalizer_for(S);
    CHECK(zs.B() * S * zs.C().inverse() == QMatrix::identity(2));
    CHECK(zs.B().det() * zs.C().det() == Rational(1));

    // full-rank square with non-square determinant: no exact rational z
    QMatrix T(1, 1);
    T(0, 0) = Rational(2);
    CHECK_THROWS_AS(normalizer_for(T), Error);
}

TEST_CASE("standard form on (s, s^2) at 0") {
    auto ds = *catalog_curve("davenport-schmidt");
    auto res = standard_form(ds, Rational(0));
    CHECK(res.verify());
    CHECK(res.witnesses.size() == 2);
    // k = 2 needs a nontrivial correction
    CHECK_FALSE(res.zprime.C() == QMatrix::identity(2));
}

TEST_CASE("standard form k = 1 degenerates to invertibility") {
    auto sc = *catalog_curve("scalar-2");
    auto res = standard_form(sc, Rational(0));
    CHECK(res.verify());
    CHECK(res.zprime.B() == QMatrix::identity(2));
    CHECK(res.zprime.C() == QMatrix::identity(2));
    CHECK(res.witnesses.size() == 1);
}

TEST_CASE("standard form rejects constant curves and bad shapes") {
    RFMatrix e(1, 2);
    e(0, 1) = RationalFunction(Rational(3));
    MatrixCurve constant(e, Rational(0), Rational(1));
    CHECK_THROWS_AS(standard_form(constant, Rational(0)), Error);

    RFMatrix f(2, 3);
    f(0, 0) = RationalFunction::x();
    MatrixCurve bad(f, Rational(0), Rational(1));
    CHECK_THROWS_AS(standard_form(bad, Rational(0)), Error);  // n not a multiple of m
}

TEST_CASE("standard form verifies on random generic curves") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coef(-4, 4);
    auto random_curve = [&](int m, int n) {
        RFMatrix e(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Rational> cs(4);
                for (auto& c : cs) c = Rational(coef(rng));
                e(i, j) = RationalFunction(Polynomial(cs));
            }
        return MatrixCurve(e, Rational(0), Rational(2));
    };
    for (auto [m, k] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
        int done = 0;
        while (done < 5) {
            auto c = random_curve(m, m * k);
            if (!is_generic(c).generic()) continue;
            StandardFormResult res = standard_form(c, Rational(0));
            CHECK(res.verify());
            ++done;
        }
    }
}
