// Exact kernel: rationals, polynomials, rational functions, matrices.

#include "ddl/matrix.hpp"
#include "ddl/polynomial.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ddl;

TEST_CASE("rational parsing and formatting") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(-8, 2)) == "-4");
    CHECK(*parse_rational("3/4") == Rational(3, 4));
    CHECK(*parse_rational("-7") == Rational(-7));
    CHECK(*parse_rational(" 10/4 ") == Rational(5, 2));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK_FALSE(parse_rational("x"));
    CHECK(rat_floor(Rational(-7, 2)) == -4);
    CHECK(rat_ceil(Rational(-7, 2)) == -3);
    CHECK(rat_round(Rational(5, 2)) == 2);  // halves round down
    CHECK(rat_round(Rational(7, 3)) == 2);
    CHECK(rat_pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("polynomial arithmetic, parsing and printing") {
    auto p = *parse_polynomial("1 + 2*s + s^2");
    CHECK(p.degree() == 2);
    CHECK(p.eval(Rational(2)) == Rational(9));
    CHECK(*parse_polynomial("s^2 - 1") == *parse_polynomial("-1 + s^2"));
    CHECK(*parse_polynomial("3/2*s") == Polynomial::monomial(Rational(3, 2), 1));
    CHECK(*parse_polynomial("-s^3") == Polynomial::monomial(Rational(-1), 3));
    CHECK_FALSE(parse_polynomial(""));
    CHECK_FALSE(parse_polynomial("s +"));
    CHECK(p.str() == "1 + 2*s + s^2");
    // round trip
    auto q = *parse_polynomial(p.str());
    CHECK(q == p);
    auto [quot, rem] = Polynomial::divmod(*parse_polynomial("s^3 - 1"), *parse_polynomial("s - 1"));
    CHECK(quot == *parse_polynomial("1 + s + s^2"));
    CHECK(rem.is_zero());
}

TEST_CASE("sturm root counting") {
    auto p = *parse_polynomial("s^2 - 2");
    CHECK(count_real_roots(p, Rational(0), Rational(2)) == 1);
    CHECK(count_real_roots(p, Rational(-2), Rational(2)) == 2);
    CHECK(count_real_roots(p, Rational(2), Rational(3)) == 0);
    // endpoint roots count
    auto q = *parse_polynomial("s*(1 - s)");
    CHECK(count_real_roots(*parse_polynomial("s - s^2"), Rational(0), Rational(1)) == 2);
    // multiple roots are counted once
    auto sq = *parse_polynomial("s^2");
    CHECK(count_real_roots(sq, Rational(-1), Rational(1)) == 1);
    (void)q;
}

TEST_CASE("rational roots") {
    auto p = *parse_polynomial("-1/2 + s - 1/2*s^2");  // roots 1, 1 (double)
    auto roots = rational_roots(*parse_polynomial("2 - 3*s + s^2"));  // 1 and 2
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == Rational(1));
    CHECK(roots[1] == Rational(2));
    auto r2 = rational_roots(*parse_polynomial("s^2 - 2"));
    CHECK(r2.empty());
    (void)p;
}

TEST_CASE("rational functions reduce and stay monic") {
    RationalFunction f(*parse_polynomial("s^2 - 1"), *parse_polynomial("s - 1"));
    CHECK(f == RationalFunction(*parse_polynomial("1 + s")));
    RationalFunction g(*parse_polynomial("2*s"), *parse_polynomial("2 + 2*s"));
    CHECK(g.den().leading() == 1);
    CHECK(g.eval(Rational(1)) == Rational(1, 2));
    CHECK_THROWS(RationalFunction(Polynomial(Rational(1)), Polynomial()));
    auto d = RationalFunction::x().inverse();
    CHECK(d.eval(Rational(4)) == Rational(1, 4));
    CHECK_THROWS(d.eval(Rational(0)));
}

TEST_CASE("det examples") {
    RFMatrix a(2, 2);
    a(0, 0) = RationalFunction(Rational(1));
    a(0, 1) = RationalFunction::x();
    a(1, 0) = RationalFunction::x();
    a(1, 1) = RationalFunction(*parse_polynomial("s^2"));
    CHECK(a.det().is_zero());  // proportional rows

    RFMatrix b(2, 2);
    b(0, 0) = RationalFunction::x();
    b(1, 1) = RationalFunction::x();
    CHECK(b.det() == RationalFunction(*parse_polynomial("s^2")));

    RFMatrix c(2, 2);
    c(0, 0) = RationalFunction(*parse_polynomial("1 + s"));
    c(0, 1) = RationalFunction(Rational(2));
    c(1, 0) = RationalFunction(Rational(3));
    c(1, 1) = RationalFunction::x();
    // cofactor-expansion oracle: (1+s)*s - 2*3
    auto expected = RationalFunction(*parse_polynomial("-6 + s + s^2"));
    CHECK(c.det() == expected);
}

TEST_CASE("inverse examples") {
    CHECK(RFMatrix::identity(3).inverse() == RFMatrix::identity(3));
    RFMatrix s2(2, 2);
    s2(0, 0) = RationalFunction::x();
    s2(1, 1) = RationalFunction::x();
    auto inv = s2.inverse();
    CHECK(inv(0, 0) == RationalFunction::x().inverse());
    CHECK(inv(0, 1).is_zero());
    RFMatrix u(2, 2);
    u(0, 0) = RationalFunction(Rational(1));
    u(0, 1) = RationalFunction::x();
    u(1, 1) = RationalFunction(Rational(1));
    auto ui = u.inverse();
    CHECK(ui(0, 1) == -RationalFunction::x());
    CHECK((u * ui) == RFMatrix::identity(2));
    RFMatrix z(2, 2);
    CHECK_THROWS(z.inverse());
}

TEST_CASE("det is multiplicative on random rational matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::uniform_int_distribution<int> size(1, 5);
    for (int t = 0; t < 200; ++t) {
        int n = size(rng);
        QMatrix a(n, n), b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a(i, j) = Rational(coef(rng), den(rng));
                b(i, j) = Rational(coef(rng), den(rng));
            }
        CHECK((a * b).det() == a.det() * b.det());
    }
}

TEST_CASE("inverse times original is the identity, symbolically") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<int> size(1, 3);
    int done = 0;
    while (done < 100) {
        int n = size(rng);
        RFMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Rational> cs(static_cast<std::size_t>(deg(rng)) + 1);
                for (auto& c : cs) c = Rational(coef(rng));
                m(i, j) = RationalFunction(Polynomial(cs));
            }
        if (m.det().is_zero()) continue;
        CHECK((m.inverse() * m) == RFMatrix::identity(n));
        ++done;
    }
}

TEST_CASE("kernel and rank") {
    QMatrix m(2, 4);
    m(0, 0) = Rational(1);
    m(1, 1) = Rational(1);
    m(1, 2) = Rational(2);
    CHECK(m.rank() == 2);
    auto ker = m.kernel();
    REQUIRE(ker.size() == 2);
    for (const auto& k : ker) {
        for (int i = 0; i < 2; ++i) {
            Rational acc(0);
            for (int j = 0; j < 4; ++j) acc += m(i, j) * k[static_cast<std::size_t>(j)];
            CHECK(acc == 0);
        }
    }
}
