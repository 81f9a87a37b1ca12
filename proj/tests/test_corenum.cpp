#include <doctest.h>

#include "support.hpp"
#include "zdelta/errors.hpp"
#include "zdelta/linalg.hpp"
#include "zdelta/linear_fraction.hpp"
#include "zdelta/piecewise.hpp"
#include "zdelta/poly.hpp"

using namespace zd;
using zt::Q;

TEST_CASE("rationals parse to lowest terms and print as p/q") {
    CHECK(to_string(Q("6/8")) == "3/4");
    CHECK(to_string(Q("-4/2")) == "-2");
    CHECK(to_string(Q("0/5")) == "0");
    CHECK(Q("-3/6") == Rational(-1, 2));
    CHECK_THROWS_AS(parse_rational("3/-6"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    Rational big = Q("123456789012345678901234567890/3");
    CHECK(to_string(big * 3) == "123456789012345678901234567890");
}

TEST_CASE("polynomials trim, evaluate, integrate and round-trip through text") {
    Poly p({8, -4});
    CHECK(p.degree() == 1);
    CHECK(p(Q("1")) == 4);
    Poly sq = Poly::affine(3, -1) * Poly::affine(3, -1);
    CHECK(sq == Poly({9, -6, 1}));
    CHECK(sq.integrate(1, 3) == Q("8/3"));
    CHECK((sq - sq).is_zero());
    CHECK(Poly({1, 0, 0}).degree() == 0);
    for (const Poly& x : {sq, Poly({Q("17/2"), -1, Q("-1/2")}), Poly(), Poly({0, 1})})
        CHECK(parse_poly(x.str()) == x);
    CHECK(parse_poly("9-6t+t^2") == sq);
    CHECK_THROWS_AS(parse_poly("t t"), ParseError);
}

TEST_CASE("polynomial roots split rational and irrational") {
    RootSet r = real_roots(Poly({-2, 0, 1}));
    CHECK(r.rational.empty());
    CHECK(r.has_irrational);
    RootSet s = real_roots(Poly({Q("3/4"), -2, 1}));
    REQUIRE(s.rational.size() == 2);
    CHECK(s.rational[0] == Q("1/2"));
    CHECK(s.rational[1] == Q("3/2"));
    CHECK(count_roots_open(Poly({Q("3/4"), -2, 1}), 0, 1) == 1);
}

TEST_CASE("linear fractions are canonical") {
    LinearFraction a(12, 0, 0, 13);
    CHECK(a == LinearFraction(24, 0, 0, 26));
    CHECK(a.q1() == 1);
    CHECK(a.str() == "12/(13λ)");
    CHECK(LinearFraction(4, 8, 0, 11).str() == "(4+8λ)/(11λ)");
    CHECK(LinearFraction(0, 14, 0, 5) == LinearFraction::constant(Q("14/5")));
    CHECK(LinearFraction(48, 0, 25, 0).str() == "48/25");
    CHECK(LinearFraction(4, 8, 0, 11)(Q("1/2")) == Q("16/11"));
    for (const char* s : {"(4+8λ)/(11λ)", "12/(13λ)", "1+2λ", "48/25", "λ", "(3+6λ)/(10λ)", "21/(25λ)"})
        CHECK(parse_fraction(s).str() == s);
    CHECK(parse_fraction("(1+l)/(2l)") == LinearFraction(1, 1, 0, 2));
    CHECK_THROWS_AS(parse_fraction("(1+λ"), ParseError);
}

TEST_CASE("pw_integrate: reference values") {
    PiecewisePoly f({0, 1, 3}, {Poly({8, -4}), Poly({9, -6, 1})});
    CHECK(pw_integrate(f, 0, 3) == Q("26/3"));
    CHECK(pw_integrate(f, 0, 3) / 8 == Q("13/12"));
    PiecewisePoly z({0, 1}, {Poly()});
    CHECK(pw_integrate(z, 0, 1) == 0);
    PiecewisePoly g({0, 2, 3}, {Poly({0, 0, 1}), Poly({-4, 4})});
    // 8/3 on [0,2] plus 6 on [2,3]
    CHECK(pw_integrate(g, 0, 3) == Q("26/3"));
    CHECK_THROWS_AS(pw_integrate(g, -1, 3), DomainError);
    CHECK_THROWS_AS(pw_integrate(g, 0, 4), DomainError);
}

TEST_CASE("pw_integrate is additive over subdivisions") {
    zt::Rng rng(11);
    PiecewisePoly f({0, 1, 3, 5}, {Poly({8, 0, Q("-1/2")}), Poly({Q("17/2"), -1, Q("-1/2")}), Poly({Q("25/2"), -5, Q("1/2")})});
    for (int i = 0; i < 50; ++i) {
        Rational a = rng.rational(5), b = rng.rational(5);
        if (a > b) std::swap(a, b);
        Rational c = a + (b - a) * rng.unit();
        CHECK(pw_integrate(f, a, b) == pw_integrate(f, a, c) + pw_integrate(f, c, b));
    }
}

TEST_CASE("shape errors") {
    CHECK_THROWS_AS(PiecewisePoly({0, 1}, {Poly(), Poly()}), ShapeError);
    CHECK_THROWS_AS(PiecewisePoly({1, 0}, {Poly()}), ShapeError);
}

TEST_CASE("pw_min: reference values") {
    auto m = pw_min({LinearFraction(12, 0, 0, 13), LinearFraction(4, 8, 0, 11), LinearFraction::constant(Q("48/25"))},
                    unit_lambda());
    REQUIRE(m.size() == 3);
    CHECK(m.breaks == std::vector<Rational>{0, Q("25/82"), Q("10/13"), 1});
    CHECK(m.pieces[0] == LinearFraction::constant(Q("48/25")));
    CHECK(m.pieces[1] == LinearFraction(4, 8, 0, 11));
    CHECK(m.pieces[2] == LinearFraction(12, 0, 0, 13));
    CHECK(m.open_lo);

    auto c = pw_min({LinearFraction::constant(5)}, unit_lambda());
    CHECK(c.size() == 1);
    CHECK(c.pieces[0] == LinearFraction::constant(5));

    auto h = pw_min({LinearFraction(1, 0, 0, 1), LinearFraction::constant(2)}, unit_lambda());
    CHECK(h.breaks == std::vector<Rational>{0, Q("1/2"), 1});
    CHECK(h.pieces[0] == LinearFraction::constant(2));
    CHECK(h.pieces[1] == LinearFraction(1, 0, 0, 1));
}

TEST_CASE("pw_min: pole inside the domain") {
    CHECK_THROWS_AS(pw_min({LinearFraction(1, 0, Q("-1/2"), 1), LinearFraction::constant(1)}, unit_lambda()), PoleError);
}

TEST_CASE("pw_min: irrational crossing is not representable") {
    LinearFraction a(0, 1, 1, 0);         // λ
    LinearFraction b(Q("1/2"), 0, 0, 1);  // 1/(2λ), meets λ at 1/sqrt(2)
    CHECK_THROWS_AS(pw_min({a, b}, unit_lambda()), NotRepresentable);
}

TEST_CASE("pw_min lies below every input and is idempotent") {
    zt::Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<LinearFraction> fns;
        int k = rng.integer(1, 4);
        for (int i = 0; i < k; ++i) {
            // c0/λ + c1 with small integer data: crossings are linear, hence rational
            fns.push_back(LinearFraction(rng.integer(1, 9), rng.integer(0, 9), 0, rng.integer(1, 9)));
        }
        PiecewiseFraction m = pw_min(fns, unit_lambda());
        for (int s = 0; s < 10; ++s) {
            Rational x = rng.unit(97);
            for (const auto& f : fns) CHECK(m(x) <= f(x));
        }
        CHECK(m.continuous());
        CHECK(simplify(pw_min(m.pieces, unit_lambda())) == simplify(m));
    }
}

TEST_CASE("pw_envelope takes min and max across piecewise inputs") {
    auto a = pw_min({LinearFraction(1, 0, 0, 1), LinearFraction::constant(2)}, unit_lambda());
    auto b = pw_min({LinearFraction::constant(Q("3/2"))}, unit_lambda());
    auto lo = pw_envelope({a, b}, Extreme::Min);
    auto hi = pw_envelope({a, b}, Extreme::Max);
    for (const char* x : {"1/10", "1/2", "2/3", "9/10", "1"}) {
        Rational l = Q(x);
        CHECK(lo(l) == std::min(a(l), b(l)));
        CHECK(hi(l) == std::max(a(l), b(l)));
    }
}

TEST_CASE("solve_linear_system: reference values") {
    CHECK(solve_linear_system({{-2}}, {-1}) == Vector{Q("1/2")});
    Vector v{Q("1/3"), -7, Q("5/2")};
    CHECK(solve_linear_system(identity(3), v) == v);
    // S1, D = 2E + F: (D - xE).E = 0 with E^2 = -1 gives x = 1
    CHECK(solve_linear_system({{-1}}, {-1}) == Vector{1});
    CHECK_THROWS_AS(solve_linear_system({{1, 2}, {2, 4}}, {1, 1}), SingularMatrix);
}

TEST_CASE("solve_linear_system then multiply returns the right-hand side") {
    zt::Rng rng(3);
    int done = 0;
    while (done < 40) {
        std::size_t n = rng.integer(1, 5);
        Matrix m(n, Vector(n));
        Vector b(n);
        for (auto& row : m)
            for (auto& x : row) x = rng.rational(6) - 3;
        for (auto& x : b) x = rng.rational(6) - 3;
        if (rank(m) < n) {
            CHECK_THROWS_AS(solve_linear_system(m, b), SingularMatrix);
            continue;
        }
        CHECK(mat_vec(m, solve_linear_system(m, b)) == b);
        ++done;
    }
}

TEST_CASE("inertia and definiteness") {
    Inertia in = inertia({{-1, 1}, {1, 0}});
    CHECK(in.positive == 1);
    CHECK(in.negative == 1);
    CHECK(is_negative_definite({{-2, 1}, {1, -2}}));
    CHECK_FALSE(is_negative_definite({{-1, 1}, {1, -1}}));
    CHECK_FALSE(is_symmetric({{0, 1}, {2, 0}}));
}
