#include <doctest.h>

#include "support.hpp"
#include "zdelta/delta.hpp"
#include "zdelta/errors.hpp"

using namespace zd;
using zt::Q;

namespace {

// "f0", "b1", "f1", ... on (0,1]
PiecewiseFraction pw(std::initializer_list<const char*> xs) {
    std::vector<Rational> b{0};
    std::vector<LinearFraction> p;
    int i = 0;
    for (auto x : xs) {
        if (i++ % 2 == 0) p.push_back(parse_fraction(x));
        else b.push_back(Q(x));
    }
    b.push_back(1);
    return PiecewiseFraction(b, p, {}, true);
}

bool same(const PiecewiseFraction& a, const PiecewiseFraction& b) {
    return a.breaks == b.breaks && a.pieces == b.pieces;
}

}  // namespace

TEST_CASE("flag_bound: reference values") {
    CHECK(flag_bound(zt::catalog().flag("s1_flag_F")).expr == parse_fraction("12/(13λ)"));
    CHECK(flag_bound(zt::catalog().flag("s1_1_C-E_notflex")).expr == parse_fraction("(4+8λ)/(11λ)"));
    CHECK(flag_bound(zt::catalog().flag("s2_flag_B")).expr == parse_fraction("21/(25λ)"));
    FlagResult toy;
    toy.model = "toy";
    toy.flag = "G";
    toy.s_value = Q("1/2");
    toy.A_flag = LinearFraction::constant(1);
    CHECK(flag_bound(toy).expr == parse_fraction("2/λ"));
    CHECK(flag_bound(toy).provenance == "toy:G");
    toy.lambda = Q("1/2");
    CHECK_THROWS_AS(flag_bound(toy), DomainError);
}

TEST_CASE("az_lower_bound: reference values") {
    CHECK(same(az_lower_bound(zt::catalog().flag("s1_1_CE_notflex")),
               pw({"48/25", "25/83", "(4+4λ)/(9λ)", "13/14", "6/(7λ)"})));
    CHECK(same(az_lower_bound(zt::catalog().flag("s2_2_CAB")), pw({"7/3", "3/13", "(7+7λ)/(16λ)", "23/25", "21/(25λ)"})));
    CHECK(same(az_lower_bound(zt::catalog().flag("s1_flag_F")), pw({"6/(7λ)"})));
}

TEST_CASE("assemble_global: theorem values") {
    const DeltaAssembly& t1 = zt::catalog().theorem("thm1_1");
    CHECK(same(t1.lower, pw({"48/25", "5/22", "(3+6λ)/(10λ)", "13/14", "6/(7λ)"})));
    REQUIRE(t1.upper);
    CHECK(same(*t1.upper, pw({"(12+36λ)/(43λ)", "3/34", "(3+6λ)/(10λ)", "13/14", "6/(7λ)"})));
    REQUIRE(!t1.exact.empty());
    CHECK(t1.exact.back().hi == 1);
    CHECK(t1.exact.back().fn == parse_fraction("6/(7λ)"));

    const DeltaAssembly& t2 = zt::catalog().theorem("thm2_1");
    CHECK(same(t2.lower, pw({"42/23", "23/73", "(7+7λ)/(16λ)", "23/25", "21/(25λ)"})));
    REQUIRE(t2.upper);
    CHECK(same(*t2.upper, pw({"(21+63λ)/(68λ)", "5/19", "(7+7λ)/(16λ)", "23/25", "21/(25λ)"})));

    const DeltaAssembly& t22 = zt::catalog().theorem("thm2_2");
    CHECK(t22.exact == std::vector<ExactRange>{{Q("18/25"), 1, parse_fraction("21/(25λ)"), t22.exact.at(0).label}});
}

TEST_CASE("assemble_global: one case is that case") {
    for (const auto& c : zt::catalog().cases()) {
        CAPTURE(c.id);
        DeltaCase d = zt::catalog().delta_case(c.id);
        DeltaAssembly a = assemble_global({d});
        CHECK(same(a.lower, case_lower(d)));
        CHECK(a.upper.has_value() == case_upper(d).has_value());
        if (a.upper) CHECK(same(*a.upper, *case_upper(d)));
    }
    CHECK_THROWS_AS(assemble_global({}), PreconditionError);
}

TEST_CASE("case_kind") {
    CHECK(case_kind(zt::catalog().delta_case("1_S-C_offE")) == CaseKind::Exact);
    CHECK(case_kind(zt::catalog().delta_case("2_S-C_general")) == CaseKind::Lower);
    CHECK(case_kind(zt::catalog().delta_case("1_C-E_notflex")) == CaseKind::Upper);
}

TEST_CASE("r_threshold: reference values") {
    CHECK(r_threshold(zt::catalog().theorem("thm1_1").lower).value == Q("3/4"));
    CHECK(r_threshold(zt::catalog().theorem("thm2_1").lower).value == Q("7/9"));
    CHECK(r_threshold(zt::catalog().theorem("thm1_2").lower).value == Q("4/5"));
    CHECK(r_threshold(zt::catalog().theorem("thm2_2").lower).value == Q("21/25"));
    RThreshold c = r_threshold(pw({"2"}));
    CHECK(c.value == 1);
    CHECK_FALSE(c.warning);
    RThreshold w = r_threshold(pw({"1/2"}));
    CHECK(w.value == 0);
    CHECK(w.warning);
}

TEST_CASE("infimum") {
    PiecewiseFraction f = pw({"48/25", "5/22", "(3+6λ)/(10λ)", "13/14", "6/(7λ)"});
    CHECK(infimum(f, 0, 1) == Q("6/7"));
    CHECK(infimum(pw({"1/λ"}), 0, Q("1/2")) == 2);
    CHECK_THROWS_AS(infimum(f, 1, 1), DomainError);
}

TEST_CASE("AZ lower bounds never exceed the flag bound") {
    zt::Rng rng(53);
    for (const auto& name : zt::flag_configs()) {
        CAPTURE(name);
        const FlagResult& r = zt::catalog().flag(name);
        if (r.points.empty()) continue;
        PiecewiseFraction az = az_lower_bound(r);
        BoundFn fb = flag_bound(r);
        for (int i = 0; i < 10; ++i) {
            Rational l = rng.unit(60);
            CHECK(az(l) <= fb.expr(l));
            for (const auto& p : point_bounds(r)) CHECK(az(l) <= p.expr(l));
        }
    }
}

TEST_CASE("r_threshold is sharp and lower <= upper on every theorem") {
    const Rational eps = Q("1/10000");
    zt::Rng rng(59);
    for (const auto& t : zt::catalog().theorems()) {
        CAPTURE(t.id);
        const DeltaAssembly& a = zt::catalog().theorem(t.id);
        RThreshold r = r_threshold(a.lower);
        REQUIRE(r.value > 0);
        CHECK(a.lower(r.value) >= 1);
        if (r.value + eps <= 1) CHECK(a.lower(r.value + eps) < 1);
        for (int i = 0; i < 20; ++i) {
            Rational l = rng.unit(100);
            if (l < r.value) CHECK(a.lower(l) > 1);
            if (a.upper) CHECK(a.lower(l) <= (*a.upper)(l));
        }
        for (const auto& e : a.exact)
            for (const Rational& l : std::vector<Rational>{e.hi, (e.lo + e.hi) / 2}) {
                CHECK(a.lower(l) == e.fn(l));
                CHECK((*a.upper)(l) == e.fn(l));
            }
    }
}
