// one PASS/FAIL line per acceptance criterion; exit status is the number of failures
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "zdelta/blowup.hpp"
#include "zdelta/catalog.hpp"
#include "zdelta/delta.hpp"
#include "zdelta/errors.hpp"
#include "zdelta/io.hpp"
#include "zdelta/reproduce.hpp"
#include "zdelta/zariski.hpp"

using namespace zd;

namespace {

Rational Q(const char* s) { return parse_rational(s); }

struct Crit {
    std::vector<std::string> problems;
    void expect(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
};

struct VolPiece {
    const char* hi;
    const char* poly;
};

PiecewiseFraction pwf(std::initializer_list<const char*> xs) {
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

bool same(const PiecewiseFraction& a, const PiecewiseFraction& b) { return a.breaks == b.breaks && a.pieces == b.pieces; }

void c1(Catalog& cat, Crit& c) {
    std::vector<std::pair<const char*, const char*>> want = {
        {"s1_flag_F", "13/12"},          {"s1_flag_E", "7/6"},           {"s2_flag_A1", "23/21"},
        {"s2_flag_B", "25/21"},          {"s1_1_C-E_notflex", "11/4"},   {"s1_1_C-E_flex", "43/12"},
        {"s1_1_CF_tangent", "3"},        {"s1_1_CE_notflex", "9/4"},     {"s1_1_CE_flex", "10/3"},
        {"s2_2_C-AB_notflex", "53/21"},  {"s2_2_C-AB_flex", "68/21"},    {"s2_2_CN_tangent", "19/7"},
        {"s2_2_CA-B_notflex", "2"},      {"s2_2_CA-B_flex", "61/21"},    {"s2_2_CB-A_notflex", "55/21"},
        {"s2_2_CB-A_flex", "10/3"},      {"s2_2_CAB", "16/7"}};
    for (auto [cfg, s] : want) {
        Rational got = cat.flag(cfg).s_value;
        c.expect(got == Q(s), std::string(cfg) + ": S = " + to_string(got) + ", want " + s);
    }
}

void c2(Catalog& cat, Crit& c) {
    std::vector<std::pair<const char*, const char*>> taus = {
        {"s1_flag_F", "3"},          {"s1_flag_E", "2"},         {"s1_flag_L", "2"},         {"s2_flag_A1", "2"},
        {"s2_flag_B", "3"},          {"s2_flag_L", "2"},         {"s1_1_C-E_notflex", "5"},  {"s1_1_C-E_flex", "7"},
        {"s1_1_CF_tangent", "6"},    {"s1_1_CE_notflex", "5"},   {"s1_1_CE_flex", "8"},      {"s2_2_C-AB_notflex", "4"},
        {"s2_2_C-AB_flex", "6"},     {"s2_2_CN_tangent", "5"},   {"s2_2_CA-B_notflex", "4"}, {"s2_2_CA-B_flex", "6"},
        {"s2_2_CB-A_notflex", "5"},  {"s2_2_CB-A_flex", "7"},    {"s2_2_CAB", "5"}};
    for (auto [cfg, t] : taus) c.expect(cat.flag(cfg).tau == Q(t), std::string(cfg) + ": tau");

    std::vector<std::pair<const char*, std::vector<VolPiece>>> vols = {
        {"s1_flag_F", {{"1", "8 - 4t"}, {"3", "t^2 - 6t + 9"}}},
        {"s1_1_C-E_flex", {{"3", "8 - 1/3t^2"}, {"6", "1/6t^2 - 3t + 25/2"}, {"7", "1/2t^2 - 7t + 49/2"}}},
        {"s2_2_CAB", {{"1", "7 - t^2"}, {"3", "8 - 2t"}, {"5", "1/2t^2 - 5t + 25/2"}}},
        {"s2_2_C-AB_notflex", {{"3", "7 - 1/2t^2"}, {"4", "1/2t^2 - 6t + 16"}}},
        {"s1_1_CE_flex", {{"2", "8 - 1/2t^2"}, {"8", "1/6t^2 - 8/3t + 32/3"}}}};
    for (const auto& [cfg, ps] : vols) {
        const PiecewisePoly& v = cat.flag(cfg).vol;
        bool ok = v.size() == ps.size();
        for (std::size_t i = 0; ok && i < ps.size(); ++i)
            ok = v.breaks[i + 1] == Q(ps[i].hi) && v.pieces[i] == parse_poly(ps[i].poly);
        c.expect(ok, std::string(cfg) + ": vol pieces");
    }
    Report r = reproduce(cat, "all");
    for (const auto& x : r.checks)
        if ((x.label.find(": vol") != std::string::npos || x.label.find(": tau") != std::string::npos) &&
            x.status == Status::Fail)
            c.expect(false, "golden " + x.label);
}

void c3(Catalog& cat, Crit& c) {
    struct W {
        const char* cfg;
        const char* point;
        const char* value;
    };
    std::vector<W> want = {{"s1_1_C-E_notflex", "q", "25/48"}, {"s1_1_C-E_notflex", "q_F", "13/24"},
                           {"s1_1_C-E_notflex", "q_L", "5/6"},  {"s2_2_CAB", "q", "3/7"},
                           {"s2_2_CAB", "q_B", "25/21"},        {"s2_2_CAB", "q_A1", "23/21"},
                           {"s1_flag_F", "q", "5/6"},           {"s1_flag_F", "q_E", "7/6"},
                           {"s1_1_CE_flex", "q_E", "7/12"},     {"s2_2_CB-A_flex", "q_B", "25/63"}};
    for (const auto& w : want) {
        Rational got = cat.flag(w.cfg).point(w.point).s_wq;
        c.expect(got == Q(w.value), std::string(w.cfg) + " " + w.point + ": " + to_string(got));
    }
    Report r = reproduce(cat, "all");
    for (const auto& x : r.checks)
        if (x.label.find(": s_wq") != std::string::npos && x.status == Status::Fail) c.expect(false, "golden " + x.label);
}

void c4(Catalog& cat, Crit& c) {
    c.expect(same(cat.theorem("thm1_1").lower, pwf({"48/25", "5/22", "(3+6λ)/(10λ)", "13/14", "6/(7λ)"})), "thm1_1 lower");
    c.expect(same(cat.theorem("thm2_1").lower, pwf({"42/23", "23/73", "(7+7λ)/(16λ)", "23/25", "21/(25λ)"})), "thm2_1 lower");
    c.expect(same(cat.theorem("thm2_2").lower, pwf({"42/23", "23/76", "(21+42λ)/(61λ)", "18/25", "21/(25λ)"})), "thm2_2 lower");
    const auto& t12 = cat.theorem("thm1_2").lower;
    c.expect(t12(Q("1/2")) == Q("4/3") && t12(1) == Q("6/7"), "thm1_2 lower values");
    std::vector<std::pair<const char*, const char*>> r = {{"thm1_1", "3/4"}, {"thm1_2", "4/5"}, {"thm2_1", "7/9"}, {"thm2_2", "21/25"}};
    for (auto [t, v] : r) c.expect(r_threshold(cat.theorem(t).lower).value == Q(v), std::string(t) + ": r_threshold");
    c.expect(cat.theorem("thm1_1").lower(1) == Q("6/7"), "delta(S1) at 1");
    c.expect(cat.theorem("thm2_2").lower(1) == Q("21/25"), "delta(S2) at 1");
    for (const char* t : {"thm1", "thm2", "main"}) c.expect(reproduce(cat, t).ok(), std::string("golden ") + t);
}

void c5(Catalog& cat, Crit& c) {
    for (const auto& name : cat.script_names()) {
        BlowupScript s = load_script(cat.scripts_dir() / (name + ".json"), cat.surfaces_dir());
        ContractedSurface d = derive(s);
        auto diffs = compare_models(d.model, cat.model(s.compare));
        c.expect(diffs.empty(), name + ": " + (diffs.empty() ? "" : diffs.front()));
    }
    auto g2 = [&](const char* script) {
        BlowupScript s = load_script(cat.scripts_dir() / script, cat.surfaces_dir());
        ContractedSurface d = derive(s);
        return intersect(d.model, d.model.curve(s.flag), d.model.curve(s.flag));
    };
    c.expect(g2("1_C-E_notflex.json") == Q("-1/2"), "G^2 = -1/2");
    c.expect(g2("1_C-E_flex.json") == Q("-1/3"), "G^2 = -1/3");
    BlowupScript s = load_script(cat.scripts_dir() / "2_C-AB_notflex.json", cat.surfaces_dir());
    ContractedSurface d = derive(s);
    const SurfaceModel& h = cat.model(s.compare);
    std::vector<std::string> names;
    for (const auto& g : h.generators) names.push_back(g.name);
    for (const auto& x : h.curves) names.push_back(x.name);
    c.expect(names.size() == 7, "2_C-AB_notflex: 7 curves");
    for (const auto& a : names)
        for (const auto& b : names)
            c.expect(intersect(d.model, d.model.curve(a), d.model.curve(b)) == intersect(h, h.curve(a), h.curve(b)),
                     "2_C-AB_notflex " + a + "." + b);
}

void c6(Catalog& cat, Crit& c) {
    std::mt19937 gen(20261015);
    for (const auto& name : cat.model_names()) {
        const SurfaceModel& m = cat.model(name);
        int bad = 0;
        for (int i = 0; i < 200; ++i) {
            DivisorClass d = DivisorClass::zero(m.rank());
            for (const auto& g : m.generators) {
                int q = std::uniform_int_distribution<int>(1, 7)(gen);
                int p = std::uniform_int_distribution<int>(0, 3 * q)(gen);
                Rational x(p, q);
                x.canonicalize();
                d = d + x * g.cls;
            }
            if (!(zariski_fixed(m, d) == zariski_oracle(m, d))) ++bad;
        }
        c.expect(bad == 0, name + ": " + std::to_string(bad) + " disagreements");
    }
}

void c7(Catalog& cat, Crit& c) {
    std::mt19937 gen(7);
    for (const auto& name : cat.model_names()) {
        const SurfaceModel& m = cat.model(name);
        if (!m.flag) continue;
        int q = std::uniform_int_distribution<int>(2, 40)(gen);
        Rational l0(std::uniform_int_distribution<int>(1, q - 1)(gen), q);
        l0.canonicalize();
        const FlagResult& n = cat.flag(name);
        FlagResult s = compute_flag(m, {false, l0});
        bool ok = s.tau == l0 * n.tau && s.s_value == l0 * n.s_value && s.pieces.size() == n.pieces.size();
        for (std::size_t i = 0; ok && i < n.pieces.size(); ++i) {
            ok = s.pieces[i].t_hi == l0 * n.pieces[i].t_hi;
            Rational t = (n.pieces[i].t_lo + n.pieces[i].t_hi) / 2;
            ok = ok && s.pieces[i].vol(l0 * t) == l0 * l0 * n.pieces[i].vol(t);
        }
        for (std::size_t i = 0; ok && i < n.points.size(); ++i) ok = s.points[i].s_wq == l0 * n.points[i].s_wq;
        // delta bound at l0: A(l0)/S(l0 A) computed directly vs the normalized bound function
        ok = ok && n.A_flag(l0) / s.s_value == flag_bound(n).expr(l0);
        c.expect(ok, name + " at lambda = " + to_string(l0));
    }
}

void c8(Catalog& cat, Crit& c) {
    for (const char* t : {"1_CF_tangent", "1_CE_flex", "thm2"}) {
        Report r = reproduce(cat, t);
        c.expect(r.ok(), std::string(t) + ": has FAIL");
        bool noted = false;
        for (const auto& x : r.checks)
            if (x.status == Status::Note) {
                noted = true;
                c.expect(x.computed == x.expected, x.label + ": NOTE value is not the golden value");
                c.expect(!x.paper.empty(), x.label + ": paper value missing");
            }
        c.expect(noted, std::string(t) + ": no NOTE");
    }
}

}  // namespace

int main() {
    Catalog cat(default_data_dir());
    std::vector<std::pair<const char*, std::function<void(Catalog&, Crit&)>>> all = {
        {"S-invariant regression", c1}, {"sweep regression", c2},    {"S(W;q) tables", c3},
        {"theorem assembly", c4},       {"blowup derivation", c5},   {"oracle equivalence", c6},
        {"homogeneity", c7},            {"misprint adjudication", c8}};
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        Crit c;
        try {
            all[i].second(cat, c);
        } catch (const std::exception& e) {
            c.problems.push_back(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << " (" << all[i].first << "): " << (c.problems.empty() ? "PASS" : "FAIL") << "\n";
        for (const auto& p : c.problems) std::cout << "    " << p << "\n";
        if (!c.problems.empty()) ++failed;
    }
    return failed;
}
