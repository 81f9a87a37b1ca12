#include <doctest.h>

#include <chrono>

#include "support.hpp"
#include "zdelta/errors.hpp"
#include "zdelta/io.hpp"
#include "zdelta/reproduce.hpp"

using namespace zd;
using zt::Q;

namespace {

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

template <class F>
std::string message_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("result types round-trip through JSON") {
    for (const auto& name : zt::flag_configs()) {
        CAPTURE(name);
        const FlagResult& r = zt::catalog().flag(name);
        json j = to_json(r);
        CHECK(flag_result_from_json(json::parse(j.dump())) == r);
        CHECK(piecewise_poly_from_json(to_json(r.vol)) == r.vol);
        for (const auto& p : r.pieces) CHECK(piece_from_json(to_json(p)) == p);
    }
    for (const auto& t : zt::catalog().theorems()) {
        const DeltaAssembly& a = zt::catalog().theorem(t.id);
        CHECK(assembly_from_json(json::parse(to_json(a).dump())) == a);
    }
    Decomposition d = zariski_fixed(zt::catalog().model("s2"), zt::cls({"2", "2", "1"}));
    CHECK(decomposition_from_json(to_json(d)) == d);
    CHECK(rational_from_json(to_json(Q("-7/3"))) == Q("-7/3"));
    CHECK(fraction_from_json(to_json(parse_fraction("(4+8λ)/(11λ)"))) == parse_fraction("(4+8λ)/(11λ)"));
}

TEST_CASE("models round-trip through JSON") {
    for (const auto& name : zt::catalog().model_names()) {
        CAPTURE(name);
        const SurfaceModel& m = zt::catalog().model(name);
        SurfaceModel back = model_from_document(Document::from_string(to_json(m).dump(2)));
        CHECK(back.form == m.form);
        CHECK(back.basis_names == m.basis_names);
        CHECK(back.polarization == m.polarization);
        CHECK(back.boundary == m.boundary);
        REQUIRE(back.generators.size() == m.generators.size());
        for (std::size_t i = 0; i < m.generators.size(); ++i) CHECK(back.generators[i].cls == m.generators[i].cls);
        REQUIRE(back.curves.size() == m.curves.size());
        CHECK(back.marked_points.size() == m.marked_points.size());
        if (m.flag) CHECK(compare_models(back, m).empty());
    }
}

TEST_CASE("parse errors carry a line number") {
    std::string msg = message_of([] { Document::from_string("{\n  \"name\": \"x\",\n  oops\n}", "bad.json"); });
    CHECK(has(msg, "bad.json:3"));
    CHECK_THROWS_AS(Document::from_string("[1,", "x"), ParseError);

    const char* text = R"({
  "name": "t",
  "basis": ["E", "F"],
  "form": [["-1", "1"], ["1", "0"]],
  "generators": [{"name": "E", "class": ["1", "0"]}, {"name": "F", "class": ["0", "1"]}],
  "polarization": ["2", "three"]
})";
    std::string m = message_of([&] { model_from_document(Document::from_string(text, "cfg.json")); });
    CHECK(has(m, "cfg.json:6"));
    CHECK(has(m, "/polarization"));

    const char* empty = R"({
  "name": "t",
  "basis": ["E", "F"],
  "form": [["-1", "1"], ["1", "0"]],
  "generators": [],
  "polarization": ["2", "3"]
})";
    CHECK_THROWS_AS(model_from_document(Document::from_string(empty, "e.json")), ValidationError);
    CHECK_THROWS_AS(load_model("/nonexistent/zz.json"), ParseError);
}

TEST_CASE("catalog lookups") {
    Catalog& cat = zt::catalog();
    CHECK(cat.model_names().size() >= 14);
    CHECK(cat.script_names().size() == 13);
    CHECK(cat.model("s1").rank() == 2);
    CHECK(cat.case_spec("2_CAB").lower_az == std::vector<std::string>{"s2_2_CAB"});
    CHECK(cat.theorem_spec("thm2_2").scenarios.size() == 4);
    CHECK_THROWS_AS(cat.model("nope"), ReferenceError);
    CHECK_THROWS_AS(cat.case_spec("nope"), ReferenceError);
    CHECK_THROWS_AS(cat.theorem("nope"), ReferenceError);
    auto sc = cat.scenario_cases(cat.theorem_spec("thm1_1"), cat.theorem_spec("thm1_1").scenarios[0]);
    CHECK(sc.size() == 6);
}

TEST_CASE("reproduce all passes, flags known misprints and is fast") {
    Catalog cat(ZDELTA_DATA_DIR);
    auto t0 = std::chrono::steady_clock::now();
    Report r = reproduce(cat, "all");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& c : r.checks)
        if (c.status == Status::Fail) MESSAGE(c.target << " " << c.label << ": " << c.computed << " vs " << c.expected);
    CHECK(r.ok());
    CHECK(secs < 10.0);
    for (const char* t : {"1_CF_tangent", "1_CE_flex", "thm2"}) {
        bool noted = false;
        for (const auto& c : r.checks) noted = noted || (c.target == t && c.status == Status::Note);
        CHECK_MESSAGE(noted, t);
    }
    json j = to_json(r);
    CHECK(j["summary"]["fail"] == 0);
    CHECK(has(format_report(r), "0 fail"));
}

TEST_CASE("reproduce rejects unknown targets") {
    CHECK_THROWS_AS(reproduce(zt::catalog(), "nope"), ReferenceError);
    auto ts = reproduce_targets(zt::catalog());
    CHECK(std::find(ts.begin(), ts.end(), "all") != ts.end());
    CHECK(std::find(ts.begin(), ts.end(), "main") != ts.end());
}
