#include "zdelta/reproduce.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <optional>
#include <sstream>

#include "zdelta/blowup.hpp"
#include "zdelta/errors.hpp"

namespace zd {

using namespace schema;

std::string status_name(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Note: return "NOTE";
    }
    return "?";
}

std::size_t Report::count(Status s) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.status == s; }));
}

namespace {

std::string fmt_interval(const Rational& lo, const Rational& hi, bool open_lo) {
    return (open_lo ? "(" : "[") + to_string(lo) + "," + to_string(hi) + "]";
}

std::string fmt(const Rational& q) { return to_string(q); }
std::string fmt(const LinearFraction& f) { return f.str(); }

std::string fmt(const PiecewiseFraction& f) {
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += "; ";
        out += f.pieces[i].str() + " on " + fmt_interval(f.breaks[i], f.breaks[i + 1], i == 0 && f.open_lo);
    }
    return out;
}

std::string fmt(const PiecewisePoly& f) {
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) out += "; ";
        out += f.pieces[i].str("t") + " on " + fmt_interval(f.breaks[i], f.breaks[i + 1], false);
    }
    return out;
}

std::string fmt(const std::vector<ExactRange>& rs) {
    if (rs.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (i) out += "; ";
        out += rs[i].fn.str() + " on " + fmt_interval(rs[i].lo, rs[i].hi, false);
    }
    return out;
}

std::string fmt(const std::map<std::string, Poly>& m) {
    if (m.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : m) {
        if (!out.empty()) out += ", ";
        out += k + ": " + v.str("t");
    }
    return out;
}

std::string fmt(const std::vector<Poly>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str("t");
    return out + ")";
}

bool same(const PiecewiseFraction& a, const PiecewiseFraction& b) { return a.breaks == b.breaks && a.pieces == b.pieces; }
bool same(const PiecewisePoly& a, const PiecewisePoly& b) { return a.breaks == b.breaks && a.pieces == b.pieces; }
bool same(const std::vector<ExactRange>& a, const std::vector<ExactRange>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].lo != b[i].lo || a[i].hi != b[i].hi || a[i].fn != b[i].fn) return false;
    return true;
}
template <class T>
bool same(const T& a, const T& b) {
    return a == b;
}

struct Outcome {
    std::string computed, expected, paper;
    bool match = false;
    bool paper_differs = false;
};

template <class T>
Outcome outcome(const T& computed, const T& expected, const std::optional<T>& paper) {
    Outcome o{fmt(computed), fmt(expected), "", same(computed, expected), false};
    if (paper) {
        o.paper = fmt(*paper);
        o.paper_differs = !same(*paper, expected);
    }
    return o;
}

// typed readers for golden values
LinearFraction read_fn(const Document& doc, const json& j, const std::string& ptr) {
    try {
        return fraction_from_json(j);
    } catch (const std::exception& e) {
        doc.fail(ptr, e.what());
    }
}

Poly read_poly(const Document& doc, const json& j, const std::string& ptr) {
    try {
        return poly_from_json(j);
    } catch (const std::exception& e) {
        doc.fail(ptr, e.what());
    }
}

template <class Piece, class Read>
Piecewise<Piece> read_pw(const Document& doc, const json& j, const std::string& ptr, const char* key, Read read, bool open_zero) {
    if (!j.is_array() || j.empty()) doc.fail(ptr, "expected a non-empty array of pieces");
    std::vector<Rational> b;
    std::vector<Piece> p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string q = ptr + "/" + std::to_string(i);
        Rational lo = rat(doc, field(doc, j[i], q, "lo"), q + "/lo");
        Rational hi = rat(doc, field(doc, j[i], q, "hi"), q + "/hi");
        if (b.empty()) b.push_back(lo);
        else if (b.back() != lo) doc.fail(q + "/lo", "pieces must be contiguous");
        b.push_back(hi);
        p.push_back(read(doc, field(doc, j[i], q, key), q + "/" + key));
    }
    try {
        return Piecewise<Piece>(b, p, {}, open_zero && b.front() == 0);
    } catch (const Error& e) {
        doc.fail(ptr, e.what());
    }
}

PiecewiseFraction read_pwf(const Document& doc, const json& j, const std::string& ptr) {
    return read_pw<LinearFraction>(doc, j, ptr, "fn", read_fn, true);
}

PiecewisePoly read_pwp(const Document& doc, const json& j, const std::string& ptr) {
    return read_pw<Poly>(doc, j, ptr, "poly", read_poly, false);
}

std::vector<ExactRange> read_ranges(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_array()) doc.fail(ptr, "expected an array of {lo, hi, fn}");
    std::vector<ExactRange> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string q = ptr + "/" + std::to_string(i);
        out.push_back({rat(doc, field(doc, j[i], q, "lo"), q + "/lo"), rat(doc, field(doc, j[i], q, "hi"), q + "/hi"),
                       read_fn(doc, field(doc, j[i], q, "fn"), q + "/fn"), ""});
    }
    return out;
}

std::map<std::string, Poly> read_poly_map(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_object()) doc.fail(ptr, "expected an object of curve -> polynomial in t");
    std::map<std::string, Poly> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = read_poly(doc, it.value(), ptr + "/" + escape_pointer(it.key()));
    return out;
}

std::vector<Poly> read_poly_vec(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_array()) doc.fail(ptr, "expected an array of polynomials in t");
    std::vector<Poly> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_poly(doc, j[i], ptr + "/" + std::to_string(i)));
    return out;
}

template <class T, class Read>
Outcome typed(const Document& doc, const json& c, const std::string& ptr, const T& computed, Read read) {
    T expected = read(doc, field(doc, c, ptr, "expected"), ptr + "/expected");
    std::optional<T> paper;
    if (auto* p = opt_field(doc, c, ptr, "paper")) paper = read(doc, *p, ptr + "/paper");
    return outcome(computed, expected, paper);
}

const ZariskiPiece& piece_at(const Document& doc, const json& c, const std::string& ptr, const FlagResult& fr) {
    const json& j = field(doc, c, ptr, "piece");
    if (!j.is_number_unsigned() || j.get<std::size_t>() >= fr.pieces.size())
        doc.fail(ptr + "/piece", "piece index out of range (" + std::to_string(fr.pieces.size()) + " pieces)");
    return fr.pieces[j.get<std::size_t>()];
}

const PiecewiseFraction& side_of(const Document& doc, const json& c, const std::string& ptr, const DeltaAssembly& a,
                                 std::string& side) {
    side = "lower";
    if (auto* s = opt_field(doc, c, ptr, "side")) side = str(doc, *s, ptr + "/side");
    if (side == "lower") return a.lower;
    if (side != "upper") doc.fail(ptr + "/side", "side must be 'lower' or 'upper'");
    if (!a.upper) throw PreconditionError("no upper bound available");
    return *a.upper;
}

std::string default_label(const std::string& kind, const json& c) {
    std::string subject;
    for (const char* k : {"config", "case", "theorem", "script"})
        if (c.contains(k) && c[k].is_string()) subject = c[k].get<std::string>();
    std::string extra;
    if (c.contains("point") && c["point"].is_string()) extra = " " + c["point"].get<std::string>();
    if (c.contains("side") && c["side"].is_string()) extra = " " + c["side"].get<std::string>();
    if (c.contains("piece") && c["piece"].is_number()) extra = " piece " + std::to_string(c["piece"].get<int>());
    return subject + ": " + kind + extra;
}

CheckResult run_check(Catalog& cat, const Document& doc, const std::string& target, const std::string& file_anchor,
                      const json& c, const std::string& ptr) {
    std::string kind = str(doc, field(doc, c, ptr, "kind"), ptr + "/kind");
    CheckResult r;
    r.target = target;
    r.label = c.contains("label") ? str(doc, c["label"], ptr + "/label") : default_label(kind, c);
    r.anchor = c.contains("anchor") ? str(doc, c["anchor"], ptr + "/anchor") : file_anchor;
    if (auto* n = opt_field(doc, c, ptr, "note")) r.note = str(doc, *n, ptr + "/note");

    auto config = [&]() -> std::string { return str(doc, field(doc, c, ptr, "config"), ptr + "/config"); };
    auto theorem = [&]() -> const DeltaAssembly& {
        return cat.theorem(str(doc, field(doc, c, ptr, "theorem"), ptr + "/theorem"));
    };
    auto point = [&](const FlagResult& fr) -> const PointResult& {
        std::string name = str(doc, field(doc, c, ptr, "point"), ptr + "/point");
        for (const auto& p : fr.points)
            if (p.name == name) return p;
        doc.fail(ptr + "/point", "no marked point '" + name + "' in " + fr.model);
    };

    Outcome o;
    try {
        if (kind == "tau") {
            o = typed(doc, c, ptr, cat.flag(config()).tau, rat);
        } else if (kind == "vol") {
            o = typed(doc, c, ptr, cat.flag(config()).vol, read_pwp);
        } else if (kind == "s_value") {
            o = typed(doc, c, ptr, cat.flag(config()).s_value, rat);
        } else if (kind == "s_wq") {
            const FlagResult& fr = cat.flag(config());
            o = typed(doc, c, ptr, point(fr).s_wq, rat);
        } else if (kind == "a_flag") {
            o = typed(doc, c, ptr, cat.flag(config()).A_flag, read_fn);
        } else if (kind == "a_point") {
            const FlagResult& fr = cat.flag(config());
            o = typed(doc, c, ptr, point(fr).A, read_fn);
        } else if (kind == "flag_bound") {
            o = typed(doc, c, ptr, flag_bound(cat.flag(config())).expr, read_fn);
        } else if (kind == "n_part") {
            const ZariskiPiece& p = piece_at(doc, c, ptr, cat.flag(config()));
            std::map<std::string, Poly> n;
            for (const auto& [k, v] : p.N) n[k] = Poly::affine(v.first, v.second);
            o = typed(doc, c, ptr, n, read_poly_map);
        } else if (kind == "p_part") {
            const ZariskiPiece& p = piece_at(doc, c, ptr, cat.flag(config()));
            std::vector<Poly> v;
            for (std::size_t i = 0; i < p.P0.size(); ++i) v.push_back(Poly::affine(p.P0[i], p.P1[i]));
            o = typed(doc, c, ptr, v, read_poly_vec);
        } else if (kind == "az_lower") {
            o = typed(doc, c, ptr, az_lower_bound(cat.flag(config())), read_pwf);
        } else if (kind == "case") {
            DeltaCase dc = cat.delta_case(str(doc, field(doc, c, ptr, "case"), ptr + "/case"));
            DeltaAssembly a{case_lower(dc), case_upper(dc), {}};
            std::string side;
            o = typed(doc, c, ptr, side_of(doc, c, ptr, a, side), read_pwf);
        } else if (kind == "theorem") {
            std::string side;
            o = typed(doc, c, ptr, side_of(doc, c, ptr, theorem(), side), read_pwf);
        } else if (kind == "exact") {
            o = typed(doc, c, ptr, theorem().exact, read_ranges);
        } else if (kind == "lower_ge") {
            Rational lo = rat(doc, field(doc, c, ptr, "lo"), ptr + "/lo");
            Rational hi = rat(doc, field(doc, c, ptr, "hi"), ptr + "/hi");
            Rational bound = rat(doc, field(doc, c, ptr, "expected"), ptr + "/expected");
            auto inf = infimum(theorem().lower, lo, hi);
            o.computed = "inf over " + fmt_interval(lo, hi, lo == 0) + " = " + (inf ? to_string(*inf) : "+inf");
            o.expected = ">= " + to_string(bound);
            o.match = !inf || *inf >= bound;
            if (auto* p = opt_field(doc, c, ptr, "paper")) {
                Rational pb = rat(doc, *p, ptr + "/paper");
                o.paper = ">= " + to_string(pb);
                o.paper_differs = pb != bound;
            }
        } else if (kind == "r_threshold") {
            RThreshold rt = r_threshold(theorem().lower);
            o = typed(doc, c, ptr, rt.value, rat);
            if (rt.warning) r.note += (r.note.empty() ? "" : "; ") + std::string("delta <= 1 on all of (0,1]");
        } else if (kind == "delta_at") {
            Rational l = rat(doc, field(doc, c, ptr, "lambda"), ptr + "/lambda");
            const DeltaAssembly& a = theorem();
            Rational v = a.lower(l);
            if (!a.upper || (*a.upper)(l) != v) throw PreconditionError("delta is not determined at lambda = " + to_string(l));
            o = typed(doc, c, ptr, v, rat);
        } else if (kind == "intersection") {
            const SurfaceModel& m = cat.model(config());
            std::string a = str(doc, field(doc, c, ptr, "a"), ptr + "/a");
            std::string b = str(doc, field(doc, c, ptr, "b"), ptr + "/b");
            o = typed(doc, c, ptr, intersect(m, m.curve(a), m.curve(b)), rat);
        } else if (kind == "derived_table") {
            std::string script = str(doc, field(doc, c, ptr, "script"), ptr + "/script");
            auto path = cat.scripts_dir() / (script + ".json");
            if (!std::filesystem::exists(path)) doc.fail(ptr + "/script", "unknown script '" + script + "'");
            BlowupScript s = load_script(path, cat.surfaces_dir());
            ContractedSurface d = derive(s);
            auto diffs = compare_models(d.model, cat.model(s.compare));
            o.expected = "derived table equals " + s.compare;
            o.match = diffs.empty();
            if (diffs.empty()) {
                o.computed = o.expected;
            } else {
                o.computed = std::to_string(diffs.size()) + " difference(s): " + diffs.front();
                for (std::size_t i = 1; i < diffs.size() && i < 4; ++i) o.computed += "; " + diffs[i];
            }
        } else {
            doc.fail(ptr + "/kind", "unknown check kind '" + kind + "'");
        }
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError&) {
        throw;
    } catch (const ReferenceError&) {
        throw;
    } catch (const Error& e) {
        r.status = Status::Fail;
        r.computed = std::string("error: ") + e.what();
        if (c.contains("expected")) r.expected = c["expected"].dump();
        return r;
    }
    r.computed = o.computed;
    r.expected = o.expected;
    r.paper = o.paper;
    bool text_note = c.contains("paper_text");
    if (text_note) r.paper = str(doc, c["paper_text"], ptr + "/paper_text");
    if (!o.match) r.status = Status::Fail;
    else if (o.paper_differs || text_note) r.status = Status::Note;
    else r.status = Status::Pass;
    return r;
}

std::vector<CheckResult> run_golden(Catalog& cat, const std::string& target) {
    auto path = cat.golden_dir() / (target + ".json");
    Document doc = Document::from_file(path);
    const json& root = doc.root();
    std::string anchor;
    if (auto* a = opt_field(doc, root, "", "anchor")) anchor = str(doc, *a, "/anchor");
    const json& checks = field(doc, root, "", "checks");
    if (!checks.is_array()) doc.fail("/checks", "expected an array");
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < checks.size(); ++i)
        out.push_back(run_check(cat, doc, target, anchor, checks[i], "/checks/" + std::to_string(i)));
    return out;
}

}  // namespace

std::vector<std::string> reproduce_targets(const Catalog& cat) {
    auto t = cat.golden_names();
    t.push_back("all");
    return t;
}

Report reproduce(Catalog& cat, const std::string& target) {
    auto names = cat.golden_names();
    Report rep;
    if (target == "all") {
        rep.targets = names;
    } else if (std::find(names.begin(), names.end(), target) != names.end()) {
        rep.targets = {target};
    } else {
        std::string known;
        for (const auto& n : reproduce_targets(cat)) known += (known.empty() ? "" : ", ") + n;
        throw ReferenceError("unknown reproduce target '" + target + "' (known: " + known + ")");
    }
    std::vector<std::future<std::vector<CheckResult>>> jobs;
    for (const auto& t : rep.targets) jobs.push_back(std::async(std::launch::async, run_golden, std::ref(cat), t));
    for (auto& j : jobs)
        for (auto& c : j.get()) rep.checks.push_back(std::move(c));
    return rep;
}

std::string format_report(const Report& r) {
    std::ostringstream os;
    std::string current;
    for (const auto& c : r.checks) {
        if (c.target != current) {
            current = c.target;
            os << "== " << current << "\n";
        }
        os << status_name(c.status) << "  " << c.label;
        if (!c.anchor.empty()) os << "  {" << c.anchor << "}";
        os << "\n      computed: " << c.computed << "\n";
        if (c.status != Status::Pass) os << "      expected: " << c.expected << "\n";
        if (!c.paper.empty()) os << "      paper:    " << c.paper << "\n";
        if (!c.note.empty()) os << "      note:     " << c.note << "\n";
    }
    os << "-- " << r.count(Status::Pass) << " pass, " << r.count(Status::Note) << " note, " << r.count(Status::Fail)
       << " fail\n";
    return os.str();
}

json to_json(const Report& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        json j{{"target", c.target}, {"label", c.label}, {"anchor", c.anchor}, {"status", status_name(c.status)},
               {"computed", c.computed}, {"expected", c.expected}};
        if (!c.paper.empty()) j["paper"] = c.paper;
        if (!c.note.empty()) j["note"] = c.note;
        checks.push_back(std::move(j));
    }
    return json{{"targets", r.targets},
                {"ok", r.ok()},
                {"summary", {{"pass", r.count(Status::Pass)}, {"note", r.count(Status::Note)}, {"fail", r.count(Status::Fail)}}},
                {"checks", checks}};
}

}  // namespace zd
