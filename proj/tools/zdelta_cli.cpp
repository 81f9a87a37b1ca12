#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "zdelta/blowup.hpp"
#include "zdelta/catalog.hpp"
#include "zdelta/cone.hpp"
#include "zdelta/delta.hpp"
#include "zdelta/invariants.hpp"
#include "zdelta/io.hpp"
#include "zdelta/reproduce.hpp"
#include "zdelta/zariski.hpp"

namespace fs = std::filesystem;
using namespace zd;

namespace {

struct Globals {
    bool json = false;
    bool oracle = false;
    std::string lambda;
    std::string data;
};

Catalog make_catalog(const Globals& g) { return g.data.empty() ? Catalog() : Catalog(g.data); }

fs::path resolve(const std::string& arg, const fs::path& dir) {
    fs::path p(arg);
    if (fs::exists(p)) return p;
    for (fs::path c : {dir / arg, dir / (arg + ".json")})
        if (fs::exists(c)) return c;
    throw ReferenceError("no such file: " + arg + " (also looked in " + dir.string() + ")");
}

std::optional<Rational> lambda_of(const Globals& g) {
    if (g.lambda.empty()) return std::nullopt;
    Rational l = parse_rational(g.lambda);
    if (l <= 0 || l > 1) throw ValidationError("--lambda must lie in (0,1]");
    return l;
}

SurfaceModel load_config(const Globals& g, const std::string& arg) {
    SurfaceModel m = load_model(resolve(arg, make_catalog(g).surfaces_dir()));
    require_valid(m);
    return m;
}

FlagResult flag_of(const Globals& g, const SurfaceModel& m) {
    FlagOptions o;
    o.oracle = g.oracle;
    o.lambda = lambda_of(g);
    return compute_flag(m, o);
}

std::string pad(const std::string& s, std::size_t w) {
    // width in code points
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n >= w ? s + " " : s + std::string(w - n, ' ');
}

std::string range(const Rational& lo, const Rational& hi, bool open_lo = false) {
    return std::string(open_lo ? "(" : "[") + to_string(lo) + ", " + to_string(hi) + "]";
}

std::string n_str(const ZariskiPiece& p) {
    std::string out;
    for (const auto& [c, v] : p.N) {
        Poly q = Poly::affine(v.first, v.second);
        if (q.is_zero()) continue;
        out += (out.empty() ? "" : " + ") + std::string("(") + q.str("t") + ")" + c;
    }
    return out.empty() ? "0" : out;
}

std::string class_str(const SurfaceModel& m, const DivisorClass& d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == 0) continue;
        out += (out.empty() ? "" : " + ") + to_string(d[i]) + " " + m.basis_names[i];
    }
    return out.empty() ? "0" : out;
}

std::string lambda_suffix(const FlagResult& fr) { return fr.lambda ? " at λ = " + to_string(*fr.lambda) : " · λ"; }

void print_pw(const std::string& title, const PiecewiseFraction& f) {
    std::cout << title << "\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::cout << "  " << pad(range(f.breaks[i], f.breaks[i + 1], i == 0 && f.open_lo), 16) << pad(f.pieces[i].str(), 18);
        if (!f.label(i).empty()) std::cout << f.label(i);
        std::cout << "\n";
    }
}

int cmd_zariski(const Globals& g, const std::string& cfg, const std::string& tstr, const std::vector<std::string>& cls) {
    SurfaceModel m = load_config(g, cfg);
    DivisorClass d;
    if (!cls.empty()) {
        if (cls.size() != m.rank()) throw ValidationError("--class needs " + std::to_string(m.rank()) + " coordinates");
        Vector v;
        for (const auto& s : cls) v.push_back(parse_rational(s));
        d = DivisorClass(v);
    } else {
        Rational t = tstr.empty() ? Rational(0) : parse_rational(tstr);
        d = m.polarization;
        if (auto l = lambda_of(g)) d = *l * d;
        d = d - t * m.require_flag().cls;
    }
    Decomposition z = g.oracle ? zariski_oracle(m, d) : zariski_fixed(m, d);
    if (g.json) {
        json j = to_json(z);
        j["D"] = to_json(d);
        j["P2"] = to_string(intersect(m, z.P, z.P));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "D = " << class_str(m, d) << "\n";
    std::cout << "P = " << class_str(m, z.P) << "\n";
    std::string n;
    for (const auto& [c, v] : z.N)
        if (v != 0) n += (n.empty() ? "" : " + ") + to_string(v) + " " + c;
    std::cout << "N = " << (n.empty() ? "0" : n) << "\n";
    std::cout << "P^2 = " << to_string(intersect(m, z.P, z.P)) << "\n";
    return 0;
}

int cmd_sweep(const Globals& g, const std::string& cfg) {
    SurfaceModel m = load_config(g, cfg);
    FlagResult fr = flag_of(g, m);
    if (g.json) {
        json j{{"model", fr.model}, {"flag", fr.flag}, {"tau", to_string(fr.tau)}, {"pieces", to_json(fr.pieces)}, {"vol", to_json(fr.vol)}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << fr.model << ": flag " << fr.flag << ", tau = " << to_string(fr.tau) << lambda_suffix(fr) << "\n";
    std::cout << "  " << pad("t", 12) << pad("vol", 24) << "N(t)\n";
    for (const auto& p : fr.pieces)
        std::cout << "  " << pad(range(p.t_lo, p.t_hi), 12) << pad(p.vol.str("t"), 24) << n_str(p) << "\n";
    return 0;
}

int cmd_svalue(const Globals& g, const std::string& cfg) {
    FlagResult fr = flag_of(g, load_config(g, cfg));
    if (g.json) {
        json j{{"model", fr.model}, {"flag", fr.flag}, {"lambda", fr.lambda ? json(to_string(*fr.lambda)) : json(nullptr)},
               {"tau", to_string(fr.tau)}, {"S", to_string(fr.s_value)}, {"A", to_json(fr.A_flag)}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (fr.lambda) {
        std::cout << "S = " << to_string(fr.s_value) << lambda_suffix(fr) << " (" << to_string(fr.s_value / *fr.lambda) << " · λ)\n";
        std::cout << "tau = " << to_string(fr.tau) << lambda_suffix(fr) << "\n";
    } else {
        std::cout << "S = " << to_string(fr.s_value) << " · λ\n";
        std::cout << "tau = " << to_string(fr.tau) << " · λ\n";
    }
    std::cout << "A(" << fr.flag << ") = " << fr.A_flag.str() << "\n";
    return 0;
}

int cmd_swq(const Globals& g, const std::string& cfg) {
    FlagResult fr = flag_of(g, load_config(g, cfg));
    if (g.json) {
        json pts = json::array();
        for (const auto& p : fr.points) {
            json q{{"name", p.name}, {"S_Wq", to_string(p.s_wq)}, {"A", to_json(p.A)}};
            if (!fr.lambda) q["bound"] = to_json(p.A.divided_by_linear(p.s_wq));
            pts.push_back(q);
        }
        std::cout << json{{"model", fr.model}, {"flag", fr.flag}, {"points", pts}}.dump(2) << "\n";
        return 0;
    }
    std::cout << fr.model << ": points on " << fr.flag << "\n";
    std::cout << "  " << pad("q", 8) << pad("S(W;q)", 14) << pad("A(q)", 10) << "A/S\n";
    for (const auto& p : fr.points) {
        std::string r = fr.lambda ? "-" : p.A.divided_by_linear(p.s_wq).str();
        std::cout << "  " << pad(p.name, 8) << pad(to_string(p.s_wq) + (fr.lambda ? "" : " · λ"), 14) << pad(p.A.str(), 10)
                  << r << "\n";
    }
    return 0;
}

int cmd_flagbound(const Globals& g, const std::string& cfg) {
    FlagResult fr = flag_of(g, load_config(g, cfg));
    if (fr.lambda) throw PreconditionError("flagbound works on the normalized family; drop --lambda");
    BoundFn b = flag_bound(fr);
    if (g.json) {
        json j{{"model", fr.model}, {"flag_bound", to_json(b.expr)}, {"source", b.provenance}};
        if (!fr.points.empty()) j["az_lower"] = to_json(az_lower_bound(fr));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "A/S = " << b.expr.str() << "  (" << b.provenance << ")\n";
    if (!fr.points.empty()) print_pw("AZ lower bound:", az_lower_bound(fr));
    return 0;
}

int cmd_delta(const Globals& g, const std::string& target) {
    Catalog cat = make_catalog(g);
    DeltaAssembly a;
    bool found = false;
    for (const auto& t : cat.theorems())
        if (t.id == target) a = cat.theorem(target), found = true;
    if (!found)
        for (const auto& c : cat.cases())
            if (c.id == target) {
                DeltaCase dc = cat.delta_case(target);
                a = assemble_global({dc});
                found = true;
            }
    if (!found) {
        FlagResult fr = cat.flag(fs::path(resolve(target, cat.surfaces_dir())).stem().string());
        a.lower = az_lower_bound(fr);
        a.upper = min_of({flag_bound(fr)});
        a.exact = exact_ranges(a.lower, *a.upper);
    }
    if (g.json) {
        std::cout << to_json(a).dump(2) << "\n";
        return 0;
    }
    print_pw("lower:", a.lower);
    if (a.upper) print_pw("upper:", *a.upper);
    std::cout << "exact:\n";
    if (a.exact.empty()) std::cout << "  none\n";
    for (const auto& e : a.exact) std::cout << "  " << pad(range(e.lo, e.hi), 16) << e.fn.str() << "\n";
    return 0;
}

int cmd_rthreshold(const Globals& g, const std::string& target) {
    Catalog cat = make_catalog(g);
    RThreshold r = r_threshold(cat.theorem(target).lower);
    if (g.json) {
        std::cout << json{{"theorem", target}, {"R", to_string(r.value)}, {"warning", r.warning}}.dump(2) << "\n";
        return 0;
    }
    std::cout << "R = " << to_string(r.value) << (r.warning ? "  (delta <= 1 on all of (0,1])" : "") << "\n";
    return 0;
}

int cmd_derive(const Globals& g, const std::string& script_arg) {
    Catalog cat = make_catalog(g);
    BlowupScript s = load_script(resolve(script_arg, cat.scripts_dir()), cat.surfaces_dir());
    ContractedSurface d = derive(s);
    std::vector<std::string> diffs;
    bool compared = !s.compare.empty();
    if (compared) diffs = compare_models(d.model, cat.model(s.compare));
    if (g.json) {
        json j{{"model", to_json(d.model)}};
        if (compared) j["compare"] = json{{"against", s.compare}, {"differences", diffs}};
        std::cout << j.dump(2) << "\n";
        return diffs.empty() ? 0 : 1;
    }
    const SurfaceModel& m = d.model;
    std::cout << m.name << "\n";
    std::vector<NamedClass> all = m.generators;
    all.insert(all.end(), m.curves.begin(), m.curves.end());
    std::cout << "  " << pad("", 6);
    for (const auto& c : all) std::cout << pad(c.name, 7);
    std::cout << "\n";
    for (const auto& a : all) {
        std::cout << "  " << pad(a.name, 6);
        for (const auto& b : all) std::cout << pad(to_string(intersect(m, a.cls, b.cls)), 7);
        std::cout << "\n";
    }
    if (m.flag)
        std::cout << "flag " << m.flag->name << ": c_K = " << to_string(m.flag->c_K) << ", c_C = " << to_string(m.flag->c_C)
                  << ", A = " << discrepancy_fn(m.flag->c_K, m.flag->c_C).str() << "\n";
    if (compared) {
        if (diffs.empty()) std::cout << "matches " << s.compare << "\n";
        for (const auto& x : diffs) std::cout << "differs from " << s.compare << ": " << x << "\n";
    }
    return diffs.empty() ? 0 : 1;
}

int cmd_reproduce(const Globals& g, const std::vector<std::string>& targets) {
    Catalog cat = make_catalog(g);
    Report total;
    for (const auto& t : targets.empty() ? std::vector<std::string>{"all"} : targets) {
        Report r = reproduce(cat, t);
        total.targets.insert(total.targets.end(), r.targets.begin(), r.targets.end());
        total.checks.insert(total.checks.end(), r.checks.begin(), r.checks.end());
    }
    if (g.json) std::cout << to_json(total).dump(2) << "\n";
    else std::cout << format_report(total);
    return total.ok() ? 0 : 1;
}

int cmd_list(const Globals& g) {
    Catalog cat = make_catalog(g);
    auto line = [](const std::string& title, const std::vector<std::string>& v) {
        std::cout << title << ":";
        for (const auto& s : v) std::cout << " " << s;
        std::cout << "\n";
    };
    line("configs", cat.model_names());
    line("scripts", cat.script_names());
    std::vector<std::string> cs, ts;
    for (const auto& c : cat.cases()) cs.push_back(c.id);
    for (const auto& t : cat.theorems()) ts.push_back(t.id);
    line("cases", cs);
    line("theorems", ts);
    line("reproduce targets", reproduce_targets(cat));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact delta-invariant calculator for polarized rational surfaces"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_flag("--oracle", g.oracle, "brute-force Zariski decomposition");
    app.add_option("--lambda", g.lambda, "fixed rational lambda p/q (verification mode)");
    app.add_option("--data", g.data, "data directory (default $ZDELTA_DATA or the bundled one)");

    std::string cfg, tval, target;
    std::vector<std::string> cls, targets;
    std::function<int()> run;

    auto* z = app.add_subcommand("zariski", "Zariski decomposition of A - tG (or of --class)");
    z->add_option("config", cfg)->required();
    z->add_option("--t", tval, "t value, default 0");
    z->add_option("--class", cls, "explicit class coordinates")->delimiter(',');
    z->callback([&] { run = [&] { return cmd_zariski(g, cfg, tval, cls); }; });

    auto* sw = app.add_subcommand("sweep", "piecewise Zariski chambers and volume in t");
    sw->add_option("config", cfg)->required();
    sw->callback([&] { run = [&] { return cmd_sweep(g, cfg); }; });

    auto* sv = app.add_subcommand("svalue", "S-invariant and pseudoeffective threshold of the flag");
    sv->add_option("config", cfg)->required();
    sv->callback([&] { run = [&] { return cmd_svalue(g, cfg); }; });

    auto* sq = app.add_subcommand("swq", "S(W;q) for the marked points on the flag");
    sq->add_option("config", cfg)->required();
    sq->callback([&] { run = [&] { return cmd_swq(g, cfg); }; });

    auto* fb = app.add_subcommand("flagbound", "A/S for the flag and the AZ lower bound");
    fb->add_option("config", cfg)->required();
    fb->callback([&] { run = [&] { return cmd_flagbound(g, cfg); }; });

    auto* de = app.add_subcommand("delta", "delta bounds for a theorem, a case, or a config");
    de->add_option("target", target)->required();
    de->callback([&] { run = [&] { return cmd_delta(g, target); }; });

    auto* rt = app.add_subcommand("rthreshold", "sup of lambda with delta > 1");
    rt->add_option("theorem", target)->required();
    rt->callback([&] { run = [&] { return cmd_rthreshold(g, target); }; });

    auto* dv = app.add_subcommand("derive", "intersection table from a blowup script");
    dv->add_option("script", target)->required();
    dv->callback([&] { run = [&] { return cmd_derive(g, target); }; });

    auto* rp = app.add_subcommand("reproduce", "compare computed values with the golden files");
    rp->add_option("targets", targets);
    rp->callback([&] { run = [&] { return cmd_reproduce(g, targets); }; });

    auto* ls = app.add_subcommand("list", "bundled configs, scripts, cases and theorems");
    ls->callback([&] { run = [&] { return cmd_list(g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return run();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const ReferenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    }
}
