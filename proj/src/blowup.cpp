#include "zdelta/blowup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "zdelta/errors.hpp"
#include "zdelta/invariants.hpp"

namespace zd {

const DivisorClass& BlownUpSurface::strict_class(const std::string& name) const {
    auto it = strict.find(name);
    if (it == strict.end()) throw ReferenceError("curve '" + name + "' not tracked on " + model.name);
    return it->second;
}

namespace {

DivisorClass pad(const DivisorClass& d, std::size_t n) {
    DivisorClass r = d;
    r.coords.resize(n);
    return r;
}

Rational dotf(const Matrix& form, const DivisorClass& a, const DivisorClass& b) {
    return dot(a.coords, mat_vec(form, b.coords));
}

}  // namespace

BlownUpSurface run_blowup_script(const BlowupScript& s) {
    const SurfaceModel& base = s.base;
    const std::size_t r = base.rank();
    const std::size_t m = s.steps.size();
    const std::size_t n = r + m;
    if (m == 0) throw ValidationError("blowup script " + s.name + " has no steps");
    if (s.exceptional_names.size() != m)
        throw ValidationError("blowup script " + s.name + ": need one exceptional name per step");

    BlownUpSurface t;
    t.base_rank = r;
    t.boundary_name = s.boundary_name;
    t.exceptionals = s.exceptional_names;
    t.steps = s.steps;

    std::vector<std::string> order;
    auto track = [&](const std::string& name, const DivisorClass& cls) {
        if (t.pullback.count(name)) throw ValidationError("curve '" + name + "' tracked twice");
        t.pullback[name] = pad(cls, n);
        t.strict[name] = pad(cls, n);
        order.push_back(name);
    };
    for (const auto& g : base.generators) track(g.name, g.cls);
    for (const auto& c : base.curves) track(c.name, c.cls);
    if (base.boundary) track(s.boundary_name, *base.boundary);

    std::map<std::string, int> previous;
    for (std::size_t j = 0; j < m; ++j) {
        const BlowupStep& st = s.steps[j];
        const std::string where = "blowup script " + s.name + ", step " + std::to_string(j + 1);
        if (j == 0 && st.infinitely_near) throw ValidationError(where + ": the first centre must lie on the base");
        if (j > 0 && !st.infinitely_near)
            throw ValidationError(where + ": later centres must lie on the previous exceptional curve");
        if (st.infinitely_near) {
            if (!st.incident.count(st.along)) throw ValidationError(where + ": curve '" + st.along + "' is not incident");
            for (const auto& [c, mult] : st.incident)
                if (!previous.count(c))
                    throw ValidationError(where + ": " + c + " cannot meet the new exceptional curve without passing "
                                                          "through the previous centre");
        }
        for (const auto& [c, mult] : st.incident) {
            if (!t.strict.count(c) || std::find(t.exceptionals.begin(), t.exceptionals.end(), c) != t.exceptionals.end())
                throw ReferenceError(where + ": unknown curve '" + c + "'");
            if (mult < 1) throw ValidationError(where + ": multiplicity of " + c + " must be positive");
            t.strict[c] = t.strict[c] - Rational(mult) * DivisorClass::unit(n, r + j);
        }
        if (j > 0) {
            const std::string& prev = s.exceptional_names[j - 1];
            t.strict[prev] = t.strict[prev] - DivisorClass::unit(n, r + j);
        }
        t.strict[s.exceptional_names[j]] = DivisorClass::unit(n, r + j);
        previous = st.incident;
    }

    SurfaceModel& tm = t.model;
    tm.name = s.name + "_T" + std::to_string(m);
    tm.description = "iterated blowup of " + base.name;
    tm.basis_names = base.basis_names;
    for (const auto& e : s.exceptional_names) tm.basis_names.push_back("e_" + e);
    tm.form = Matrix(n, Vector(n));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) tm.form[i][k] = base.form[i][k];
    for (std::size_t j = r; j < n; ++j) tm.form[j][j] = -1;
    tm.polarization = pad(base.polarization, n);
    if (base.boundary) tm.boundary = t.strict[s.boundary_name];

    for (const auto& name : order) {
        if (name == s.boundary_name && base.boundary) continue;
        const DivisorClass& c = t.strict[name];
        if (dotf(tm.form, c, c) < 0) tm.generators.push_back({name, c});
        else tm.curves.push_back({name, c});
    }
    for (const auto& e : s.exceptional_names) tm.generators.push_back({e, t.strict[e]});

    t.k_relative = DivisorClass::zero(n);
    for (std::size_t j = 0; j < m; ++j) t.k_relative = t.k_relative + DivisorClass::unit(n, r + j);
    if (s.canonical) t.canonical = pad(*s.canonical, n) + t.k_relative;
    return t;
}

namespace {

struct Chain {
    std::vector<DivisorClass> curves;
    Matrix gram;
};

Chain check_chain(const BlownUpSurface& t, const ContractionSpec& spec) {
    Chain ch;
    for (const auto& c : spec.chain) ch.curves.push_back(t.strict_class(c));
    const std::size_t k = ch.curves.size();
    ch.gram = Matrix(k, Vector(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) ch.gram[i][j] = dotf(t.model.form, ch.curves[i], ch.curves[j]);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Rational want = i == j ? -2 : (i + 1 == j || j + 1 == i) ? 1 : 0;
            if (ch.gram[i][j] != want)
                throw ShapeError("contraction chain is not of type A" + std::to_string(k) + ": " + spec.chain[i] + "." +
                                 spec.chain[j] + " = " + to_string(ch.gram[i][j]));
        }
    if (k > 0 && !is_negative_definite(ch.gram)) throw InvalidModel("contraction chain Gram matrix is not negative definite");
    return ch;
}

// X + sum c_i A_i orthogonal to the chain
DivisorClass star(const Matrix& form, const Chain& ch, const DivisorClass& x) {
    if (ch.curves.empty()) return x;
    Vector rhs;
    for (const auto& a : ch.curves) rhs.push_back(-dotf(form, x, a));
    Vector c = solve_linear_system(ch.gram, rhs);
    DivisorClass r = x;
    for (std::size_t i = 0; i < c.size(); ++i) r = r + c[i] * ch.curves[i];
    return r;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
    return out;
}

}  // namespace

FlagDiscrepancy flag_discrepancy(const BlownUpSurface& t, const ContractionSpec& spec, const std::string& flag) {
    Chain ch = check_chain(t, spec);
    const Matrix& form = t.model.form;
    DivisorClass g = star(form, ch, t.strict_class(flag));
    Rational g2 = dotf(form, g, g);
    if (g2 >= 0) throw InvalidModel("flag does not have negative self-intersection after contraction");
    auto coeff = [&](const DivisorClass& rel, const std::string& what) {
        DivisorClass rs = star(form, ch, rel);
        Rational c = dotf(form, rs, g) / g2;
        if (rs != c * g) throw InvalidModel(what + " is not a multiple of the flag after contraction");
        return c;
    };
    FlagDiscrepancy fd;
    fd.c_K = coeff(t.k_relative, "K_T - pi^*K");
    fd.c_C = 0;
    if (t.pullback.count(t.boundary_name) && t.model.boundary)
        fd.c_C = coeff(t.pullback.at(t.boundary_name) - *t.model.boundary, "pi^*C - C_T");
    fd.A = discrepancy_fn(fd.c_K, fd.c_C);
    return fd;
}

ContractedSurface contract_chain(const BlownUpSurface& t, const ContractionSpec& spec, const std::string& flag,
                                 const std::optional<std::vector<std::string>>& generators) {
    Chain ch = check_chain(t, spec);
    const Matrix& form = t.model.form;
    const std::size_t n = t.model.rank();
    ContractedSurface out;
    SurfaceModel& sm = out.model;

    for (const auto& c : spec.chain)
        if (std::find(spec.survivors.begin(), spec.survivors.end(), c) != spec.survivors.end())
            throw ValidationError("chain curve " + c + " cannot survive the contraction");
    if (std::find(spec.survivors.begin(), spec.survivors.end(), flag) == spec.survivors.end())
        throw ValidationError("flag " + flag + " must be a survivor");

    std::vector<std::string> tracked = spec.survivors;
    const bool has_boundary = t.model.boundary.has_value();
    if (has_boundary) tracked.push_back(t.boundary_name);
    for (const auto& name : tracked) out.star[name] = star(form, ch, t.strict_class(name));

    // basis: survivors in order, greedily independent
    std::vector<std::string> basis;
    std::vector<DivisorClass> basis_cls;
    Matrix rows;
    const std::size_t target = n - ch.curves.size();
    for (const auto& name : spec.survivors) {
        Matrix trial = rows;
        trial.push_back(out.star[name].coords);
        if (rank(trial) == trial.size()) {
            rows = std::move(trial);
            basis.push_back(name);
            basis_cls.push_back(out.star[name]);
        }
        if (basis.size() == target) break;
    }
    if (basis.size() != target)
        throw InvalidModel("survivors span rank " + std::to_string(basis.size()) + ", expected " + std::to_string(target));

    Matrix gram(target, Vector(target));
    for (std::size_t i = 0; i < target; ++i)
        for (std::size_t j = 0; j < target; ++j) gram[i][j] = dotf(form, basis_cls[i], basis_cls[j]);
    auto coords = [&](const DivisorClass& x) {
        DivisorClass xs = star(form, ch, x);
        Vector rhs;
        for (const auto& b : basis_cls) rhs.push_back(dotf(form, xs, b));
        Vector c = solve_linear_system(gram, rhs);
        DivisorClass back = DivisorClass::zero(n);
        for (std::size_t i = 0; i < c.size(); ++i) back = back + c[i] * basis_cls[i];
        if (back != xs) throw InvalidModel("class not in the span of the survivors");
        return DivisorClass(c);
    };

    sm.name = t.model.name.substr(0, t.model.name.rfind('_'));
    sm.description = "derived by contracting " + (spec.chain.empty() ? std::string("nothing") : join(spec.chain, ", "));
    sm.basis_names = basis;
    sm.form = gram;
    sm.polarization = coords(t.model.polarization);
    if (has_boundary) sm.boundary = coords(*t.model.boundary);
    if (t.canonical) out.canonical = coords(*t.canonical);

    const DivisorClass& gstar = out.star.at(flag);
    std::set<std::string> gen_names;
    if (generators) {
        gen_names.insert(generators->begin(), generators->end());
        gen_names.insert(flag);
    } else {
        for (const auto& name : spec.survivors) {
            const DivisorClass& c = t.strict_class(name);
            if (name == flag || dotf(form, c, c) < 0) gen_names.insert(name);
        }
    }
    for (const auto& name : gen_names)
        if (std::find(spec.survivors.begin(), spec.survivors.end(), name) == spec.survivors.end())
            throw ReferenceError("generator " + name + " is not a survivor");
    for (const auto& name : spec.survivors) {
        NamedClass nc{name, coords(t.strict_class(name))};
        if (gen_names.count(name)) sm.generators.push_back(nc);
        else sm.curves.push_back(nc);
    }

    FlagDiscrepancy fd = flag_discrepancy(t, spec, flag);
    sm.flag = Flag{flag, coords(t.strict_class(flag)), fd.c_K, fd.c_C};

    Rational g2 = dotf(form, gstar, gstar);
    for (const auto& [name, pb] : t.pullback) {
        if (!out.star.count(name)) continue;
        out.pullback_coeff[name] = dotf(form, pb - out.star.at(name), gstar) / g2;
    }

    // marked points on the flag: generic, the singular point of the chain, one per curve meeting G transversally
    const DivisorClass& g_t = t.strict_class(flag);
    sm.marked_points.push_back({"q", 1, {}, 0});
    MarkedPoint sing{"", static_cast<int>(spec.chain.size()) + 1, {}, 0};
    std::vector<std::string> through_sing;
    std::vector<MarkedPoint> smooth;
    for (const auto& name : tracked) {
        if (name == flag) continue;
        const bool is_boundary = has_boundary && name == t.boundary_name;
        Rational total = dotf(form, out.star.at(name), gstar);
        Rational away = dotf(form, t.strict_class(name), g_t);
        Rational at_sing = total - away;
        if (at_sing < 0 || away < 0) throw InvalidModel("negative local intersection of " + name + " with the flag");
        if (at_sing > 0) {
            if (spec.chain.empty()) throw InvalidModel("singular contribution without a chain");
            if (is_boundary) sing.boundary_mult += at_sing;
            else {
                sing.local_mults[name] = at_sing;
                through_sing.push_back(name);
            }
        }
        if (away > 0) {
            MarkedPoint q{"q_" + name, 1, {}, 0};
            if (is_boundary) q.boundary_mult = away;
            else q.local_mults[name] = away;
            smooth.push_back(q);
        }
    }
    if (!spec.chain.empty()) {
        sing.name = through_sing.empty() ? "q_0" : "q_" + join(through_sing, "_");
        sm.marked_points.push_back(sing);
    }
    sm.marked_points.insert(sm.marked_points.end(), smooth.begin(), smooth.end());
    if (has_boundary) {
        Rational b = intersect(sm, *sm.boundary, sm.flag->cls);
        for (const auto& p : sm.marked_points) b -= p.boundary_mult;
        sm.boundary_remainder = b;
    }
    return out;
}

ContractedSurface derive(const BlowupScript& script) {
    BlownUpSurface t = run_blowup_script(script);
    ContractedSurface c = contract_chain(t, script.contraction, script.flag, script.generators);
    c.model.name = script.name;
    return c;
}

namespace {

std::string point_key(const MarkedPoint& p) {
    std::ostringstream os;
    os << "n=" << p.sing_order << " boundary=" << to_string(p.boundary_mult) << " {";
    bool first = true;
    for (const auto& [c, v] : p.local_mults) {
        os << (first ? "" : ", ") << c << ":" << to_string(v);
        first = false;
    }
    os << "}";
    return os.str();
}

}  // namespace

std::vector<std::string> compare_models(const SurfaceModel& d, const SurfaceModel& h) {
    std::vector<std::string> diff;
    auto names_of = [](const std::vector<NamedClass>& v) {
        std::set<std::string> s;
        for (const auto& x : v) s.insert(x.name);
        return s;
    };
    if (names_of(d.generators) != names_of(h.generators)) diff.push_back("generator sets differ");
    if (!d.flag || !h.flag) {
        diff.push_back("flag missing");
        return diff;
    }
    if (d.flag->name != h.flag->name) diff.push_back("flag names differ: " + d.flag->name + " vs " + h.flag->name);

    std::vector<std::string> common;
    for (const auto& g : h.generators)
        if (d.find(g.name)) common.push_back(g.name);
    for (const auto& c : h.curves)
        if (d.find(c.name)) common.push_back(c.name);
    if (std::find(common.begin(), common.end(), h.flag->name) == common.end()) common.push_back(h.flag->name);

    auto cmp = [&](const std::string& what, const Rational& a, const Rational& b) {
        if (a != b) diff.push_back(what + ": derived " + to_string(a) + ", declared " + to_string(b));
    };
    for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i; j < common.size(); ++j)
            cmp(common[i] + "." + common[j], intersect(d, d.curve(common[i]), d.curve(common[j])),
                intersect(h, h.curve(common[i]), h.curve(common[j])));
    cmp("polarization^2", intersect(d, d.polarization, d.polarization), intersect(h, h.polarization, h.polarization));
    for (const auto& c : common)
        cmp("polarization." + c, intersect(d, d.polarization, d.curve(c)), intersect(h, h.polarization, h.curve(c)));
    if (d.boundary && h.boundary) {
        cmp("C^2", intersect(d, *d.boundary, *d.boundary), intersect(h, *h.boundary, *h.boundary));
        for (const auto& c : common)
            cmp("C." + c, intersect(d, *d.boundary, d.curve(c)), intersect(h, *h.boundary, h.curve(c)));
    } else if (d.boundary.has_value() != h.boundary.has_value()) {
        diff.push_back("boundary present in only one model");
    }
    cmp("c_K", d.flag->c_K, h.flag->c_K);
    cmp("c_C", d.flag->c_C, h.flag->c_C);

    std::multiset<std::string> pd, ph;
    for (const auto& p : d.marked_points) pd.insert(point_key(p));
    for (const auto& p : h.marked_points) ph.insert(point_key(p));
    if (pd != ph) {
        std::string s = "marked points differ: derived [";
        for (const auto& k : pd) s += " (" + k + ")";
        s += " ], declared [";
        for (const auto& k : ph) s += " (" + k + ")";
        diff.push_back(s + " ]");
    }
    return diff;
}

}  // namespace zd
