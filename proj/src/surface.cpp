#include "zdelta/surface.hpp"

#include <set>

#include "zdelta/cone.hpp"
#include "zdelta/errors.hpp"

namespace zd {

DivisorClass DivisorClass::unit(std::size_t n, std::size_t i) {
    DivisorClass d = zero(n);
    d.coords[i] = 1;
    return d;
}

bool DivisorClass::is_zero() const {
    for (const auto& c : coords)
        if (c != 0) return false;
    return true;
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    if (a.size() != b.size()) throw ShapeError("divisor classes of different rank");
    DivisorClass r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.coords[i] += b.coords[i];
    return r;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + Rational(-1) * b; }

DivisorClass operator*(const Rational& s, const DivisorClass& a) {
    DivisorClass r = a;
    for (auto& c : r.coords) c *= s;
    return r;
}

const DivisorClass* SurfaceModel::find(const std::string& curve) const {
    for (const auto& g : generators)
        if (g.name == curve) return &g.cls;
    for (const auto& c : curves)
        if (c.name == curve) return &c.cls;
    if (flag && flag->name == curve) return &flag->cls;
    return nullptr;
}

const DivisorClass& SurfaceModel::curve(const std::string& name) const {
    const DivisorClass* d = find(name);
    if (!d) throw ReferenceError("unknown curve '" + name + "' in model " + this->name);
    return *d;
}

const MarkedPoint& SurfaceModel::point(const std::string& pname) const {
    for (const auto& p : marked_points)
        if (p.name == pname) return p;
    throw ReferenceError("unknown marked point '" + pname + "' in model " + name);
}

const Flag& SurfaceModel::require_flag() const {
    if (!flag) throw ReferenceError("model " + name + " has no flag divisor");
    return *flag;
}

Rational intersect(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& b) {
    if (a.size() != m.rank() || b.size() != m.rank()) throw ShapeError("intersect: dimension mismatch");
    return dot(a.coords, mat_vec(m.form, b.coords));
}

ValidationReport validate(const SurfaceModel& m) {
    ValidationReport rep;
    auto bad = [&](std::string s) { rep.violations.push_back(std::move(s)); };
    const std::size_t r = m.rank();

    if (r == 0) bad("basis is empty");
    std::set<std::string> seen;
    for (const auto& b : m.basis_names)
        if (!seen.insert(b).second) bad("duplicate basis name '" + b + "'");

    bool form_ok = m.form.size() == r;
    for (const auto& row : m.form) form_ok = form_ok && row.size() == r;
    if (!form_ok) {
        bad("form is not " + std::to_string(r) + "x" + std::to_string(r));
        return rep;
    }
    if (!is_symmetric(m.form)) {
        bad("form is not symmetric");
    } else if (r > 0) {
        Inertia in = inertia(m.form);
        if (in.positive != 1 || in.negative != static_cast<int>(r) - 1)
            bad("form signature is (" + std::to_string(in.positive) + "," + std::to_string(in.negative) + ") with " +
                std::to_string(in.zero) + " null directions, expected (1," + std::to_string(r - 1) + ")");
    }

    if (m.generators.empty()) bad("generator list is empty");
    std::set<std::string> names;
    bool shapes_ok = true;
    auto check_len = [&](const DivisorClass& d, const std::string& what) {
        if (d.size() != r) {
            bad(what + " has " + std::to_string(d.size()) + " coordinates, rank is " + std::to_string(r));
            shapes_ok = false;
        }
    };
    for (const auto& g : m.generators) {
        if (!names.insert(g.name).second) bad("duplicate curve name '" + g.name + "'");
        check_len(g.cls, "generator " + g.name);
        if (g.cls.is_zero()) bad("generator " + g.name + " is the zero class");
    }
    for (const auto& c : m.curves) {
        if (!names.insert(c.name).second) bad("duplicate curve name '" + c.name + "'");
        check_len(c.cls, "curve " + c.name);
    }
    check_len(m.polarization, "polarization");
    if (m.boundary) check_len(*m.boundary, "boundary");
    if (m.flag) {
        check_len(m.flag->cls, "flag " + m.flag->name);
        if (m.flag->cls.is_zero()) bad("flag class is zero");
        if (names.count(m.flag->name)) {
            const DivisorClass* d = m.find(m.flag->name);
            if (d && shapes_ok && *d != m.flag->cls) bad("flag " + m.flag->name + " disagrees with the curve of that name");
        }
    }
    if (!shapes_ok || rep.violations.size() > 0) return rep;

    if (intersect(m, m.polarization, m.polarization) <= 0) bad("polarization is not big: self-intersection <= 0");
    else if (!is_pseudoeffective(m, m.polarization)) bad("polarization is not pseudoeffective");

    if (!m.flag) {
        if (!m.marked_points.empty()) bad("marked points given without a flag");
        return rep;
    }
    const Flag& f = *m.flag;
    std::set<std::string> pnames;
    std::set<std::string> mentioned;
    for (const auto& p : m.marked_points) {
        if (!pnames.insert(p.name).second) bad("duplicate marked point '" + p.name + "'");
        if (p.sing_order < 1) bad("point " + p.name + ": singularity order must be >= 1");
        if (p.boundary_mult < 0) bad("point " + p.name + ": negative boundary multiplicity");
        if (p.boundary_mult != 0 && !m.boundary) bad("point " + p.name + ": boundary multiplicity without boundary");
        for (const auto& [c, v] : p.local_mults) {
            if (v < 0) bad("point " + p.name + ": negative local multiplicity for " + c);
            if (!m.find(c)) bad("point " + p.name + ": unknown curve " + c);
            if (c == f.name) bad("point " + p.name + ": the flag itself cannot carry a local multiplicity");
            mentioned.insert(c);
        }
    }
    for (const auto& [c, v] : m.unmarked_remainder) {
        if (v < 0) bad("negative unmarked remainder for " + c);
        if (!m.find(c)) bad("unmarked remainder for unknown curve " + c);
        mentioned.insert(c);
    }
    for (const auto& c : mentioned) {
        const DivisorClass* d = m.find(c);
        if (!d || c == f.name) continue;
        Rational sum = 0;
        for (const auto& p : m.marked_points) {
            auto it = p.local_mults.find(c);
            if (it != p.local_mults.end()) sum += it->second;
        }
        auto rem = m.unmarked_remainder.find(c);
        if (rem != m.unmarked_remainder.end()) sum += rem->second;
        Rational global = intersect(m, *d, f.cls);
        if (sum != global)
            bad("sum rule for " + c + ": local multiplicities total " + to_string(sum) + " but " + c + "." + f.name +
                " = " + to_string(global));
    }
    if (m.boundary && m.boundary_remainder) {
        Rational sum = *m.boundary_remainder;
        if (sum < 0) bad("negative boundary remainder");
        for (const auto& p : m.marked_points) sum += p.boundary_mult;
        Rational global = intersect(m, *m.boundary, f.cls);
        if (sum != global)
            bad("boundary sum rule: local multiplicities total " + to_string(sum) + " but C." + f.name + " = " +
                to_string(global));
    }
    return rep;
}

void require_valid(const SurfaceModel& m) {
    ValidationReport rep = validate(m);
    if (rep.ok()) return;
    std::string msg = "model " + m.name + " is invalid:";
    for (const auto& v : rep.violations) msg += "\n  " + v;
    throw ValidationError(msg);
}

}  // namespace zd
