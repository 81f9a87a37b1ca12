#include "zdelta/delta.hpp"

#include <algorithm>

#include "zdelta/errors.hpp"

namespace zd {

BoundFn flag_bound(const FlagResult& fr) {
    if (fr.lambda) throw DomainError("flag_bound needs the normalized (lambda = 1) result");
    if (fr.s_value <= 0) throw DomainError("flag_bound: S must be positive");
    return {fr.A_flag.divided_by_linear(fr.s_value), fr.model + ":" + fr.flag};
}

std::vector<BoundFn> point_bounds(const FlagResult& fr) {
    if (fr.lambda) throw DomainError("point_bounds needs the normalized (lambda = 1) result");
    std::vector<BoundFn> out;
    for (const auto& p : fr.points) {
        if (p.s_wq <= 0) throw DomainError("point bound at " + p.name + ": S(W;q) must be positive");
        out.push_back({p.A.divided_by_linear(p.s_wq), fr.model + ":" + p.name});
    }
    return out;
}

PiecewiseFraction min_of(const std::vector<BoundFn>& fns) {
    std::vector<LinearFraction> e;
    std::vector<std::string> l;
    for (const auto& b : fns) {
        e.push_back(b.expr);
        l.push_back(b.provenance);
    }
    return pw_min(e, unit_lambda(), l);
}

PiecewiseFraction az_lower_bound(const FlagResult& fr) {
    if (fr.points.empty()) throw PreconditionError("az_lower_bound: flag carries no marked point");
    std::vector<BoundFn> all{flag_bound(fr)};
    auto pts = point_bounds(fr);
    all.insert(all.end(), pts.begin(), pts.end());
    return min_of(all);
}

PiecewiseFraction case_lower(const DeltaCase& c) {
    if (c.lower.empty()) throw PreconditionError("case " + c.name + " has no lower bound");
    return min_of(c.lower);
}

std::optional<PiecewiseFraction> case_upper(const DeltaCase& c) {
    if (c.upper.empty()) return std::nullopt;
    return min_of(c.upper);
}

std::vector<ExactRange> exact_ranges(const PiecewiseFraction& lower, const PiecewiseFraction& upper) {
    std::vector<Rational> pts = lower.breaks;
    pts.insert(pts.end(), upper.breaks.begin(), upper.breaks.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<ExactRange> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rational mid = (pts[i] + pts[i + 1]) / 2;
        std::size_t li = lower.index_of(mid), ui = upper.index_of(mid);
        if (lower.pieces[li] != upper.pieces[ui]) continue;
        if (!out.empty() && out.back().hi == pts[i] && out.back().fn == lower.pieces[li]) {
            out.back().hi = pts[i + 1];
            continue;
        }
        out.push_back({pts[i], pts[i + 1], lower.pieces[li], lower.label(li)});
    }
    return out;
}

CaseKind case_kind(const DeltaCase& c) {
    auto up = case_upper(c);
    if (!up) return CaseKind::Lower;
    auto lo = case_lower(c);
    auto ex = exact_ranges(lo, *up);
    if (ex.size() == 1 && ex.front().lo == lo.lo() && ex.front().hi == lo.hi()) return CaseKind::Exact;
    return CaseKind::Upper;
}

DeltaAssembly assemble_global(const std::vector<DeltaCase>& cases) {
    if (cases.empty()) throw PreconditionError("assemble_global: no cases");
    std::vector<PiecewiseFraction> lows, ups;
    for (const auto& c : cases) {
        lows.push_back(case_lower(c));
        if (auto u = case_upper(c)) ups.push_back(*u);
    }
    DeltaAssembly out{pw_envelope(lows, Extreme::Min), std::nullopt, {}};
    if (!ups.empty()) {
        out.upper = pw_envelope(ups, Extreme::Min);
        out.exact = exact_ranges(out.lower, *out.upper);
    }
    return out;
}

DeltaAssembly combine_scenarios(const std::vector<DeltaAssembly>& scenarios) {
    if (scenarios.empty()) throw PreconditionError("combine_scenarios: no scenarios");
    std::vector<PiecewiseFraction> lows, ups;
    bool all_upper = true;
    for (const auto& s : scenarios) {
        lows.push_back(s.lower);
        if (s.upper) ups.push_back(*s.upper);
        else all_upper = false;
    }
    DeltaAssembly out{pw_envelope(lows, Extreme::Min), std::nullopt, {}};
    if (all_upper) {
        out.upper = pw_envelope(ups, Extreme::Max);
        out.exact = exact_ranges(out.lower, *out.upper);
    }
    return out;
}

RThreshold r_threshold(const PiecewiseFraction& delta) {
    for (std::size_t i = delta.size(); i-- > 0;) {
        const LinearFraction& f = delta.pieces[i];
        // f > 1  <=>  g = (p0 - q0) + (p1 - q1) l > 0, the denominator being positive here
        Poly g = f.numerator() - f.denominator();
        const Rational a = delta.breaks[i], b = delta.breaks[i + 1];
        if (f.denominator()(b) <= 0) throw PoleError("r_threshold: denominator not positive on the domain");
        if (g(b) > 0) return {b, false};
        if (g.degree() == 1) {
            Rational root = -g.coeff(0) / g.coeff(1);
            if (root > a && root <= b && g.coeff(1) < 0) return {root, false};
        }
    }
    return {0, true};
}

namespace {

// right limit of f at x; nullopt for +infinity
std::optional<Rational> right_limit(const LinearFraction& f, const Rational& x) {
    Rational q = f.denominator()(x), p = f.numerator()(x);
    if (q != 0) return p / q;
    if (f.q1() == 0) throw PoleError("degenerate denominator");
    // q = q1 (l - x); the denominator is positive to the right iff q1 > 0
    int side = sgn(f.q1());
    if (p == 0) return f.p1() / f.q1();
    if (sgn(p) * side > 0) return std::nullopt;
    throw DomainError("function tends to -infinity at " + to_string(x));
}

}  // namespace

std::optional<Rational> infimum(const PiecewiseFraction& f, const Rational& a, const Rational& b) {
    if (a >= b) throw DomainError("infimum: empty interval");
    std::optional<Rational> best;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Rational lo = std::max(a, f.breaks[i]), hi = std::min(b, f.breaks[i + 1]);
        if (!(lo < hi)) continue;
        // monotone on a pole-free interval: the extremes sit at the ends
        std::optional<Rational> vals[2] = {right_limit(f.pieces[i], lo), f.pieces[i](hi)};
        for (auto& v : vals)
            if (v && (!best || *v < *best)) best = v;
    }
    return best;
}

}  // namespace zd
