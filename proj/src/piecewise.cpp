#include "zdelta/piecewise.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zd {

Rational pw_integrate(const PiecewisePoly& f, const Rational& a, const Rational& b) {
    if (a > b) throw DomainError("integration bounds reversed");
    if (a < f.lo() || b > f.hi()) throw DomainError("integration interval outside domain");
    Rational total = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Rational lo = std::max(a, f.breaks[i]);
        Rational hi = std::min(b, f.breaks[i + 1]);
        if (lo < hi) total += f.pieces[i].integrate(lo, hi);
    }
    return total;
}

namespace {

void check_no_pole(const LinearFraction& f, const Rational& u, const Rational& v, bool open_u) {
    Poly q = f.denominator();
    int su = sgn(q(u)), sv = sgn(q(v));
    if ((su == 0 && !open_u) || sv == 0 || su * sv < 0)
        throw PoleError("denominator of " + f.str() + " vanishes on [" + to_string(u) + "," + to_string(v) + "]");
}

std::vector<std::string> split_labels(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string join_labels(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ",";
        out += p;
    }
    return out;
}

std::string merge_labels(const std::string& a, const std::string& b) {
    auto parts = split_labels(a);
    for (const auto& p : split_labels(b))
        if (std::find(parts.begin(), parts.end(), p) == parts.end()) parts.push_back(p);
    return join_labels(parts);
}

struct Crossing {
    std::size_t i, j;
    Poly numer;
};

}  // namespace

PiecewiseFraction simplify(const PiecewiseFraction& f) {
    std::vector<Rational> breaks{f.breaks.front()};
    std::vector<LinearFraction> pieces;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!pieces.empty() && pieces.back() == f.pieces[i]) {
            breaks.back() = f.breaks[i + 1];
            labels.back() = merge_labels(labels.back(), f.label(i));
            continue;
        }
        pieces.push_back(f.pieces[i]);
        labels.push_back(f.label(i));
        breaks.push_back(f.breaks[i + 1]);
    }
    return {std::move(breaks), std::move(pieces), std::move(labels), f.open_lo};
}

PiecewiseFraction pw_envelope(const std::vector<PiecewiseFraction>& fns, Extreme which) {
    if (fns.empty()) throw ShapeError("envelope of an empty list");
    const auto& first = fns.front();
    for (const auto& f : fns)
        if (f.lo() != first.lo() || f.hi() != first.hi() || f.open_lo != first.open_lo)
            throw DomainError("envelope: functions live on different domains");

    std::vector<Rational> pts;
    for (const auto& f : fns) pts.insert(pts.end(), f.breaks.begin(), f.breaks.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<Rational> breaks{pts.front()};
    std::vector<LinearFraction> pieces;
    std::vector<std::string> labels;

    for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
        const Rational u = pts[s], v = pts[s + 1];
        const bool open_u = first.open_lo && u == first.lo();
        const Rational mid = (u + v) / 2;
        std::vector<LinearFraction> act;
        std::vector<std::string> lab;
        for (std::size_t k = 0; k < fns.size(); ++k) {
            std::size_t idx = fns[k].index_of(mid);
            act.push_back(fns[k].pieces[idx]);
            std::string l = fns[k].label(idx);
            lab.push_back(l.empty() ? "#" + std::to_string(k) : l);
            check_no_pole(act.back(), u, v, open_u);
        }

        std::vector<Rational> cuts{u, v};
        std::vector<Crossing> irrational;
        for (std::size_t i = 0; i < act.size(); ++i)
            for (std::size_t j = i + 1; j < act.size(); ++j) {
                if (act[i] == act[j]) continue;
                Poly c = cross(act[i], act[j]);
                if (c.is_zero()) continue;
                RootSet rs = real_roots(c);
                for (const auto& r : rs.rational)
                    if (r > u && r < v) cuts.push_back(r);
                if (rs.has_irrational) irrational.push_back({i, j, c});
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            const Rational a = cuts[c], b = cuts[c + 1];
            const Rational m = (a + b) / 2;
            std::size_t best = 0;
            Rational best_val = act[0](m);
            for (std::size_t k = 1; k < act.size(); ++k) {
                Rational val = act[k](m);
                if (which == Extreme::Min ? val < best_val : val > best_val) {
                    best = k;
                    best_val = val;
                }
            }
            std::string l;
            for (std::size_t k = 0; k < act.size(); ++k)
                if (act[k] == act[best]) l = merge_labels(l, lab[k]);
            for (const auto& x : irrational)
                if ((x.i == best || x.j == best) && act[x.i] != act[x.j] && count_roots_open(x.numer, a, b) > 0)
                    throw NotRepresentable("irrational crossing of " + act[x.i].str() + " and " + act[x.j].str() +
                                           " inside [" + to_string(a) + "," + to_string(b) + "]");
            pieces.push_back(act[best]);
            labels.push_back(l);
            breaks.push_back(b);
        }
    }
    return simplify(PiecewiseFraction(std::move(breaks), std::move(pieces), std::move(labels), first.open_lo));
}

PiecewiseFraction pw_min(const std::vector<LinearFraction>& fns, const Interval& domain,
                         const std::vector<std::string>& labels) {
    if (fns.empty()) throw ShapeError("pw_min of an empty list");
    if (!(domain.lo < domain.hi)) throw DomainError("pw_min: empty domain");
    std::vector<PiecewiseFraction> single;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        std::string l = i < labels.size() ? labels[i] : "#" + std::to_string(i);
        single.emplace_back(std::vector<Rational>{domain.lo, domain.hi}, std::vector<LinearFraction>{fns[i]},
                            std::vector<std::string>{l}, domain.open_lo);
    }
    return pw_envelope(single, Extreme::Min);
}

}  // namespace zd
