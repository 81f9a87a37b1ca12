#include "zdelta/invariants.hpp"

#include "zdelta/errors.hpp"

namespace zd {

const PointResult& FlagResult::point(const std::string& name) const {
    for (const auto& p : points)
        if (p.name == name) return p;
    throw ReferenceError("no point '" + name + "' in result for " + model);
}

PiecewisePoly volume_fn(const std::vector<ZariskiPiece>& pieces) {
    std::vector<Rational> breaks{pieces.front().t_lo};
    std::vector<Poly> polys;
    for (const auto& pc : pieces) {
        breaks.push_back(pc.t_hi);
        polys.push_back(pc.vol);
    }
    return {std::move(breaks), std::move(polys)};
}

PiecewisePoly volume_fn(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g) {
    return volume_fn(zariski_sweep(m, a, g));
}

Rational s_value(const SurfaceModel& m, const DivisorClass& a, const std::vector<ZariskiPiece>& pieces) {
    PiecewisePoly v = volume_fn(pieces);
    return pw_integrate(v, v.lo(), v.hi()) / intersect(m, a, a);
}

Rational s_value(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g) {
    return s_value(m, a, zariski_sweep(m, a, g));
}

Rational s_wq(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g,
              const std::vector<ZariskiPiece>& pieces, const MarkedPoint& q) {
    Rational total = 0;
    for (const auto& pc : pieces) {
        Poly pg = Poly::affine(intersect(m, pc.P0, g), intersect(m, pc.P1, g));
        Poly ord;
        for (const auto& [curve, mult] : q.local_mults) {
            auto it = pc.N.find(curve);
            if (it == pc.N.end()) continue;
            ord = ord + Poly::affine(it->second.first, it->second.second) * mult;
        }
        Poly h = pg * ord + pg * pg * Rational(1, 2);
        total += h.integrate(pc.t_lo, pc.t_hi);
    }
    return 2 * total / intersect(m, a, a);
}

Rational s_wq(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g, const MarkedPoint& q) {
    return s_wq(m, a, g, zariski_sweep(m, a, g), q);
}

LinearFraction point_discrepancy(const MarkedPoint& q) {
    Rational inv_n(1, q.sing_order);
    return LinearFraction::linear(inv_n - q.boundary_mult, q.boundary_mult);
}

LinearFraction discrepancy_fn(const Rational& c_K, const Rational& c_C) {
    return LinearFraction::linear(1 + c_K - c_C, c_C);
}

FlagResult compute_flag(const SurfaceModel& m, FlagOptions opt) {
    const Flag& f = m.require_flag();
    DivisorClass a = opt.lambda ? *opt.lambda * m.polarization : m.polarization;
    if (opt.lambda && *opt.lambda <= 0) throw DomainError("lambda must be positive");

    FlagResult r;
    r.model = m.name;
    r.flag = f.name;
    r.lambda = opt.lambda;
    r.polarization_sq = intersect(m, a, a);
    r.pieces = zariski_sweep(m, a, f.cls, {opt.oracle});
    r.tau = r.pieces.back().t_hi;
    r.vol = volume_fn(r.pieces);
    r.s_value = s_value(m, a, r.pieces);
    r.A_flag = discrepancy_fn(f.c_K, f.c_C);
    for (const auto& q : m.marked_points)
        r.points.push_back({q.name, s_wq(m, a, f.cls, r.pieces, q), point_discrepancy(q)});
    return r;
}

}  // namespace zd
