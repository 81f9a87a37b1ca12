#include "zdelta/zariski.hpp"

#include <algorithm>

#include "zdelta/cone.hpp"
#include "zdelta/errors.hpp"

namespace zd {

Rational ZariskiPiece::n(const std::string& curve, const Rational& t) const {
    auto it = N.find(curve);
    if (it == N.end()) return 0;
    return it->second.first + t * it->second.second;
}

namespace {

Matrix gram(const SurfaceModel& m, const std::vector<std::size_t>& support) {
    Matrix g(support.size(), Vector(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i)
        for (std::size_t j = 0; j < support.size(); ++j)
            g[i][j] = intersect(m, m.generators[support[i]].cls, m.generators[support[j]].cls);
    return g;
}

// coefficients x with (d - sum x_j C_j).C_k = 0 for k in support
Vector orthogonal_coeffs(const SurfaceModel& m, const std::vector<std::size_t>& support, const Matrix& g,
                         const DivisorClass& d) {
    Vector rhs;
    for (auto i : support) rhs.push_back(intersect(m, d, m.generators[i].cls));
    return solve_linear_system(g, rhs);
}

DivisorClass subtract(const SurfaceModel& m, DivisorClass d, const std::vector<std::size_t>& support, const Vector& x) {
    for (std::size_t j = 0; j < support.size(); ++j) d = d - x[j] * m.generators[support[j]].cls;
    return d;
}

Decomposition make_decomposition(const SurfaceModel& m, const DivisorClass& p, const std::vector<std::size_t>& support,
                                 const Vector& x) {
    Decomposition dec{p, {}};
    for (std::size_t j = 0; j < support.size(); ++j)
        if (x[j] != 0) dec.N[m.generators[support[j]].name] = x[j];
    return dec;
}

std::vector<std::size_t> support_indices(const SurfaceModel& m, const Decomposition& d) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m.generators.size(); ++i)
        if (d.N.count(m.generators[i].name)) s.push_back(i);
    return s;
}

}  // namespace

Decomposition zariski_fixed(const SurfaceModel& m, const DivisorClass& d) {
    if (!is_pseudoeffective(m, d)) throw PreconditionError("zariski_fixed: class is not pseudoeffective");
    std::vector<std::size_t> support;
    for (std::size_t iter = 0; iter <= m.generators.size() + 1; ++iter) {
        Vector x;
        DivisorClass p = d;
        if (!support.empty()) {
            Matrix g = gram(m, support);
            if (!is_negative_definite(g)) throw InvalidModel("zariski_fixed: support Gram matrix is not negative definite");
            x = orthogonal_coeffs(m, support, g, d);
            for (const auto& v : x)
                if (v < 0) throw InvalidModel("zariski_fixed: negative coefficient in the negative part");
            p = subtract(m, d, support, x);
        }
        std::vector<std::size_t> added;
        for (std::size_t i = 0; i < m.generators.size(); ++i)
            if (std::find(support.begin(), support.end(), i) == support.end() && intersect(m, p, m.generators[i].cls) < 0)
                added.push_back(i);
        if (added.empty()) return make_decomposition(m, p, support, x);
        support.insert(support.end(), added.begin(), added.end());
        std::sort(support.begin(), support.end());
    }
    throw InvalidModel("zariski_fixed: support did not stabilize");
}

Decomposition zariski_oracle(const SurfaceModel& m, const DivisorClass& d) {
    const std::size_t k = m.generators.size();
    if (k > 12) throw PreconditionError("zariski_oracle: more than 12 generators");
    if (!is_pseudoeffective(m, d)) throw PreconditionError("zariski_oracle: class is not pseudoeffective");
    std::vector<Decomposition> found;
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) s.push_back(i);
        Vector x;
        DivisorClass p = d;
        if (!s.empty()) {
            Matrix g = gram(m, s);
            if (!is_negative_definite(g)) continue;
            x = orthogonal_coeffs(m, s, g, d);
            if (std::any_of(x.begin(), x.end(), [](const Rational& v) { return v <= 0; })) continue;
            p = subtract(m, d, s, x);
        }
        if (!is_nef(m, p)) continue;
        found.push_back(make_decomposition(m, p, s, x));
    }
    if (found.size() != 1)
        throw OracleInconsistency("zariski_oracle: " + std::to_string(found.size()) + " candidate decompositions");
    return found.front();
}

std::vector<ZariskiPiece> zariski_sweep(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g,
                                        SweepOptions opt) {
    if (g.is_zero()) throw PreconditionError("zariski_sweep: flag class is zero");
    if (!is_nef(m, a)) throw PreconditionError("zariski_sweep: polarization is not nef");
    const Rational tau = pseff_threshold(m, a, g);
    if (tau <= 0) throw PreconditionError("zariski_sweep: pseudoeffective threshold is zero");

    std::vector<ZariskiPiece> pieces;
    Rational t0 = 0;
    while (t0 < tau) {
        Rational probe = tau;
        bool placed = false;
        for (int bisect = 0; bisect < 256 && !placed; ++bisect) {
            Rational tm = (t0 + probe) / 2;
            DivisorClass d = a - tm * g;
            Decomposition dec = opt.oracle ? zariski_oracle(m, d) : zariski_fixed(m, d);
            std::vector<std::size_t> s = support_indices(m, dec);

            Vector x0, x1;
            if (!s.empty()) {
                Matrix gm = gram(m, s);
                x0 = orthogonal_coeffs(m, s, gm, a);
                x1 = orthogonal_coeffs(m, s, gm, Rational(-1) * g);
            }
            DivisorClass p0 = subtract(m, a, s, x0);
            DivisorClass p1 = subtract(m, Rational(-1) * g, s, x1);

            // validity: c + b t >= 0 for every constraint, intersected with [0, tau]
            Rational lo = 0, hi = tau;
            auto apply = [&](const Rational& c, const Rational& b) {
                if (b > 0) lo = std::max(lo, Rational(-c / b));
                else if (b < 0) hi = std::min(hi, Rational(-c / b));
            };
            for (std::size_t j = 0; j < s.size(); ++j) apply(x0[j], x1[j]);
            for (std::size_t i = 0; i < m.generators.size(); ++i) {
                if (std::find(s.begin(), s.end(), i) != s.end()) continue;
                apply(intersect(m, p0, m.generators[i].cls), intersect(m, p1, m.generators[i].cls));
            }
            if (lo > tm || hi < tm) throw InvalidModel("zariski_sweep: support invalid at its own sample point");
            if (lo > t0) {
                probe = tm;
                continue;
            }
            ZariskiPiece pc;
            pc.t_lo = t0;
            pc.t_hi = hi;
            pc.P0 = p0;
            pc.P1 = p1;
            for (std::size_t j = 0; j < s.size(); ++j) pc.N[m.generators[s[j]].name] = {x0[j], x1[j]};
            pc.vol = Poly({intersect(m, p0, p0), 2 * intersect(m, p0, p1), intersect(m, p1, p1)});
            pieces.push_back(std::move(pc));
            t0 = hi;
            placed = true;
        }
        if (!placed) throw InvalidModel("zariski_sweep: no support reaches t = " + to_string(t0));
    }
    return pieces;
}

}  // namespace zd
