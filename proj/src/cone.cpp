#include "zdelta/cone.hpp"

#include <set>

#include "zdelta/errors.hpp"

namespace zd {

bool is_nef(const SurfaceModel& m, const DivisorClass& d) {
    for (const auto& g : m.generators)
        if (intersect(m, d, g.cls) < 0) return false;
    return true;
}

bool TRange::contains(const Rational& t) const {
    return !empty && (!lo || *lo <= t) && (!hi || t <= *hi);
}

namespace {

// row layout: x_0..x_{k-1}, constant, t; meaning sum a_i x_i + c + b t >= 0
using Row = std::vector<Rational>;

void normalize(Row& r) {
    for (const auto& v : r)
        if (v != 0) {
            Rational s = abs(v);
            for (auto& w : r) w /= s;
            return;
        }
}

void restrict_range(TRange& tr, const Rational& c, const Rational& b) {
    // c + b t >= 0
    if (b == 0) {
        if (c < 0) tr.empty = true;
        return;
    }
    Rational root = -c / b;
    if (b > 0) {
        if (!tr.lo || *tr.lo < root) tr.lo = root;
    } else {
        if (!tr.hi || *tr.hi > root) tr.hi = root;
    }
    if (tr.lo && tr.hi && *tr.lo > *tr.hi) tr.empty = true;
}

}  // namespace

TRange pseff_range(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g) {
    const std::size_t k = m.generators.size();
    const std::size_t r = m.rank();
    if (a.size() != r || g.size() != r) throw ShapeError("pseff_range: dimension mismatch");
    const std::size_t C = k, T = k + 1;

    // equalities sum x_i gen_i[c] - a[c] + t g[c] = 0
    std::vector<Row> eq;
    for (std::size_t c = 0; c < r; ++c) {
        Row row(k + 2);
        for (std::size_t i = 0; i < k; ++i) row[i] = m.generators[i].cls[c];
        row[C] = -a[c];
        row[T] = g[c];
        eq.push_back(std::move(row));
    }

    std::vector<std::size_t> pivot_of_row;
    std::vector<bool> is_pivot(k, false);
    std::size_t nr = 0;
    for (std::size_t col = 0; col < k && nr < eq.size(); ++col) {
        std::size_t p = nr;
        while (p < eq.size() && eq[p][col] == 0) ++p;
        if (p == eq.size()) continue;
        std::swap(eq[p], eq[nr]);
        Rational inv = 1 / eq[nr][col];
        for (auto& v : eq[nr]) v *= inv;
        for (std::size_t i = 0; i < eq.size(); ++i) {
            if (i == nr || eq[i][col] == 0) continue;
            Rational f = eq[i][col];
            for (std::size_t j = 0; j < k + 2; ++j) eq[i][j] -= f * eq[nr][j];
        }
        pivot_of_row.push_back(col);
        is_pivot[col] = true;
        ++nr;
    }

    TRange tr;
    for (std::size_t i = nr; i < eq.size(); ++i) {
        // 0 = const + b t as two inequalities
        restrict_range(tr, eq[i][C], eq[i][T]);
        restrict_range(tr, -eq[i][C], -eq[i][T]);
        if (tr.empty) return tr;
    }

    std::set<Row> rows;
    for (std::size_t i = 0; i < nr; ++i) {
        // x_p = -(sum_free a x_f + const + b t) >= 0
        Row row(k + 2);
        for (std::size_t j = 0; j < k + 2; ++j)
            if (j != pivot_of_row[i]) row[j] = -eq[i][j];
        normalize(row);
        rows.insert(row);
    }
    for (std::size_t f = 0; f < k; ++f)
        if (!is_pivot[f]) {
            Row row(k + 2);
            row[f] = 1;
            rows.insert(row);
        }

    for (std::size_t f = 0; f < k; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Row> pos, neg;
        std::set<Row> next;
        for (const auto& row : rows) {
            if (row[f] > 0) pos.push_back(row);
            else if (row[f] < 0) neg.push_back(row);
            else next.insert(row);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Row comb(k + 2);
                Rational wp = -n[f], wn = p[f];
                for (std::size_t j = 0; j < k + 2; ++j) comb[j] = wp * p[j] + wn * n[j];
                comb[f] = 0;
                normalize(comb);
                next.insert(comb);
            }
        rows = std::move(next);
    }

    for (const auto& row : rows) {
        restrict_range(tr, row[C], row[T]);
        if (tr.empty) break;
    }
    return tr;
}

bool is_pseudoeffective(const SurfaceModel& m, const DivisorClass& d) {
    return !pseff_range(m, d, DivisorClass::zero(m.rank())).empty;
}

Rational pseff_threshold(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g) {
    TRange tr = pseff_range(m, a, g);
    if (!tr.contains(0)) throw PreconditionError("pseff_threshold: A is not pseudoeffective");
    if (!tr.hi) throw Unbounded("pseff_threshold: A - tG stays pseudoeffective for all t >= 0");
    return *tr.hi;
}

}  // namespace zd
