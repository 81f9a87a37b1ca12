#pragma once

#include <optional>

#include "zdelta/surface.hpp"

namespace zd {

bool is_nef(const SurfaceModel& m, const DivisorClass& d);
bool is_pseudoeffective(const SurfaceModel& m, const DivisorClass& d);

// the set of t with a - t g pseudoeffective; missing ends are infinite
struct TRange {
    bool empty = false;
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    bool contains(const Rational& t) const;
};
TRange pseff_range(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g);

Rational pseff_threshold(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g);

}  // namespace zd
