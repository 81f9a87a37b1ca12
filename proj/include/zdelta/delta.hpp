#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zdelta/invariants.hpp"
#include "zdelta/piecewise.hpp"

namespace zd {

struct BoundFn {
    LinearFraction expr;
    std::string provenance;
};

enum class CaseKind { Lower, Upper, Exact };

// bounds on delta_p for one stratum of points p
struct DeltaCase {
    std::string name;
    std::string anchor;
    std::vector<BoundFn> lower;  // delta_p >= min(lower)
    std::vector<BoundFn> upper;  // delta_p <= min(upper); may be empty
};

struct ExactRange {
    Rational lo;
    Rational hi;
    LinearFraction fn;
    std::string label;

    bool operator==(const ExactRange&) const = default;
};

struct DeltaAssembly {
    PiecewiseFraction lower;
    std::optional<PiecewiseFraction> upper;
    std::vector<ExactRange> exact;

    bool operator==(const DeltaAssembly&) const = default;
};

BoundFn flag_bound(const FlagResult& fr);
std::vector<BoundFn> point_bounds(const FlagResult& fr);
PiecewiseFraction az_lower_bound(const FlagResult& fr);

PiecewiseFraction min_of(const std::vector<BoundFn>& fns);

PiecewiseFraction case_lower(const DeltaCase& c);
std::optional<PiecewiseFraction> case_upper(const DeltaCase& c);
CaseKind case_kind(const DeltaCase& c);

DeltaAssembly assemble_global(const std::vector<DeltaCase>& cases);

// several admissible configurations: the true delta is one of the scenario
// functions, so take min of lowers and max of uppers
DeltaAssembly combine_scenarios(const std::vector<DeltaAssembly>& scenarios);

std::vector<ExactRange> exact_ranges(const PiecewiseFraction& lower, const PiecewiseFraction& upper);

struct RThreshold {
    Rational value;
    bool warning = false;  // delta <= 1 on all of (0,1]
};
RThreshold r_threshold(const PiecewiseFraction& delta);

// inf of f over (a,b] (or [a,b]); nullopt means unbounded below is impossible and +infinity
std::optional<Rational> infimum(const PiecewiseFraction& f, const Rational& a, const Rational& b);

}  // namespace zd
