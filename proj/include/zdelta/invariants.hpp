#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zdelta/linear_fraction.hpp"
#include "zdelta/piecewise.hpp"
#include "zdelta/zariski.hpp"

namespace zd {

struct PointResult {
    std::string name;
    Rational s_wq;
    LinearFraction A;

    bool operator==(const PointResult&) const = default;
};

struct FlagResult {
    std::string model;
    std::string flag;
    std::optional<Rational> lambda;  // set in fixed-lambda mode; values are then unnormalized
    Rational polarization_sq;
    Rational tau;
    std::vector<ZariskiPiece> pieces;
    PiecewisePoly vol;
    Rational s_value;
    LinearFraction A_flag;
    std::vector<PointResult> points;

    const PointResult& point(const std::string& name) const;

    bool operator==(const FlagResult&) const = default;
};

PiecewisePoly volume_fn(const std::vector<ZariskiPiece>& pieces);
PiecewisePoly volume_fn(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g);

Rational s_value(const SurfaceModel& m, const DivisorClass& a, const std::vector<ZariskiPiece>& pieces);
Rational s_value(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g);

Rational s_wq(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g,
              const std::vector<ZariskiPiece>& pieces, const MarkedPoint& q);
Rational s_wq(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g, const MarkedPoint& q);

// 1/n - (1 - l) b
LinearFraction point_discrepancy(const MarkedPoint& q);
// 1 + c_K - (1 - l) c_C
LinearFraction discrepancy_fn(const Rational& c_K, const Rational& c_C);

struct FlagOptions {
    bool oracle = false;
    std::optional<Rational> lambda;
};
// all invariants of the model's flag with respect to its polarization
FlagResult compute_flag(const SurfaceModel& m, FlagOptions opt = {});

}  // namespace zd
