#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zdelta/poly.hpp"
#include "zdelta/surface.hpp"

namespace zd {

struct Decomposition {
    DivisorClass P;
    std::map<std::string, Rational> N;

    bool operator==(const Decomposition& o) const { return P == o.P && N == o.N; }
};

struct ZariskiPiece {
    Rational t_lo;
    Rational t_hi;
    DivisorClass P0, P1;  // P(t) = P0 + t P1
    std::map<std::string, std::pair<Rational, Rational>> N;  // n0 + t n1
    Poly vol;

    DivisorClass P(const Rational& t) const { return P0 + t * P1; }
    Rational n(const std::string& curve, const Rational& t) const;

    bool operator==(const ZariskiPiece&) const = default;
};

Decomposition zariski_fixed(const SurfaceModel& m, const DivisorClass& d);
Decomposition zariski_oracle(const SurfaceModel& m, const DivisorClass& d);

struct SweepOptions {
    bool oracle = false;
};
std::vector<ZariskiPiece> zariski_sweep(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& g,
                                        SweepOptions opt = {});

}  // namespace zd
