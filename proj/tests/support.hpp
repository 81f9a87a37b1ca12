#pragma once

#include <random>
#include <string>
#include <vector>

#include "zdelta/catalog.hpp"
#include "zdelta/io.hpp"
#include "zdelta/rational.hpp"
#include "zdelta/surface.hpp"

namespace zt {

using zd::Rational;

inline Rational Q(const char* s) { return zd::parse_rational(s); }

inline zd::Catalog& catalog() {
    static zd::Catalog cat(ZDELTA_DATA_DIR);
    return cat;
}

inline zd::DivisorClass cls(std::initializer_list<const char*> xs) {
    zd::Vector v;
    for (auto x : xs) v.push_back(Q(x));
    return zd::DivisorClass(v);
}

// seeded so failures replay
class Rng {
public:
    explicit Rng(unsigned seed) : gen_(seed) {}
    // p/q with 0 <= p/q <= hi, q <= maxden
    Rational rational(int hi, int maxden = 12) {
        std::uniform_int_distribution<int> d(1, maxden);
        int q = d(gen_);
        std::uniform_int_distribution<int> p(0, hi * q);
        return reduced(p(gen_), q);
    }
    // strictly inside (0,1]
    Rational unit(int maxden = 50) {
        std::uniform_int_distribution<int> d(1, maxden);
        int q = d(gen_);
        std::uniform_int_distribution<int> p(1, q);
        return reduced(p(gen_), q);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

private:
    static Rational reduced(int p, int q) {
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    std::mt19937 gen_;
};

inline zd::DivisorClass random_effective(const zd::SurfaceModel& m, Rng& rng) {
    zd::DivisorClass d = zd::DivisorClass::zero(m.rank());
    for (const auto& g : m.generators) d = d + rng.rational(3, 6) * g.cls;
    return d;
}

inline std::vector<std::string> flag_configs() {
    std::vector<std::string> out;
    for (const auto& n : catalog().model_names())
        if (catalog().model(n).flag) out.push_back(n);
    return out;
}

}  // namespace zt
