#pragma once

#include <string>
#include <vector>

#include "zdelta/errors.hpp"
#include "zdelta/linear_fraction.hpp"
#include "zdelta/poly.hpp"
#include "zdelta/rational.hpp"

namespace zd {

struct Interval {
    Rational lo;
    Rational hi;
    bool open_lo = false;  // (0,1] for lambda
};

inline Interval unit_lambda() { return {0, 1, true}; }

template <class Piece>
struct Piecewise {
    std::vector<Rational> breaks;
    std::vector<Piece> pieces;
    std::vector<std::string> labels;  // provenance, may be empty
    bool open_lo = false;

    Piecewise() = default;
    Piecewise(std::vector<Rational> b, std::vector<Piece> p, std::vector<std::string> l = {}, bool open = false)
        : breaks(std::move(b)), pieces(std::move(p)), labels(std::move(l)), open_lo(open) {
        if (pieces.empty() || breaks.size() != pieces.size() + 1)
            throw ShapeError("piecewise: piece count must be breakpoint count - 1");
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
            if (!(breaks[i] < breaks[i + 1])) throw ShapeError("piecewise: breakpoints not increasing");
        if (!labels.empty() && labels.size() != pieces.size()) throw ShapeError("piecewise: label count");
    }

    const Rational& lo() const { return breaks.front(); }
    const Rational& hi() const { return breaks.back(); }
    std::size_t size() const { return pieces.size(); }
    Interval domain() const { return {lo(), hi(), open_lo}; }
    std::string label(std::size_t i) const { return i < labels.size() ? labels[i] : std::string(); }

    bool contains(const Rational& x) const {
        return (open_lo ? x > lo() : x >= lo()) && x <= hi();
    }

    std::size_t index_of(const Rational& x) const {
        if (!contains(x)) throw DomainError("point " + to_string(x) + " outside domain");
        for (std::size_t i = 0; i < pieces.size(); ++i)
            if (x <= breaks[i + 1]) return i;
        return pieces.size() - 1;
    }

    Rational operator()(const Rational& x) const { return pieces[index_of(x)](x); }

    bool continuous() const {
        for (std::size_t i = 1; i < pieces.size(); ++i)
            if (pieces[i - 1](breaks[i]) != pieces[i](breaks[i])) return false;
        return true;
    }

    bool operator==(const Piecewise& o) const {
        return breaks == o.breaks && pieces == o.pieces && open_lo == o.open_lo;
    }
};

using PiecewisePoly = Piecewise<Poly>;
using PiecewiseFraction = Piecewise<LinearFraction>;

Rational pw_integrate(const PiecewisePoly& f, const Rational& a, const Rational& b);

enum class Extreme { Min, Max };

// pointwise min (or max) of piecewise linear fractions sharing one domain
PiecewiseFraction pw_envelope(const std::vector<PiecewiseFraction>& fns, Extreme which);

PiecewiseFraction pw_min(const std::vector<LinearFraction>& fns, const Interval& domain,
                         const std::vector<std::string>& labels = {});

// merge adjacent pieces carrying the same function
PiecewiseFraction simplify(const PiecewiseFraction& f);

}  // namespace zd
