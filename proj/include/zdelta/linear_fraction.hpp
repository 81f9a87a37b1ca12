#pragma once

#include <string>
#include <string_view>

#include "zdelta/poly.hpp"
#include "zdelta/rational.hpp"

namespace zd {

// lambda -> (p0 + p1 l) / (q0 + q1 l); the highest nonzero q coefficient is 1
class LinearFraction {
public:
    LinearFraction() : LinearFraction(0, 0, 1, 0) {}
    LinearFraction(Rational p0, Rational p1, Rational q0, Rational q1);
    static LinearFraction constant(const Rational& c) { return {c, 0, 1, 0}; }
    static LinearFraction linear(const Rational& c0, const Rational& c1) { return {c0, c1, 1, 0}; }

    const Rational& p0() const { return p0_; }
    const Rational& p1() const { return p1_; }
    const Rational& q0() const { return q0_; }
    const Rational& q1() const { return q1_; }
    Poly numerator() const { return Poly::affine(p0_, p1_); }
    Poly denominator() const { return Poly::affine(q0_, q1_); }

    Rational operator()(const Rational& x) const;

    // this / (c * lambda)
    LinearFraction divided_by_linear(const Rational& c) const;

    bool operator==(const LinearFraction& o) const;
    bool operator!=(const LinearFraction& o) const { return !(*this == o); }

    // integer form such as "(4+8λ)/(11λ)"
    std::string str(const std::string& var = "λ") const;

private:
    Rational p0_, p1_, q0_, q1_;
};

// inverse of str(): "(4+8λ)/(11λ)", "12/(13λ)", "1+2λ", "48/25"; 'l' also names the variable
LinearFraction parse_fraction(std::string_view text);

// numerator of f - g after cross multiplication: pf*qg - pg*qf
Poly cross(const LinearFraction& f, const LinearFraction& g);

}  // namespace zd
