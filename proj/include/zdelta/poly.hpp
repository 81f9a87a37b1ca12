#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zdelta/rational.hpp"

namespace zd {

// univariate polynomial, coefficients low degree first, trailing zeros trimmed
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly affine(const Rational& c0, const Rational& c1);

    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Rational operator()(const Rational& t) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& s) const;
    Poly operator-() const;

    Poly antiderivative() const;
    Rational integrate(const Rational& a, const Rational& b) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

// inverse of str(): "-1/2t^2 + 8", "9-6t+t^2"; throws ParseError
Poly parse_poly(std::string_view text, char var = 't');

// real roots of a polynomial of degree <= 2, split by rationality
struct RootSet {
    std::vector<Rational> rational;
    // irrational roots are kept as the quadratic that produced them
    bool has_irrational = false;
};
RootSet real_roots(const Poly& p);

// number of roots of p (degree <= 2, p != 0) in the open interval (a,b)
int count_roots_open(const Poly& p, const Rational& a, const Rational& b);

}  // namespace zd
