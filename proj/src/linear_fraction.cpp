#include "zdelta/linear_fraction.hpp"

#include <cctype>
#include <sstream>
#include <tuple>

#include "zdelta/errors.hpp"

namespace zd {

LinearFraction::LinearFraction(Rational p0, Rational p1, Rational q0, Rational q1)
    : p0_(std::move(p0)), p1_(std::move(p1)), q0_(std::move(q0)), q1_(std::move(q1)) {
    Rational lead = q1_ != 0 ? q1_ : q0_;
    if (lead == 0) throw PoleError("linear fraction with zero denominator");
    if (q1_ != 0 && p0_ * q1_ == p1_ * q0_) {
        // removable common factor
        p0_ = p1_ / q1_;
        p1_ = 0;
        q0_ = 1;
        q1_ = 0;
        return;
    }
    p0_ /= lead;
    p1_ /= lead;
    q0_ /= lead;
    q1_ /= lead;
}

Rational LinearFraction::operator()(const Rational& x) const {
    Rational d = q0_ + q1_ * x;
    if (d == 0) throw PoleError("pole of " + str() + " at " + to_string(x));
    return (p0_ + p1_ * x) / d;
}

LinearFraction LinearFraction::divided_by_linear(const Rational& c) const {
    if (q1_ != 0) throw ShapeError("cannot divide a proper fraction by a linear term");
    if (c == 0) throw PoleError("division by zero multiple of lambda");
    return {p0_, p1_, 0, c * q0_};
}

bool LinearFraction::operator==(const LinearFraction& o) const {
    return p0_ == o.p0_ && p1_ == o.p1_ && q0_ == o.q0_ && q1_ == o.q1_;
}

namespace {

std::string affine_str(const Integer& a, const Integer& b, const std::string& var, bool& two_terms) {
    std::ostringstream os;
    two_terms = a != 0 && b != 0;
    if (b == 0) {
        os << a.get_str();
        return os.str();
    }
    auto coef = [&](const Integer& c) {
        if (c == 1) return std::string();
        if (c == -1) return std::string("-");
        return c.get_str();
    };
    if (a == 0) {
        os << coef(b) << var;
    } else {
        os << a.get_str() << (b < 0 ? "-" : "+");
        Integer ab = abs(b);
        os << (ab == 1 ? std::string() : ab.get_str()) << var;
    }
    return os.str();
}

}  // namespace

std::string LinearFraction::str(const std::string& var) const {
    if (p1_ == 0 && q1_ == 0) return to_string(p0_ / q0_);
    Integer l = 1;
    for (const Rational* r : {&p0_, &p1_, &q0_, &q1_}) l = lcm(l, Integer(r->get_den()));
    Integer a0 = Integer(p0_ * l), a1 = Integer(p1_ * l), b0 = Integer(q0_ * l), b1 = Integer(q1_ * l);
    Integer g = 0;
    for (const Integer* v : {&a0, &a1, &b0, &b1}) g = gcd(g, *v);
    a0 /= g;
    a1 /= g;
    b0 /= g;
    b1 /= g;
    bool num2 = false, den2 = false;
    std::string num = affine_str(a0, a1, var, num2);
    if (b1 == 0 && b0 == 1) return num;
    std::string den = affine_str(b0, b1, var, den2);
    bool den_plain = !den2 && (b1 == 0 || b1 == 1);
    std::string out = num2 ? "(" + num + ")" : num;
    out += "/";
    out += den_plain ? den : "(" + den + ")";
    return out;
}

namespace {

class FractionParser {
public:
    explicit FractionParser(std::string_view s) : s_(s) {}

    LinearFraction run() {
        auto [p0, p1] = operand();
        Rational q0 = 1, q1 = 0;
        skip();
        if (i_ < s_.size() && s_[i_] == '/') {
            ++i_;
            std::tie(q0, q1) = operand();
        }
        skip();
        if (i_ != s_.size()) fail();
        if (q0 == 0 && q1 == 0) throw ParseError("zero denominator in '" + std::string(s_) + "'");
        return {p0, p1, q0, q1};
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    [[noreturn]] void fail() const { throw ParseError("not a linear fraction: '" + std::string(s_) + "'"); }

    void skip() {
        while (i_ < s_.size() && s_[i_] == ' ') ++i_;
    }

    bool variable() {
        if (s_.compare(i_, 2, "\xCE\xBB") == 0) {
            i_ += 2;
            return true;
        }
        if (i_ < s_.size() && s_[i_] == 'l') {
            ++i_;
            return true;
        }
        return false;
    }

    std::pair<Rational, Rational> operand() {
        skip();
        if (i_ < s_.size() && s_[i_] == '(') {
            ++i_;
            auto r = affine(true);
            skip();
            if (i_ >= s_.size() || s_[i_] != ')') fail();
            ++i_;
            return r;
        }
        return affine(false);
    }

    // inside parentheses a coefficient may itself be p/q
    std::pair<Rational, Rational> affine(bool nested) {
        Rational c0 = 0, c1 = 0;
        bool first = true;
        for (;;) {
            skip();
            int sign = 1;
            if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
                sign = s_[i_] == '-' ? -1 : 1;
                ++i_;
                skip();
            } else if (!first) {
                break;
            }
            std::size_t start = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (nested && i_ < s_.size() && s_[i_] == '/' && i_ > start) {
                ++i_;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            }
            Rational coef = 1;
            bool has_num = i_ > start;
            if (has_num) coef = parse_rational(s_.substr(start, i_ - start));
            bool var = variable();
            if (!has_num && !var) fail();
            (var ? c1 : c0) += sign * coef;
            first = false;
        }
        return {c0, c1};
    }
};

}  // namespace

LinearFraction parse_fraction(std::string_view text) { return FractionParser(text).run(); }

Poly cross(const LinearFraction& f, const LinearFraction& g) {
    return f.numerator() * g.denominator() - g.numerator() * f.denominator();
}

}  // namespace zd
