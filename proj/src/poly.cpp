#include "zdelta/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "zdelta/errors.hpp"

namespace zd {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }
Poly Poly::affine(const Rational& c0, const Rational& c1) { return Poly({c0, c1}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::operator()(const Rational& t) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& c : r) c *= s;
    return Poly(std::move(r));
}

Poly Poly::antiderivative() const {
    std::vector<Rational> r(c_.size() + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
    return Poly(std::move(r));
}

Rational Poly::integrate(const Rational& a, const Rational& b) const {
    Poly F = antiderivative();
    return F(b) - F(a);
}

std::string Poly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Rational a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || a != 1) os << to_string(a);
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

namespace {

bool rational_sqrt(const Rational& x, Rational& out) {
    if (x < 0) return false;
    Integer n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer rn = sqrt(n), rd = sqrt(d);
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
}

}  // namespace

RootSet real_roots(const Poly& p) {
    RootSet rs;
    if (p.degree() == 1) {
        rs.rational.push_back(-p.coeff(0) / p.coeff(1));
    } else if (p.degree() == 2) {
        Rational a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        Rational disc = b * b - 4 * a * c;
        Rational s;
        if (disc < 0) return rs;
        if (rational_sqrt(disc, s)) {
            Rational r1 = (-b - s) / (2 * a), r2 = (-b + s) / (2 * a);
            rs.rational.push_back(r1);
            if (r2 != r1) rs.rational.push_back(r2);
            std::sort(rs.rational.begin(), rs.rational.end());
        } else {
            rs.has_irrational = true;
        }
    }
    return rs;
}

int count_roots_open(const Poly& p, const Rational& a, const Rational& b) {
    RootSet rs = real_roots(p);
    if (!rs.has_irrational) {
        int n = 0;
        for (const auto& r : rs.rational)
            if (r > a && r < b) ++n;
        return n;
    }
    int sa = sgn(p(a)), sb = sgn(p(b));
    if (sa != sb) return 1;
    Rational v = -p.coeff(1) / (2 * p.coeff(2));
    if (v > a && v < b && sgn(p(v)) != sa) return 2;
    return 0;
}

Poly parse_poly(std::string_view text, char var) {
    auto fail = [&]() -> Poly { throw ParseError("not a polynomial: '" + std::string(text) + "'"); };
    std::vector<Rational> c;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && text[i] == ' ') ++i;
    };
    bool first = true;
    skip();
    if (i == text.size()) return fail();
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            return fail();
        }
        std::size_t start = i;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
        Rational coef = 1;
        bool has_num = i > start;
        if (has_num) coef = parse_rational(text.substr(start, i - start));
        std::size_t deg = 0;
        if (i < text.size() && text[i] == var) {
            ++i;
            deg = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                std::size_t ds = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (ds == i) return fail();
                deg = std::stoul(std::string(text.substr(ds, i - ds)));
            }
        } else if (!has_num) {
            return fail();
        }
        if (c.size() <= deg) c.resize(deg + 1);
        c[deg] += sign * coef;
        first = false;
        skip();
    }
    return Poly(std::move(c));
}

}  // namespace zd
