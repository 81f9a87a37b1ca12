#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zdelta/linalg.hpp"
#include "zdelta/rational.hpp"

namespace zd {

struct DivisorClass {
    Vector coords;

    DivisorClass() = default;
    explicit DivisorClass(Vector c) : coords(std::move(c)) {}
    static DivisorClass zero(std::size_t n) { return DivisorClass(Vector(n)); }
    static DivisorClass unit(std::size_t n, std::size_t i);

    std::size_t size() const { return coords.size(); }
    bool is_zero() const;
    const Rational& operator[](std::size_t i) const { return coords[i]; }

    bool operator==(const DivisorClass& o) const { return coords == o.coords; }
    bool operator!=(const DivisorClass& o) const { return coords != o.coords; }
};

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator*(const Rational& s, const DivisorClass& a);

struct NamedClass {
    std::string name;
    DivisorClass cls;
};

struct MarkedPoint {
    std::string name;
    int sing_order = 1;
    std::map<std::string, Rational> local_mults;
    Rational boundary_mult = 0;

    bool operator==(const MarkedPoint&) const = default;
};

struct Flag {
    std::string name;
    DivisorClass cls;
    Rational c_K = 0;
    Rational c_C = 0;
};

struct SurfaceModel {
    std::string name;
    std::string description;
    std::vector<std::string> basis_names;
    Matrix form;
    std::vector<NamedClass> generators;
    std::vector<NamedClass> curves;  // named classes that are not generators
    DivisorClass polarization;
    std::optional<DivisorClass> boundary;
    std::optional<Flag> flag;
    std::vector<MarkedPoint> marked_points;
    std::map<std::string, Rational> unmarked_remainder;
    std::optional<Rational> boundary_remainder;

    std::size_t rank() const { return basis_names.size(); }
    // generators, then extra curves, then the flag
    const DivisorClass* find(const std::string& curve) const;
    const DivisorClass& curve(const std::string& name) const;
    const MarkedPoint& point(const std::string& name) const;
    const Flag& require_flag() const;
};

Rational intersect(const SurfaceModel& m, const DivisorClass& a, const DivisorClass& b);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate(const SurfaceModel& m);
// throws ValidationError listing every violation
void require_valid(const SurfaceModel& m);

}  // namespace zd
