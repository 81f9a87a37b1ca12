#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zdelta/linear_fraction.hpp"
#include "zdelta/surface.hpp"

namespace zd {

struct BlowupStep {
    bool infinitely_near = false;  // centre = previous exceptional cap strict transform of `along`
    std::string along;
    std::map<std::string, int> incident;  // curve -> multiplicity at the centre
};

struct ContractionSpec {
    std::vector<std::string> chain;
    std::vector<std::string> survivors;
};

struct BlowupScript {
    std::string name;
    std::string description;
    SurfaceModel base;
    std::string boundary_name = "C";
    std::optional<DivisorClass> canonical;  // K of the base
    std::vector<BlowupStep> steps;
    std::vector<std::string> exceptional_names;
    ContractionSpec contraction;
    std::string flag;
    std::optional<std::vector<std::string>> generators;
    std::string compare;  // hand-written config to check against
};

struct BlownUpSurface {
    SurfaceModel model;  // T_m, curves hold strict transforms
    std::size_t base_rank = 0;
    std::string boundary_name;
    std::vector<std::string> exceptionals;
    std::vector<BlowupStep> steps;
    DivisorClass k_relative;                     // K_T - pi^* K_S
    std::optional<DivisorClass> canonical;       // K_T
    std::map<std::string, DivisorClass> pullback;  // total transforms of base curves
    std::map<std::string, DivisorClass> strict;    // strict transforms, exceptionals included

    const DivisorClass& strict_class(const std::string& name) const;
};

BlownUpSurface run_blowup_script(const BlowupScript& script);

struct FlagDiscrepancy {
    Rational c_K;
    Rational c_C;
    LinearFraction A;
};

struct ContractedSurface {
    SurfaceModel model;
    std::optional<DivisorClass> canonical;        // K on the contracted surface
    std::map<std::string, DivisorClass> star;     // pullbacks of survivors to T_m
    std::map<std::string, Rational> pullback_coeff;  // sigma^* X = X^ + coeff G^
};

ContractedSurface contract_chain(const BlownUpSurface& t, const ContractionSpec& spec, const std::string& flag,
                                 const std::optional<std::vector<std::string>>& generators = std::nullopt);

// coefficients of the flag in K_S^ - sigma^* K_S and sigma^* C - C^
FlagDiscrepancy flag_discrepancy(const BlownUpSurface& t, const ContractionSpec& spec, const std::string& flag);

ContractedSurface derive(const BlowupScript& script);

// differences in intersection data between a derived and a declared model
std::vector<std::string> compare_models(const SurfaceModel& derived, const SurfaceModel& declared);

}  // namespace zd
