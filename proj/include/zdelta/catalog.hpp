#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "zdelta/delta.hpp"
#include "zdelta/invariants.hpp"
#include "zdelta/surface.hpp"

namespace zd {

// $ZDELTA_DATA if set, else the source tree's data/
std::filesystem::path default_data_dir();

struct CaseSpec {
    std::string id;
    std::string name;
    std::string anchor;
    std::vector<std::string> lower_az;  // configs whose AZ bounds give the lower bound
    std::vector<std::string> upper;     // configs whose flag bounds give the upper bound
};

struct ScenarioSpec {
    std::string name;
    std::vector<std::string> cases;  // "@thm" pulls in every case of that theorem
};

struct TheoremSpec {
    std::string id;
    std::string anchor;
    std::vector<ScenarioSpec> scenarios;
};

// bundled configs, cases and theorems with cached flag computations
class Catalog {
public:
    explicit Catalog(std::filesystem::path data_dir = default_data_dir());

    const std::filesystem::path& data_dir() const { return dir_; }
    std::filesystem::path surfaces_dir() const { return dir_ / "surfaces"; }
    std::filesystem::path scripts_dir() const { return dir_ / "scripts"; }
    std::filesystem::path golden_dir() const { return dir_ / "golden"; }

    std::vector<std::string> model_names() const;
    std::vector<std::string> script_names() const;
    std::vector<std::string> golden_names() const;

    const SurfaceModel& model(const std::string& stem);
    const FlagResult& flag(const std::string& stem);

    const std::vector<CaseSpec>& cases() const { return cases_; }
    const std::vector<TheoremSpec>& theorems() const { return theorems_; }
    const CaseSpec& case_spec(const std::string& id) const;
    const TheoremSpec& theorem_spec(const std::string& id) const;

    DeltaCase delta_case(const std::string& id);
    std::vector<std::string> scenario_cases(const TheoremSpec& t, const ScenarioSpec& s) const;
    std::vector<DeltaAssembly> theorem_scenarios(const std::string& id);
    const DeltaAssembly& theorem(const std::string& id);

private:
    std::filesystem::path dir_;
    std::vector<CaseSpec> cases_;
    std::vector<TheoremSpec> theorems_;
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const SurfaceModel>> models_;
    std::map<std::string, std::shared_ptr<const FlagResult>> flags_;
    std::map<std::string, std::shared_ptr<const DeltaAssembly>> theorem_cache_;
};

}  // namespace zd
