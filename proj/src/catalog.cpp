#include "zdelta/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "zdelta/errors.hpp"
#include "zdelta/io.hpp"

namespace zd {

using namespace schema;

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("ZDELTA_DATA"); env && *env) return env;
    return ZDELTA_DATA_DIR;
}

namespace {

std::vector<std::string> stems(const std::filesystem::path& dir) {
    std::vector<std::string> out;
    if (!std::filesystem::is_directory(dir)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Catalog::Catalog(std::filesystem::path data_dir) : dir_(std::move(data_dir)) {
    if (!std::filesystem::is_directory(dir_)) throw ReferenceError("data directory not found: " + dir_.string());
    auto path = dir_ / "cases.json";
    if (!std::filesystem::exists(path)) return;
    Document doc = Document::from_file(path);
    const json& root = doc.root();

    const json& cs = field(doc, root, "", "cases");
    if (!cs.is_array()) doc.fail("/cases", "expected an array");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        std::string p = "/cases/" + std::to_string(i);
        CaseSpec c;
        c.id = str(doc, field(doc, cs[i], p, "id"), p + "/id");
        if (!ids.insert(c.id).second) doc.fail(p + "/id", "duplicate case id '" + c.id + "'");
        if (auto* n = opt_field(doc, cs[i], p, "name")) c.name = str(doc, *n, p + "/name");
        if (auto* a = opt_field(doc, cs[i], p, "anchor")) c.anchor = str(doc, *a, p + "/anchor");
        c.lower_az = str_vec(doc, field(doc, cs[i], p, "lower_az"), p + "/lower_az");
        if (c.lower_az.empty()) doc.fail(p + "/lower_az", "a case needs at least one lower-bound config");
        if (auto* u = opt_field(doc, cs[i], p, "upper")) c.upper = str_vec(doc, *u, p + "/upper");
        for (const auto& name : c.lower_az)
            if (!std::filesystem::exists(surfaces_dir() / (name + ".json")))
                doc.fail(p + "/lower_az", "unknown config '" + name + "'");
        for (const auto& name : c.upper)
            if (!std::filesystem::exists(surfaces_dir() / (name + ".json")))
                doc.fail(p + "/upper", "unknown config '" + name + "'");
        cases_.push_back(std::move(c));
    }

    const json& ts = field(doc, root, "", "theorems");
    if (!ts.is_array()) doc.fail("/theorems", "expected an array");
    std::set<std::string> tids;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string p = "/theorems/" + std::to_string(i);
        TheoremSpec t;
        t.id = str(doc, field(doc, ts[i], p, "id"), p + "/id");
        if (!tids.insert(t.id).second) doc.fail(p + "/id", "duplicate theorem id '" + t.id + "'");
        if (auto* a = opt_field(doc, ts[i], p, "anchor")) t.anchor = str(doc, *a, p + "/anchor");
        const json& sc = field(doc, ts[i], p, "scenarios");
        if (!sc.is_array() || sc.empty()) doc.fail(p + "/scenarios", "expected a non-empty array");
        for (std::size_t k = 0; k < sc.size(); ++k) {
            std::string q = p + "/scenarios/" + std::to_string(k);
            ScenarioSpec s;
            s.name = str(doc, field(doc, sc[k], q, "name"), q + "/name");
            s.cases = str_vec(doc, field(doc, sc[k], q, "cases"), q + "/cases");
            for (const auto& c : s.cases) {
                if (c.rfind('@', 0) == 0) {
                    if (!tids.count(c.substr(1)))
                        doc.fail(q + "/cases", "'" + c + "' must name an earlier theorem");
                } else if (!ids.count(c)) {
                    doc.fail(q + "/cases", "unknown case '" + c + "'");
                }
            }
            t.scenarios.push_back(std::move(s));
        }
        theorems_.push_back(std::move(t));
    }
}

std::vector<std::string> Catalog::model_names() const { return stems(surfaces_dir()); }
std::vector<std::string> Catalog::script_names() const { return stems(scripts_dir()); }
std::vector<std::string> Catalog::golden_names() const { return stems(golden_dir()); }

const SurfaceModel& Catalog::model(const std::string& stem) {
    {
        std::lock_guard lock(mu_);
        if (auto it = models_.find(stem); it != models_.end()) return *it->second;
    }
    auto path = surfaces_dir() / (stem + ".json");
    if (!std::filesystem::exists(path)) throw ReferenceError("unknown config '" + stem + "'");
    auto m = std::make_shared<const SurfaceModel>(load_model(path));
    std::lock_guard lock(mu_);
    return *models_.emplace(stem, m).first->second;
}

const FlagResult& Catalog::flag(const std::string& stem) {
    {
        std::lock_guard lock(mu_);
        if (auto it = flags_.find(stem); it != flags_.end()) return *it->second;
    }
    auto r = std::make_shared<const FlagResult>(compute_flag(model(stem)));
    std::lock_guard lock(mu_);
    return *flags_.emplace(stem, r).first->second;
}

const CaseSpec& Catalog::case_spec(const std::string& id) const {
    for (const auto& c : cases_)
        if (c.id == id) return c;
    throw ReferenceError("unknown case '" + id + "'");
}

const TheoremSpec& Catalog::theorem_spec(const std::string& id) const {
    for (const auto& t : theorems_)
        if (t.id == id) return t;
    throw ReferenceError("unknown theorem '" + id + "'");
}

DeltaCase Catalog::delta_case(const std::string& id) {
    const CaseSpec& spec = case_spec(id);
    DeltaCase c{spec.name.empty() ? spec.id : spec.name, spec.anchor, {}, {}};
    for (const auto& stem : spec.lower_az) {
        const FlagResult& fr = flag(stem);
        c.lower.push_back(flag_bound(fr));
        for (auto& b : point_bounds(fr)) c.lower.push_back(std::move(b));
    }
    for (const auto& stem : spec.upper) c.upper.push_back(flag_bound(flag(stem)));
    return c;
}

std::vector<std::string> Catalog::scenario_cases(const TheoremSpec& t, const ScenarioSpec& s) const {
    std::vector<std::string> out;
    for (const auto& c : s.cases) {
        if (c.rfind('@', 0) != 0) {
            out.push_back(c);
            continue;
        }
        const TheoremSpec& inner = theorem_spec(c.substr(1));
        if (inner.id == t.id || inner.scenarios.size() != 1)
            throw ReferenceError("'" + c + "' must name a single-scenario theorem");
        for (auto& x : scenario_cases(inner, inner.scenarios.front())) out.push_back(std::move(x));
    }
    return out;
}

std::vector<DeltaAssembly> Catalog::theorem_scenarios(const std::string& id) {
    const TheoremSpec& t = theorem_spec(id);
    std::vector<DeltaAssembly> out;
    for (const auto& s : t.scenarios) {
        std::vector<DeltaCase> cs;
        for (const auto& c : scenario_cases(t, s)) cs.push_back(delta_case(c));
        out.push_back(assemble_global(cs));
    }
    return out;
}

const DeltaAssembly& Catalog::theorem(const std::string& id) {
    {
        std::lock_guard lock(mu_);
        if (auto it = theorem_cache_.find(id); it != theorem_cache_.end()) return *it->second;
    }
    auto a = std::make_shared<const DeltaAssembly>(combine_scenarios(theorem_scenarios(id)));
    std::lock_guard lock(mu_);
    return *theorem_cache_.emplace(id, a).first->second;
}

}  // namespace zd
