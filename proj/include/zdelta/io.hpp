#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "zdelta/blowup.hpp"
#include "zdelta/delta.hpp"
#include "zdelta/invariants.hpp"
#include "zdelta/surface.hpp"

namespace zd {

using json = nlohmann::ordered_json;

// parsed document that remembers the source line of every value
class Document {
public:
    static Document from_file(const std::filesystem::path& path);
    static Document from_string(const std::string& text, const std::string& origin = "<string>");

    const json& root() const { return root_; }
    const std::filesystem::path& path() const { return path_; }
    std::string origin() const { return origin_; }
    // "file:line" for a JSON pointer, falling back to the nearest ancestor
    std::string where(const std::string& pointer) const;
    [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const;

private:
    json root_;
    std::filesystem::path path_;
    std::string origin_;
    std::map<std::string, int> lines_;
};

// typed field access that reports "file:line: /pointer: msg" on mismatch
namespace schema {
std::string escape_pointer(const std::string& key);
std::string str(const Document& doc, const json& j, const std::string& ptr);
const json& field(const Document& doc, const json& obj, const std::string& ptr, const std::string& key);
const json* opt_field(const Document& doc, const json& obj, const std::string& ptr, const std::string& key);
Rational rat(const Document& doc, const json& j, const std::string& ptr);
Vector rat_vec(const Document& doc, const json& j, const std::string& ptr);
std::vector<std::string> str_vec(const Document& doc, const json& j, const std::string& ptr);
std::vector<NamedClass> named_classes(const Document& doc, const json& j, const std::string& ptr);
std::map<std::string, Rational> rat_map(const Document& doc, const json& j, const std::string& ptr);
}  // namespace schema

json to_json(const Rational& q);
json to_json(const DivisorClass& d);
json to_json(const Poly& p);
json to_json(const LinearFraction& f);
json to_json(const SurfaceModel& m);
json to_json(const ZariskiPiece& p);
json to_json(const std::vector<ZariskiPiece>& pieces);
json to_json(const PiecewisePoly& f);
json to_json(const PiecewiseFraction& f);
json to_json(const FlagResult& r);
json to_json(const DeltaAssembly& a);
json to_json(const Decomposition& d);

Rational rational_from_json(const json& j);
Poly poly_from_json(const json& j);
LinearFraction fraction_from_json(const json& j);
ZariskiPiece piece_from_json(const json& j);
PiecewisePoly piecewise_poly_from_json(const json& j);
PiecewiseFraction piecewise_fraction_from_json(const json& j);
FlagResult flag_result_from_json(const json& j);
DeltaAssembly assembly_from_json(const json& j);
Decomposition decomposition_from_json(const json& j);

SurfaceModel model_from_document(const Document& doc);
SurfaceModel load_model(const std::filesystem::path& path);

// base paths resolve against `surfaces_dir`
BlowupScript script_from_document(const Document& doc, const std::filesystem::path& surfaces_dir);
BlowupScript load_script(const std::filesystem::path& path, const std::filesystem::path& surfaces_dir);

}  // namespace zd
