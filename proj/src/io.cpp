#include "zdelta/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "zdelta/errors.hpp"

namespace zd {

std::string schema::escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

namespace {

using schema::escape_pointer;

// walks already-validated JSON text and records the line of every value
class LineScanner {
public:
    LineScanner(const std::string& s, std::map<std::string, int>& out) : s_(s), out_(out) {}
    void run() { value(""); }

private:
    void ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            if (s_[i_] == '\n') ++line_;
            ++i_;
        }
    }
    void value(const std::string& ptr) {
        ws();
        out_[ptr] = line_;
        if (i_ >= s_.size()) return;
        char c = s_[i_];
        if (c == '{') object(ptr);
        else if (c == '[') array(ptr);
        else if (c == '"') string();
        else
            while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != ']' && s_[i_] != '}' &&
                   !std::isspace(static_cast<unsigned char>(s_[i_])))
                ++i_;
    }
    std::string string() {
        std::string out;
        ++i_;
        while (i_ < s_.size() && s_[i_] != '"') {
            if (s_[i_] == '\\') {
                ++i_;
                if (i_ < s_.size()) out += s_[i_];
            } else {
                out += s_[i_];
            }
            ++i_;
        }
        ++i_;
        return out;
    }
    void object(const std::string& ptr) {
        ++i_;
        ws();
        if (s_[i_] == '}') {
            ++i_;
            return;
        }
        while (i_ < s_.size()) {
            ws();
            std::string key = string();
            ws();
            ++i_;  // ':'
            value(ptr + "/" + escape_pointer(key));
            ws();
            if (s_[i_++] == '}') return;
        }
    }
    void array(const std::string& ptr) {
        ++i_;
        ws();
        if (s_[i_] == ']') {
            ++i_;
            return;
        }
        for (int k = 0; i_ < s_.size(); ++k) {
            value(ptr + "/" + std::to_string(k));
            ws();
            if (s_[i_++] == ']') return;
        }
    }

    const std::string& s_;
    std::map<std::string, int>& out_;
    std::size_t i_ = 0;
    int line_ = 1;
};

}  // namespace

namespace schema {

std::string str(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_string()) doc.fail(ptr, "expected a string");
    return j.get<std::string>();
}

const json& field(const Document& doc, const json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.is_object()) doc.fail(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) doc.fail(ptr, "missing field '" + key + "'");
    return *it;
}

const json* opt_field(const Document& doc, const json& obj, const std::string& ptr, const std::string& key) {
    if (!obj.is_object()) doc.fail(ptr, "expected an object");
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

Rational rat(const Document& doc, const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) doc.fail(ptr, "expected a rational as a string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        doc.fail(ptr, e.what());
    }
}

Vector rat_vec(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_array()) doc.fail(ptr, "expected an array of rationals");
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat(doc, j[i], ptr + "/" + std::to_string(i)));
    return v;
}

std::vector<std::string> str_vec(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_array()) doc.fail(ptr, "expected an array of strings");
    std::vector<std::string> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(str(doc, j[i], ptr + "/" + std::to_string(i)));
    return v;
}

std::vector<NamedClass> named_classes(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_array()) doc.fail(ptr, "expected an array of {name, class}");
    std::vector<NamedClass> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string p = ptr + "/" + std::to_string(i);
        out.push_back({str(doc, field(doc, j[i], p, "name"), p + "/name"),
                       DivisorClass(rat_vec(doc, field(doc, j[i], p, "class"), p + "/class"))});
    }
    return out;
}

std::map<std::string, Rational> rat_map(const Document& doc, const json& j, const std::string& ptr) {
    if (!j.is_object()) doc.fail(ptr, "expected an object of curve -> rational");
    std::map<std::string, Rational> out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = rat(doc, it.value(), ptr + "/" + escape_pointer(it.key()));
    return out;
}

}  // namespace schema

using namespace schema;

Document Document::from_string(const std::string& text, const std::string& origin) {
    Document d;
    d.origin_ = origin;
    try {
        d.root_ = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        int line = 1, col = 1;
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        auto pos = what.find("syntax error");
        throw ParseError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         (pos == std::string::npos ? what : what.substr(pos)));
    }
    LineScanner(text, d.lines_).run();
    return d;
}

Document Document::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    Document d = from_string(ss.str(), path.string());
    d.path_ = path;
    return d;
}

std::string Document::where(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
        auto it = lines_.find(p);
        if (it != lines_.end()) return origin_ + ":" + std::to_string(it->second);
        if (p.empty()) return origin_;
        p = p.substr(0, p.rfind('/'));
    }
}

void Document::fail(const std::string& pointer, const std::string& msg) const {
    throw ValidationError(where(pointer) + ": " + (pointer.empty() ? std::string("/") : pointer) + ": " + msg);
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const DivisorClass& d) {
    json a = json::array();
    for (const auto& c : d.coords) a.push_back(to_string(c));
    return a;
}

json to_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

json to_json(const LinearFraction& f) {
    return json{{"num", {to_string(f.p0()), to_string(f.p1())}},
                {"den", {to_string(f.q0()), to_string(f.q1())}},
                {"text", f.str()}};
}

json to_json(const SurfaceModel& m) {
    json j;
    j["name"] = m.name;
    if (!m.description.empty()) j["description"] = m.description;
    j["basis"] = m.basis_names;
    json form = json::array();
    for (const auto& row : m.form) form.push_back(to_json(DivisorClass(row)));
    j["form"] = form;
    auto named = [](const std::vector<NamedClass>& v) {
        json a = json::array();
        for (const auto& n : v) a.push_back(json{{"name", n.name}, {"class", to_json(n.cls)}});
        return a;
    };
    j["generators"] = named(m.generators);
    if (!m.curves.empty()) j["curves"] = named(m.curves);
    j["polarization"] = to_json(m.polarization);
    if (m.boundary) j["boundary"] = to_json(*m.boundary);
    if (m.flag) {
        j["flag"] = json{{"name", m.flag->name},
                         {"class", to_json(m.flag->cls)},
                         {"c_K", to_string(m.flag->c_K)},
                         {"c_C", to_string(m.flag->c_C)}};
        json pts = json::array();
        for (const auto& p : m.marked_points) {
            json lm = json::object();
            for (const auto& [c, v] : p.local_mults) lm[c] = to_string(v);
            pts.push_back(json{{"name", p.name},
                               {"sing_order", p.sing_order},
                               {"local_mults", lm},
                               {"boundary_mult", to_string(p.boundary_mult)}});
        }
        j["marked_points"] = pts;
        json rem = json::object();
        for (const auto& [c, v] : m.unmarked_remainder) rem[c] = to_string(v);
        j["unmarked_remainder"] = rem;
        if (m.boundary_remainder) j["boundary_remainder"] = to_string(*m.boundary_remainder);
    }
    return j;
}

json to_json(const ZariskiPiece& p) {
    json n = json::object();
    for (const auto& [c, v] : p.N) n[c] = {to_string(v.first), to_string(v.second)};
    return json{{"t_lo", to_string(p.t_lo)}, {"t_hi", to_string(p.t_hi)}, {"P0", to_json(p.P0)},
                {"P1", to_json(p.P1)},      {"N", n},                     {"vol", to_json(p.vol)}};
}

json to_json(const std::vector<ZariskiPiece>& pieces) {
    json a = json::array();
    for (const auto& p : pieces) a.push_back(to_json(p));
    return a;
}

json to_json(const PiecewisePoly& f) {
    json a = json::array();
    for (std::size_t i = 0; i < f.size(); ++i)
        a.push_back(json{{"lo", to_string(f.breaks[i])}, {"hi", to_string(f.breaks[i + 1])}, {"poly", to_json(f.pieces[i])}});
    return json{{"open_lo", f.open_lo}, {"pieces", a}};
}

json to_json(const PiecewiseFraction& f) {
    json a = json::array();
    for (std::size_t i = 0; i < f.size(); ++i)
        a.push_back(json{{"lo", to_string(f.breaks[i])},
                         {"hi", to_string(f.breaks[i + 1])},
                         {"fn", to_json(f.pieces[i])},
                         {"source", f.label(i)}});
    return json{{"open_lo", f.open_lo}, {"pieces", a}};
}

json to_json(const FlagResult& r) {
    json pts = json::array();
    for (const auto& p : r.points) pts.push_back(json{{"name", p.name}, {"S_Wq", to_string(p.s_wq)}, {"A", to_json(p.A)}});
    json j{{"model", r.model}, {"flag", r.flag}};
    j["lambda"] = r.lambda ? json(to_string(*r.lambda)) : json(nullptr);
    j["polarization_sq"] = to_string(r.polarization_sq);
    j["tau"] = to_string(r.tau);
    j["S"] = to_string(r.s_value);
    j["A_flag"] = to_json(r.A_flag);
    j["pieces"] = to_json(r.pieces);
    j["vol"] = to_json(r.vol);
    j["points"] = pts;
    return j;
}

json to_json(const DeltaAssembly& a) {
    json ex = json::array();
    for (const auto& e : a.exact)
        ex.push_back(json{{"lo", to_string(e.lo)}, {"hi", to_string(e.hi)}, {"fn", to_json(e.fn)}, {"source", e.label}});
    return json{{"lower", to_json(a.lower)}, {"upper", a.upper ? to_json(*a.upper) : json(nullptr)}, {"exact", ex}};
}

json to_json(const Decomposition& d) {
    json n = json::object();
    for (const auto& [c, v] : d.N) n[c] = to_string(v);
    return json{{"P", to_json(d.P)}, {"N", n}};
}

// plain readers for result documents (no line tracking needed)

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError("expected a rational string");
    return parse_rational(j.get<std::string>());
}

namespace {

Vector vec_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    Vector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

}  // namespace

Poly poly_from_json(const json& j) {
    if (j.is_string()) return parse_poly(j.get<std::string>());
    return Poly(vec_from_json(j));
}

LinearFraction fraction_from_json(const json& j) {
    if (j.is_array()) {
        Vector v = vec_from_json(j);
        if (v.size() != 4) throw ParseError("linear fraction array needs [p0, p1, q0, q1]");
        return {v[0], v[1], v[2], v[3]};
    }
    if (j.is_string()) return parse_fraction(j.get<std::string>());
    Vector n = vec_from_json(j.at("num")), d = vec_from_json(j.at("den"));
    if (n.size() != 2 || d.size() != 2) throw ParseError("linear fraction needs two numerator and denominator terms");
    return {n[0], n[1], d[0], d[1]};
}

ZariskiPiece piece_from_json(const json& j) {
    ZariskiPiece p;
    p.t_lo = rational_from_json(j.at("t_lo"));
    p.t_hi = rational_from_json(j.at("t_hi"));
    p.P0 = DivisorClass(vec_from_json(j.at("P0")));
    p.P1 = DivisorClass(vec_from_json(j.at("P1")));
    for (auto it = j.at("N").begin(); it != j.at("N").end(); ++it) {
        Vector v = vec_from_json(it.value());
        p.N[it.key()] = {v.at(0), v.at(1)};
    }
    p.vol = poly_from_json(j.at("vol"));
    return p;
}

PiecewisePoly piecewise_poly_from_json(const json& j) {
    std::vector<Rational> b;
    std::vector<Poly> p;
    for (const auto& pc : j.at("pieces")) {
        if (b.empty()) b.push_back(rational_from_json(pc.at("lo")));
        b.push_back(rational_from_json(pc.at("hi")));
        p.push_back(poly_from_json(pc.at("poly")));
    }
    return {std::move(b), std::move(p), {}, j.value("open_lo", false)};
}

PiecewiseFraction piecewise_fraction_from_json(const json& j) {
    std::vector<Rational> b;
    std::vector<LinearFraction> p;
    std::vector<std::string> l;
    for (const auto& pc : j.at("pieces")) {
        if (b.empty()) b.push_back(rational_from_json(pc.at("lo")));
        b.push_back(rational_from_json(pc.at("hi")));
        p.push_back(fraction_from_json(pc.at("fn")));
        l.push_back(pc.value("source", ""));
    }
    return {std::move(b), std::move(p), std::move(l), j.value("open_lo", false)};
}

FlagResult flag_result_from_json(const json& j) {
    FlagResult r;
    r.model = j.at("model").get<std::string>();
    r.flag = j.at("flag").get<std::string>();
    if (!j.at("lambda").is_null()) r.lambda = rational_from_json(j.at("lambda"));
    r.polarization_sq = rational_from_json(j.at("polarization_sq"));
    r.tau = rational_from_json(j.at("tau"));
    r.s_value = rational_from_json(j.at("S"));
    r.A_flag = fraction_from_json(j.at("A_flag"));
    for (const auto& p : j.at("pieces")) r.pieces.push_back(piece_from_json(p));
    r.vol = piecewise_poly_from_json(j.at("vol"));
    for (const auto& p : j.at("points"))
        r.points.push_back({p.at("name").get<std::string>(), rational_from_json(p.at("S_Wq")), fraction_from_json(p.at("A"))});
    return r;
}

DeltaAssembly assembly_from_json(const json& j) {
    DeltaAssembly a{piecewise_fraction_from_json(j.at("lower")), std::nullopt, {}};
    if (!j.at("upper").is_null()) a.upper = piecewise_fraction_from_json(j.at("upper"));
    for (const auto& e : j.at("exact"))
        a.exact.push_back({rational_from_json(e.at("lo")), rational_from_json(e.at("hi")), fraction_from_json(e.at("fn")),
                           e.value("source", "")});
    return a;
}

Decomposition decomposition_from_json(const json& j) {
    Decomposition d{DivisorClass(vec_from_json(j.at("P"))), {}};
    for (auto it = j.at("N").begin(); it != j.at("N").end(); ++it) d.N[it.key()] = rational_from_json(it.value());
    return d;
}

SurfaceModel model_from_document(const Document& doc) {
    const json& r = doc.root();
    if (!r.is_object()) doc.fail("", "a surface config must be a JSON object");
    SurfaceModel m;
    if (auto* n = opt_field(doc, r, "", "name")) m.name = str(doc, *n, "/name");
    else m.name = doc.path().stem().string();
    if (auto* d = opt_field(doc, r, "", "description")) m.description = str(doc, *d, "/description");
    m.basis_names = str_vec(doc, field(doc, r, "", "basis"), "/basis");
    const json& form = field(doc, r, "", "form");
    if (!form.is_array()) doc.fail("/form", "expected an array of rows");
    for (std::size_t i = 0; i < form.size(); ++i) m.form.push_back(rat_vec(doc, form[i], "/form/" + std::to_string(i)));
    m.generators = named_classes(doc, field(doc, r, "", "generators"), "/generators");
    if (auto* c = opt_field(doc, r, "", "curves")) m.curves = named_classes(doc, *c, "/curves");
    m.polarization = DivisorClass(rat_vec(doc, field(doc, r, "", "polarization"), "/polarization"));
    if (auto* b = opt_field(doc, r, "", "boundary")) m.boundary = DivisorClass(rat_vec(doc, *b, "/boundary"));
    if (auto* f = opt_field(doc, r, "", "flag")) {
        Flag fl;
        fl.name = str(doc, field(doc, *f, "/flag", "name"), "/flag/name");
        fl.cls = DivisorClass(rat_vec(doc, field(doc, *f, "/flag", "class"), "/flag/class"));
        if (auto* k = opt_field(doc, *f, "/flag", "c_K")) fl.c_K = rat(doc, *k, "/flag/c_K");
        if (auto* c = opt_field(doc, *f, "/flag", "c_C")) fl.c_C = rat(doc, *c, "/flag/c_C");
        m.flag = fl;
    }
    if (auto* pts = opt_field(doc, r, "", "marked_points")) {
        if (!pts->is_array()) doc.fail("/marked_points", "expected an array");
        for (std::size_t i = 0; i < pts->size(); ++i) {
            std::string p = "/marked_points/" + std::to_string(i);
            const json& pj = (*pts)[i];
            MarkedPoint q;
            q.name = str(doc, field(doc, pj, p, "name"), p + "/name");
            if (auto* s = opt_field(doc, pj, p, "sing_order")) {
                if (!s->is_number_integer()) doc.fail(p + "/sing_order", "expected a positive integer");
                q.sing_order = s->get<int>();
            }
            if (auto* lm = opt_field(doc, pj, p, "local_mults")) q.local_mults = rat_map(doc, *lm, p + "/local_mults");
            if (auto* bm = opt_field(doc, pj, p, "boundary_mult")) q.boundary_mult = rat(doc, *bm, p + "/boundary_mult");
            m.marked_points.push_back(q);
        }
    }
    if (auto* u = opt_field(doc, r, "", "unmarked_remainder")) m.unmarked_remainder = rat_map(doc, *u, "/unmarked_remainder");
    if (auto* b = opt_field(doc, r, "", "boundary_remainder")) m.boundary_remainder = rat(doc, *b, "/boundary_remainder");

    ValidationReport rep = validate(m);
    if (!rep.ok()) {
        std::string msg = doc.where("") + ": model " + m.name + " is invalid";
        for (const auto& v : rep.violations) msg += "\n  " + v;
        throw ValidationError(msg);
    }
    return m;
}

SurfaceModel load_model(const std::filesystem::path& path) { return model_from_document(Document::from_file(path)); }

BlowupScript script_from_document(const Document& doc, const std::filesystem::path& surfaces_dir) {
    const json& r = doc.root();
    if (!r.is_object()) doc.fail("", "a blowup script must be a JSON object");
    BlowupScript s;
    s.name = str(doc, field(doc, r, "", "name"), "/name");
    if (auto* d = opt_field(doc, r, "", "description")) s.description = str(doc, *d, "/description");
    std::filesystem::path base = str(doc, field(doc, r, "", "base"), "/base");
    std::filesystem::path dir = surfaces_dir.empty() ? doc.path().parent_path() : surfaces_dir;
    s.base = load_model(base.is_absolute() ? base : dir / base);
    if (auto* b = opt_field(doc, r, "", "boundary")) s.boundary_name = str(doc, *b, "/boundary");
    if (auto* k = opt_field(doc, r, "", "canonical")) {
        s.canonical = DivisorClass(rat_vec(doc, *k, "/canonical"));
        if (s.canonical->size() != s.base.rank()) doc.fail("/canonical", "length differs from the base rank");
    }
    const json& steps = field(doc, r, "", "steps");
    if (!steps.is_array() || steps.empty()) doc.fail("/steps", "expected a non-empty array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::string p = "/steps/" + std::to_string(i);
        BlowupStep st;
        std::string centre = str(doc, field(doc, steps[i], p, "center"), p + "/center");
        if (centre == "infinitely_near") {
            st.infinitely_near = true;
            st.along = str(doc, field(doc, steps[i], p, "along"), p + "/along");
        } else if (centre != "point") {
            doc.fail(p + "/center", "center must be \"point\" or \"infinitely_near\"");
        }
        const json& inc = field(doc, steps[i], p, "incident");
        if (!inc.is_object()) doc.fail(p + "/incident", "expected an object of curve -> multiplicity");
        for (auto it = inc.begin(); it != inc.end(); ++it) {
            if (!it.value().is_number_integer()) doc.fail(p + "/incident/" + it.key(), "expected an integer multiplicity");
            st.incident[it.key()] = it.value().get<int>();
        }
        s.steps.push_back(st);
    }
    s.exceptional_names = str_vec(doc, field(doc, r, "", "exceptionals"), "/exceptionals");
    if (s.exceptional_names.size() != s.steps.size()) doc.fail("/exceptionals", "need one name per step");
    s.contraction.chain = str_vec(doc, field(doc, r, "", "contract"), "/contract");
    s.contraction.survivors = str_vec(doc, field(doc, r, "", "survivors"), "/survivors");
    s.flag = str(doc, field(doc, r, "", "flag"), "/flag");
    if (auto* g = opt_field(doc, r, "", "generators")) s.generators = str_vec(doc, *g, "/generators");
    if (auto* c = opt_field(doc, r, "", "compare")) s.compare = str(doc, *c, "/compare");
    return s;
}

BlowupScript load_script(const std::filesystem::path& path, const std::filesystem::path& surfaces_dir) {
    return script_from_document(Document::from_file(path), surfaces_dir);
}

}  // namespace zd
