#include "parch/spec_io.hpp"

#include <toml.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace parch {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::malformed_document: return "malformed_document";
        case ValidationCode::schema: return "schema";
        case ValidationCode::malformed_rational: return "malformed_rational";
        case ValidationCode::weight_out_of_range: return "weight_out_of_range";
        case ValidationCode::decreasing_weights: return "decreasing_weights";
        case ValidationCode::bad_riser_index: return "bad_riser_index";
        case ValidationCode::unknown_generator: return "unknown_generator";
    }
    return "unknown";
}

ValidationError::ValidationError(ValidationCode code, std::string path, const std::string& message)
    : std::invalid_argument((path.empty() ? std::string("document") : path) + ": " + std::string(to_string(code)) + ": " +
                            message),
      code_(code),
      path_(std::move(path)) {}

namespace {

[[noreturn]] void fail(ValidationCode code, const std::string& path, const std::string& message) {
    throw ValidationError(code, path, message);
}

std::string index_path(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

// Integers and "p/q" strings; binary floats are refused.
Rational parse_rational(const json& value, const std::string& path) {
    if (value.is_number_integer()) return Rational(value.get<long>());
    if (value.is_string()) {
        try {
            return Rational::parse(value.get<std::string>());
        } catch (const RationalFormatError& e) {
            fail(ValidationCode::malformed_rational, path, e.what());
        }
    }
    if (value.is_number_float()) fail(ValidationCode::malformed_rational, path, "floating-point numbers are not accepted; write \"p/q\"");
    fail(ValidationCode::malformed_rational, path, "expected a rational string \"p/q\"");
}

int parse_count(const json& value, const std::string& path) {
    if (!value.is_number_integer() || value.get<long>() < 0) fail(ValidationCode::schema, path, "expected a nonnegative integer");
    const long v = value.get<long>();
    if (v > 1000) fail(ValidationCode::schema, path, "value too large");
    return static_cast<int>(v);
}

const json& require_array(const json& doc, const char* key, const std::string& path) {
    if (!doc.contains(key)) fail(ValidationCode::schema, path, std::string("missing field '") + key + "'");
    const json& v = doc.at(key);
    if (!v.is_array()) fail(ValidationCode::schema, path, "expected an array");
    return v;
}

std::vector<Rational> parse_ladder(const json& ladder, const std::string& path) {
    if (!ladder.is_array() || ladder.empty()) fail(ValidationCode::schema, path, "a ladder is a nonempty list of riser weights");
    std::vector<Rational> weights;
    for (std::size_t r = 0; r < ladder.size(); ++r) {
        const std::string here = index_path(path, r);
        Rational w = parse_rational(ladder[r], here);
        if (w <= Rational(-1) || w > Rational(0)) fail(ValidationCode::weight_out_of_range, here, "weight " + w.to_string() + " is outside (-1, 0]");
        if (!weights.empty() && w < weights.back()) {
            fail(ValidationCode::decreasing_weights, here, "weight " + w.to_string() + " is below the previous weight " + weights.back().to_string());
        }
        weights.push_back(std::move(w));
    }
    return weights;
}

GradedClass parse_c1(const ModelPtr& model, const json& c1, const std::string& path) {
    if (!c1.is_object()) fail(ValidationCode::schema, path, "c1 is an object mapping generator names to rationals");
    GradedClass out(model);
    for (const auto& [name, value] : c1.items()) {
        const std::string here = path + "." + name;
        const auto g = model->generator_index(name);
        if (!g) fail(ValidationCode::unknown_generator, here, "'" + name + "' is not a declared generator");
        out += GradedClass::generator(model, *g, parse_rational(value, here));
    }
    return out;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"divisors", "truncation_degree", "extra_classes", "relations",
                                            "ladders",  "summands",          "name",          "description"};
    return keys;
}

}  // namespace

ParabolicBundle parse_spec(const json& doc) {
    if (!doc.is_object()) fail(ValidationCode::schema, "", "the document must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (!known_keys().contains(key)) fail(ValidationCode::schema, key, "unknown field");
    }
    if (!doc.contains("divisors")) fail(ValidationCode::schema, "", "missing field 'divisors'");
    const int n = parse_count(doc.at("divisors"), "divisors");
    const int d = doc.contains("truncation_degree") ? parse_count(doc.at("truncation_degree"), "truncation_degree")
                                                    : IntersectionModel::default_truncation(n);

    std::vector<std::string> extras;
    if (doc.contains("extra_classes")) {
        const json& list = doc.at("extra_classes");
        if (!list.is_array()) fail(ValidationCode::schema, "extra_classes", "expected an array of names");
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (!list[k].is_string()) fail(ValidationCode::schema, index_path("extra_classes", k), "expected a name");
            extras.push_back(list[k].get<std::string>());
        }
    }

    ModelPtr bare;
    try {
        bare = IntersectionModel::make(n, d, extras);
    } catch (const SchemaError& e) {
        fail(ValidationCode::schema, "", e.what());
    }

    std::vector<Monomial> relations;
    if (doc.contains("relations")) {
        const json& list = doc.at("relations");
        if (!list.is_array()) fail(ValidationCode::schema, "relations", "expected an array of monomials");
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string here = index_path("relations", k);
            if (!list[k].is_string()) fail(ValidationCode::schema, here, "expected a monomial string such as \"D1*D2\"");
            try {
                const Monomial m = bare->parse_monomial(list[k].get<std::string>());
                if (m.is_unit()) fail(ValidationCode::schema, here, "the unit monomial cannot vanish");
                relations.push_back(m);
            } catch (const SchemaError& e) {
                const std::string what = e.what();
                fail(what.find("unknown generator") != std::string::npos ? ValidationCode::unknown_generator : ValidationCode::schema,
                     here, what);
            }
        }
    }
    const ModelPtr model = IntersectionModel::make(n, d, extras, relations);

    std::vector<WeightFunction> weights;
    if (n > 0 || doc.contains("ladders")) {
        const json& ladders = require_array(doc, "ladders", "");
        if (static_cast<int>(ladders.size()) != n) {
            fail(ValidationCode::schema, "ladders", "expected " + std::to_string(n) + " ladders, got " + std::to_string(ladders.size()));
        }
        for (std::size_t i = 0; i < ladders.size(); ++i) weights.emplace_back(parse_ladder(ladders[i], index_path("ladders", i)));
    }

    std::vector<LineSummand> summands;
    if (doc.contains("summands")) {
        const json& list = require_array(doc, "summands", "");
        for (std::size_t j = 0; j < list.size(); ++j) {
            const std::string here = index_path("summands", j);
            const json& s = list[j];
            if (!s.is_object()) fail(ValidationCode::schema, here, "a summand is an object with 'c1' and 'jumps'");
            for (const auto& [key, value] : s.items()) {
                if (key != "c1" && key != "jumps") fail(ValidationCode::schema, here + "." + key, "unknown field");
            }
            GradedClass c1 = s.contains("c1") ? parse_c1(model, s.at("c1"), here + ".c1") : GradedClass(model);
            std::vector<Riser> jumps;
            if (n > 0 || s.contains("jumps")) {
                const json& js = require_array(s, "jumps", here);
                if (static_cast<int>(js.size()) != n) {
                    fail(ValidationCode::schema, here + ".jumps", "expected one jump per divisor (" + std::to_string(n) + ")");
                }
                for (std::size_t i = 0; i < js.size(); ++i) {
                    const std::string jp = index_path(here + ".jumps", i);
                    if (!js[i].is_number_integer()) fail(ValidationCode::bad_riser_index, jp, "a jump is a 0-based riser index");
                    const long r = js[i].get<long>();
                    const int risers = weights[i].ladder().riser_count();
                    if (r < 0 || r >= risers) {
                        fail(ValidationCode::bad_riser_index, jp,
                             "riser " + std::to_string(r) + " does not exist; ladder " + std::to_string(i) + " has " +
                                 std::to_string(risers) + " riser(s)");
                    }
                    jumps.push_back(static_cast<Riser>(r));
                }
            }
            summands.push_back({std::move(c1), std::move(jumps)});
        }
    }
    return ParabolicBundle(model, std::move(weights), std::move(summands));
}

namespace {

json toml_to_json(const toml::node& node) {
    if (const auto* t = node.as_table()) {
        json out = json::object();
        for (const auto& [key, value] : *t) out[std::string(key.str())] = toml_to_json(value);
        return out;
    }
    if (const auto* a = node.as_array()) {
        json out = json::array();
        for (const auto& value : *a) out.push_back(toml_to_json(value));
        return out;
    }
    if (const auto* s = node.as_string()) return s->get();
    if (const auto* i = node.as_integer()) return i->get();
    if (const auto* f = node.as_floating_point()) return f->get();
    if (const auto* b = node.as_boolean()) return b->get();
    return json();  // dates and times have no meaning here
}

}  // namespace

ParabolicBundle parse_spec_text(std::string_view text, SpecFormat format) {
    json doc;
    if (format == SpecFormat::toml) {
        try {
            doc = toml_to_json(toml::parse(text));
        } catch (const toml::parse_error& e) {
            std::ostringstream os;
            os << e.description() << " (line " << e.source().begin.line << ", column " << e.source().begin.column << ")";
            fail(ValidationCode::malformed_document, "", os.str());
        }
    } else {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(ValidationCode::malformed_document, "", e.what());
        }
    }
    return parse_spec(doc);
}

ParabolicBundle load_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ValidationCode::malformed_document, "", "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const SpecFormat format = path.extension() == ".toml" ? SpecFormat::toml : SpecFormat::json;
    return parse_spec_text(buffer.str(), format);
}

ordered_json class_to_json(const GradedClass& x) {
    ordered_json out = ordered_json::object();
    for (const auto& t : x.terms()) out[x.model()->format_monomial(t.monomial)] = t.coefficient.to_fraction_string();
    return out;
}

GradedClass class_from_json(const ModelPtr& model, const json& terms) {
    if (!terms.is_object()) fail(ValidationCode::schema, "", "a class is an object mapping monomials to rationals");
    std::vector<Term> raw;
    for (const auto& [key, value] : terms.items()) {
        Monomial m;
        try {
            m = model->parse_monomial(key);
        } catch (const SchemaError& e) {
            fail(ValidationCode::unknown_generator, key, e.what());
        }
        raw.push_back({m, parse_rational(value, key)});
    }
    return normalize_monomials(std::move(raw), model);
}

ordered_json spec_to_json(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    ordered_json out;
    out["divisors"] = model->divisor_count();
    out["truncation_degree"] = model->truncation_degree();
    out["extra_classes"] = model->extras();
    ordered_json relations = ordered_json::array();
    for (Monomial m : model->relations()) relations.push_back(model->format_monomial(m));
    out["relations"] = relations;
    ordered_json ladders = ordered_json::array();
    for (const auto& w : bundle.weights()) {
        ordered_json list = ordered_json::array();
        for (const auto& q : w.weights()) list.push_back(q.to_fraction_string());
        ladders.push_back(list);
    }
    out["ladders"] = ladders;
    ordered_json summands = ordered_json::array();
    for (const auto& s : bundle.summands()) {
        ordered_json item;
        item["c1"] = class_to_json(s.c1);
        item["jumps"] = s.jumps;
        summands.push_back(item);
    }
    out["summands"] = summands;
    return out;
}

}  // namespace parch
