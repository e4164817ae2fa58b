#include "support.hpp"

#include "parch/commands.hpp"

#include <sstream>

using namespace testing;
using nlohmann::json;

namespace {

const char* kTwoDivisors = R"({
  "divisors": 2,
  "truncation_degree": 4,
  "extra_classes": ["H"],
  "relations": ["D1*D2"],
  "ladders": [["-1/2"], ["-1/3", "0"]],
  "summands": [{"c1": {"H": "1/1"}, "jumps": [0, 1]}, {"c1": {"D1": "-2"}, "jumps": [0, 0]}]
})";

ValidationError rejection(const std::string& text, SpecFormat format = SpecFormat::json) {
    try {
        (void)parse_spec_text(text, format);
    } catch (const ValidationError& e) {
        return e;
    }
    FAIL("document was accepted: " << text);
    throw std::logic_error("unreachable");
}

std::string data(const std::string& name) { return std::string(PARCH_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("JSON documents") {
    const ParabolicBundle b = parse_spec_text(kTwoDivisors, SpecFormat::json);
    CHECK(b.divisor_count() == 2);
    CHECK(b.rank() == 2);
    CHECK(b.model()->truncation_degree() == 4);
    CHECK(b.model()->relations().size() == 1);
    CHECK(std::vector<Rational>(b.weight(1).weights().begin(), b.weight(1).weights().end()) == std::vector<Rational>{q(-1, 3), q(0)});
    CHECK(b.summands()[0].c1 == cls(b.model(), "H"));
    CHECK(b.summands()[1].c1 == cls(b.model(), "-2*D1"));
    CHECK(b.summands()[0].jumps == std::vector<Riser>{0, 1});

    const ParabolicBundle d = parse_spec_text(R"({"divisors": 3, "ladders": [["0"], ["0"], ["0"]], "summands": []})", SpecFormat::json);
    CHECK(d.model()->truncation_degree() == 6);
    CHECK(d.rank() == 0);
}

TEST_CASE("TOML and JSON describe the same bundle") {
    const ParabolicBundle t = load_spec(data("two_summands.toml"));
    const auto m = model(1, 4, {"H"});
    const auto expected = bundle(m, {{q(-1, 2), q(-1, 4)}}, {{"", {0}}, {"H", {1}}});
    CHECK(*t.model() == *m);
    CHECK(ch_par_integral(t) == ch_par_integral(expected));
    const ParabolicBundle back = parse_spec(json::parse(spec_to_json(t).dump()));
    CHECK(ch_par_rr(back) == ch_par_rr(t));
    CHECK(spec_to_json(back) == spec_to_json(t));
}

TEST_CASE("spec round trip on random bundles") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const ParabolicBundle b = random_instance(seed, InstanceLimits{});
        const ParabolicBundle c = parse_spec(json::parse(spec_to_json(b).dump()));
        CHECK(*c.model() == *b.model());
        CHECK(ch_vb(c) == ch_vb(b));
        CHECK(ch_par_integral(c) == ch_par_integral(b));
    }
}

TEST_CASE("validation codes and paths") {
    struct Case {
        std::string text;
        ValidationCode code;
        std::string path;
    };
    const std::vector<Case> cases{
        {R"({"divisors": 1, "ladders": [["-1/2"]], "summands": [)", ValidationCode::malformed_document, ""},
        {R"({"ladders": [], "summands": []})", ValidationCode::schema, ""},
        {R"({"divisors": 1, "ladders": [["-1/2"]], "summands": [], "colour": 1})", ValidationCode::schema, "colour"},
        {R"({"divisors": 2, "ladders": [["-1/2"]], "summands": []})", ValidationCode::schema, "ladders"},
        {R"({"divisors": 1, "ladders": [["-1/2", "minus"]], "summands": []})", ValidationCode::malformed_rational, "ladders[0][1]"},
        {R"({"divisors": 1, "ladders": [[-0.5]], "summands": []})", ValidationCode::malformed_rational, "ladders[0][0]"},
        {R"({"divisors": 1, "ladders": [["-1/1"]], "summands": []})", ValidationCode::weight_out_of_range, "ladders[0][0]"},
        {R"({"divisors": 1, "ladders": [["1/3"]], "summands": []})", ValidationCode::weight_out_of_range, "ladders[0][0]"},
        {R"({"divisors": 1, "ladders": [["-1/4", "-1/2"]], "summands": []})", ValidationCode::decreasing_weights, "ladders[0][1]"},
        {R"({"divisors": 1, "ladders": [["-1/2"]], "summands": [{"c1": {}, "jumps": [1]}]})", ValidationCode::bad_riser_index, "summands[0].jumps[0]"},
        {R"({"divisors": 1, "ladders": [["-1/2"]], "summands": [{"c1": {}, "jumps": [-1]}]})", ValidationCode::bad_riser_index, "summands[0].jumps[0]"},
        {R"({"divisors": 1, "ladders": [["-1/2"]], "summands": [{"c1": {"H": "1"}, "jumps": [0]}]})", ValidationCode::unknown_generator, "summands[0].c1.H"},
        {R"({"divisors": 1, "relations": ["D2"], "ladders": [["-1/2"]], "summands": []})", ValidationCode::unknown_generator, "relations[0]"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        const ValidationError e = rejection(c.text);
        CHECK(e.code() == c.code);
        CHECK(e.path() == c.path);
    }
    const ValidationError t = rejection("divisors = [", SpecFormat::toml);
    CHECK(t.code() == ValidationCode::malformed_document);
    CHECK(std::string(rejection(R"({"divisors": 1, "ladders": [["-1/1"]], "summands": []})").what()) ==
          "ladders[0][0]: weight_out_of_range: weight -1 is outside (-1, 0]");
    CHECK_THROWS_AS(load_spec(data("missing.json")), ValidationError);
}

TEST_CASE("class JSON") {
    const auto m = model(2, 3, {"H"});
    const GradedClass x = cls(m, "2 - 1/2*D1*H + D2^2");
    const auto j = class_to_json(x);
    CHECK(j.dump() == R"({"1":"2/1","D1*H":"-1/2","D2^2":"1/1"})");
    CHECK(class_from_json(m, json::parse(j.dump())) == x);
    CHECK_THROWS_AS(class_from_json(m, json::parse(R"({"K": "1"})")), ValidationError);
}

TEST_CASE("compute command") {
    std::ostringstream out;
    std::ostringstream err;
    CHECK(run_compute({data("line_half.json"), "all", Emit::json}, out, err) == 0);
    const json report = json::parse(out.str());
    CHECK(report["agreement"] == true);
    CHECK(report["discrepancy"].is_null());
    for (const char* name : {"integral", "general", "rr", "lowdegree"}) {
        CHECK(report["methods"][name]["grades"]["ch1"] == "1/2 * D1");
        CHECK(report["methods"][name]["grades"]["ch3"] == "1/48 * D1^3");
    }
    CHECK(report["methods"]["rr"]["terms"]["D1^2"] == "1/8");

    std::ostringstream o2, e2;
    CHECK(run_compute({data("two_summands.toml"), "lowdegree", Emit::text}, o2, e2) == 0);
    CHECK(o2.str().find("ch1  3/4 * D1 + H") != std::string::npos);

    std::ostringstream o3, e3;
    CHECK(run_compute({data("bad_weight.json"), "all", Emit::json}, o3, e3) == 1);
    CHECK(e3.str().find("ladders[0][0]: weight_out_of_range") != std::string::npos);
    CHECK(o3.str().empty());

    std::ostringstream o4, e4;
    CHECK(run_compute({data("line_half.json"), "simpson", Emit::json}, o4, e4) == 1);
}

TEST_CASE("omitted degrees are noted") {
    const auto b = bundle(model(1, 2), {{q(-1, 2)}}, {{"", {0}}});
    const json report = report_to_json(b, compute_report(b, "all"));
    REQUIRE(report.contains("notes"));
    CHECK(report["notes"][0] == "lowdegree: ch3 and above omitted, truncation degree 2 is below 3");
    CHECK_FALSE(report["methods"]["lowdegree"]["grades"].contains("ch3"));
}

TEST_CASE("verify and selftest commands") {
    std::ostringstream out, err;
    CHECK(run_verify({data("crossing.json"), Emit::json}, out, err) == 0);
    const json report = json::parse(out.str());
    CHECK(report["checks"].size() == 7);
    for (const auto& c : report["checks"]) CHECK(c["passed"] == true);

    SelftestOptions options;
    options.seed = 11;
    options.cases = 6;
    std::ostringstream a, b, sink;
    CHECK(run_selftest(options, a, sink) == 0);
    CHECK(run_selftest(options, b, sink) == 0);
    CHECK(a.str() == b.str());
    std::istringstream lines(a.str());
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        const json j = json::parse(line);
        if (j.contains("summary")) {
            CHECK(j["summary"]["passed"] == 6);
            CHECK(j["summary"]["failed"] == 0);
        } else {
            CHECK(j["seed"] == 11 + count);
            CHECK_FALSE(j.contains("ms"));
            ++count;
        }
    }
    CHECK(count == 6);

    options.cases = 0;
    std::ostringstream empty;
    CHECK(run_selftest(options, empty, sink) == 0);
    CHECK(json::parse(empty.str())["summary"]["cases"] == 0);

    options.limits.max_divisors = 0;
    CHECK(run_selftest(options, empty, sink) == 1);
}
