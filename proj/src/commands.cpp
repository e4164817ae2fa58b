#include "parch/commands.hpp"

#include "parch/spec_io.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace parch {

using nlohmann::ordered_json;

namespace {

int shown_degree(const ParabolicBundle& bundle, const MethodResult& m) {
    const int d = bundle.model()->truncation_degree();
    return m.max_degree >= 0 ? std::min(d, m.max_degree) : d;
}

std::vector<std::string> notes_for(const ParabolicBundle& bundle, const ChernReport& report) {
    std::vector<std::string> notes;
    const int d = bundle.model()->truncation_degree();
    if (report.find("lowdegree") && d < 3) {
        notes.push_back(fmt::format("lowdegree: ch{} and above omitted, truncation degree {} is below 3",
                                    d + 1, d));
    }
    return notes;
}

ordered_json limits_to_json(const InstanceLimits& l) {
    ordered_json out;
    out["max_divisors"] = l.max_divisors;
    out["max_risers"] = l.max_risers;
    out["min_summands"] = l.min_summands;
    out["max_summands"] = l.max_summands;
    out["truncation_degree"] = l.truncation_degree;
    out["weight_denominator"] = l.weight_denominator;
    out["c1_bound"] = l.c1_bound;
    out["relation_probability"] = l.relation_probability;
    out["tie_probability"] = l.tie_probability;
    out["zero_weights"] = l.zero_weights;
    return out;
}

std::optional<ParabolicBundle> load_or_report(const std::string& file, std::ostream& err) {
    try {
        return load_spec(file);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return std::nullopt;
}

void emit(const ParabolicBundle& bundle, const ChernReport& report, Emit format, std::ostream& out) {
    if (format == Emit::json) {
        out << report_to_json(bundle, report).dump(2) << "\n";
    } else {
        out << report_to_text(bundle, report);
    }
}

}  // namespace

ChernReport compute_report(const ParabolicBundle& bundle, const std::string& method) {
    std::vector<MethodResult> methods;
    const bool all = method == "all";
    if (all || method == "integral") methods.push_back({"integral", ch_par_integral(bundle), -1});
    if (all || method == "general") methods.push_back({"general", ch_par_general(bundle), -1});
    if (all || method == "rr") methods.push_back({"rr", ch_par_rr(bundle), -1});
    if (all || method == "lowdegree") methods.push_back({"lowdegree", ch_par_low_degree(bundle).total(), 3});
    if (methods.empty()) throw std::invalid_argument("unknown method '" + method + "'");
    return compare_methods(std::move(methods));
}

ordered_json report_to_json(const ParabolicBundle& bundle, const ChernReport& report) {
    ordered_json out;
    out["rank"] = bundle.rank();
    out["divisors"] = bundle.divisor_count();
    out["truncation_degree"] = bundle.model()->truncation_degree();
    ordered_json methods = ordered_json::object();
    for (const auto& m : report.methods) {
        ordered_json grades = ordered_json::object();
        const int top = shown_degree(bundle, m);
        for (int k = 0; k <= top; ++k) grades["ch" + std::to_string(k)] = m.value.grade(k).to_string();
        ordered_json entry;
        entry["grades"] = grades;
        entry["terms"] = class_to_json(truncate_to(m.value, top));
        methods[m.name] = entry;
    }
    out["methods"] = methods;
    out["agreement"] = report.agreement;
    if (report.first_discrepancy) {
        const Discrepancy& d = *report.first_discrepancy;
        ordered_json diag;
        diag["methods"] = {d.method_a, d.method_b};
        diag["monomial"] = d.monomial;
        diag["difference"] = d.difference.to_fraction_string();
        out["discrepancy"] = diag;
    } else {
        out["discrepancy"] = nullptr;
    }
    if (!report.checks.empty()) {
        ordered_json checks = ordered_json::array();
        for (const auto& c : report.checks) {
            ordered_json item;
            item["name"] = c.name;
            item["passed"] = c.passed;
            if (!c.detail.empty()) item["detail"] = c.detail;
            checks.push_back(item);
        }
        out["checks"] = checks;
    }
    const auto notes = notes_for(bundle, report);
    if (!notes.empty()) out["notes"] = notes;
    return out;
}

std::string report_to_text(const ParabolicBundle& bundle, const ChernReport& report) {
    std::ostringstream os;
    os << fmt::format("rank {}, {} divisor(s), truncation degree {}\n", bundle.rank(), bundle.divisor_count(),
                      bundle.model()->truncation_degree());
    std::size_t width = 0;
    for (const auto& m : report.methods) width = std::max(width, m.name.size());
    for (const auto& m : report.methods) {
        const int top = shown_degree(bundle, m);
        for (int k = 0; k <= top; ++k) {
            os << fmt::format("{:<{}}  ch{}  {}\n", k == 0 ? m.name : "", width, k, m.value.grade(k).to_string());
        }
    }
    for (const auto& c : report.checks) {
        os << fmt::format("check {:<18} {}{}\n", c.name, c.passed ? "ok" : "FAILED", c.detail.empty() ? "" : "  (" + c.detail + ")");
    }
    os << "agreement: " << (report.agreement ? "yes" : "no") << "\n";
    if (report.first_discrepancy) {
        const Discrepancy& d = *report.first_discrepancy;
        os << fmt::format("first discrepancy: {} vs {} at {}, difference {}\n", d.method_a, d.method_b, d.monomial,
                          d.difference.to_string());
    }
    for (const auto& n : notes_for(bundle, report)) os << "note: " << n << "\n";
    return os.str();
}

int run_compute(const ComputeOptions& options, std::ostream& out, std::ostream& err) {
    const auto bundle = load_or_report(options.file, err);
    if (!bundle) return 1;
    ChernReport report;
    try {
        report = compute_report(*bundle, options.method);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    emit(*bundle, report, options.emit, out);
    if (report.first_discrepancy) {
        const Discrepancy& d = *report.first_discrepancy;
        err << fmt::format("methods {} and {} disagree at {}\n", d.method_a, d.method_b, d.monomial);
    }
    return report.agreement ? 0 : 2;
}

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
    const auto bundle = load_or_report(options.file, err);
    if (!bundle) return 1;
    const ChernReport report = cross_check(*bundle);
    emit(*bundle, report, options.emit, out);
    return report.ok() ? 0 : 2;
}

int run_selftest(const SelftestOptions& options, std::ostream& out, std::ostream& err) {
    try {
        options.limits.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    if (options.cases < 0) {
        err << "error: cases must be >= 0\n";
        return 1;
    }
    const ordered_json limits = limits_to_json(options.limits);
    int passed = 0;
    double slowest = 0;
    for (int k = 0; k < options.cases; ++k) {
        const std::uint64_t seed = options.seed + static_cast<std::uint64_t>(k);
        const auto start = std::chrono::steady_clock::now();
        const ParabolicBundle bundle = random_instance(seed, options.limits);
        const ChernReport report = cross_check(bundle);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        slowest = std::max(slowest, ms);
        if (report.ok()) ++passed;

        ordered_json line;
        line["index"] = k;
        line["seed"] = seed;
        line["limits"] = limits;
        line["divisors"] = bundle.divisor_count();
        line["rank"] = bundle.rank();
        line["truncation_degree"] = bundle.model()->truncation_degree();
        line["agreement"] = report.agreement;
        line["checks_passed"] = report.all_checks_pass();
        ordered_json failed = ordered_json::array();
        for (const auto& c : report.checks) {
            if (!c.passed) failed.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
        }
        if (!failed.empty()) line["failed_checks"] = failed;
        if (report.first_discrepancy) {
            const Discrepancy& d = *report.first_discrepancy;
            line["discrepancy"] = {{"methods", {d.method_a, d.method_b}}, {"monomial", d.monomial},
                                   {"difference", d.difference.to_fraction_string()}};
        }
        if (options.timing) line["ms"] = std::round(ms * 1000) / 1000;
        out << line.dump() << "\n";
    }
    ordered_json summary;
    summary["cases"] = options.cases;
    summary["passed"] = passed;
    summary["failed"] = options.cases - passed;
    if (options.timing) summary["max_instance_ms"] = std::round(slowest * 1000) / 1000;
    out << ordered_json{{"summary", summary}}.dump() << "\n";
    err << fmt::format("selftest: {}/{} passed, max instance time {:.1f} ms\n", passed, options.cases, slowest);
    return passed == options.cases ? 0 : 2;
}

}  // namespace parch
