// parch: parabolic Chern characters from a bundle description.
//
//   parch compute bundle.json [--method=integral|general|rr|lowdegree|all] [--emit=json|text]
//   parch verify bundle.toml
//   parch selftest --seed 7 --cases 200 --max-divisors 3

#include "parch/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Exact parabolic Chern characters in a truncated Chow ring"};
    app.require_subcommand(1);

    const std::map<std::string, parch::Emit> emit_names{{"json", parch::Emit::json}, {"text", parch::Emit::text}};

    parch::ComputeOptions compute;
    auto* compute_cmd = app.add_subcommand("compute", "evaluate ch^Par by one or all methods");
    compute_cmd->add_option("file", compute.file, "bundle description (.json or .toml)")->required();
    compute_cmd->add_option("--method", compute.method, "integral, general, rr, lowdegree or all")
        ->check(CLI::IsMember({"integral", "general", "rr", "lowdegree", "all"}));
    compute_cmd->add_option("--emit", compute.emit, "output format")->transform(CLI::CheckedTransformer(emit_names));

    parch::VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "cross-check every method, the oracle and the identities");
    verify_cmd->add_option("file", verify.file, "bundle description (.json or .toml)")->required();
    verify_cmd->add_option("--emit", verify.emit, "output format")->transform(CLI::CheckedTransformer(emit_names));

    parch::SelftestOptions selftest;
    auto& lim = selftest.limits;
    auto* selftest_cmd = app.add_subcommand("selftest", "cross-check random instances");
    selftest_cmd->add_option("--seed", selftest.seed, "seed of the first instance");
    selftest_cmd->add_option("--cases", selftest.cases, "number of instances")->check(CLI::NonNegativeNumber);
    selftest_cmd->add_option("--max-divisors", lim.max_divisors)->check(CLI::Range(1, 12));
    selftest_cmd->add_option("--max-risers", lim.max_risers)->check(CLI::Range(1, 12));
    selftest_cmd->add_option("--min-summands", lim.min_summands)->check(CLI::NonNegativeNumber);
    selftest_cmd->add_option("--max-summands", lim.max_summands)->check(CLI::NonNegativeNumber);
    selftest_cmd->add_option("--degree", lim.truncation_degree, "truncation degree cap, 0 for divisors + 3")
        ->check(CLI::Range(0, parch::kMaxDegree));
    selftest_cmd->add_option("--weight-denominator", lim.weight_denominator)->check(CLI::PositiveNumber);
    selftest_cmd->add_option("--c1-bound", lim.c1_bound)->check(CLI::NonNegativeNumber);
    selftest_cmd->add_option("--relation-probability", lim.relation_probability)->check(CLI::Range(0.0, 1.0));
    selftest_cmd->add_option("--tie-probability", lim.tie_probability)->check(CLI::Range(0.0, 1.0));
    selftest_cmd->add_flag("--zero-weights", lim.zero_weights, "make every weight 0");
    selftest_cmd->add_flag("--timing", selftest.timing, "include per-instance times in the JSON lines");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (compute_cmd->parsed()) return parch::run_compute(compute, std::cout, std::cerr);
    if (verify_cmd->parsed()) return parch::run_verify(verify, std::cout, std::cerr);
    return parch::run_selftest(selftest, std::cout, std::cerr);
}
