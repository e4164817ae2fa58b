#pragma once

// Randomised instances and a brute-force integrator that shares nothing
// with the engine apart from ring arithmetic.

#include "parch/engine.hpp"

#include <cstdint>
#include <random>

namespace parch {

struct InstanceLimits {
    int max_divisors = 3;
    int max_risers = 3;
    int min_summands = 0;
    int max_summands = 4;
    int truncation_degree = 0;     ///< 0: cap at divisors + 3
    int weight_denominator = 12;
    int c1_bound = 3;
    double relation_probability = 0.25;
    double tie_probability = 0.2;  ///< chance a weight repeats its predecessor
    int extra_classes = 1;         ///< named H, H2, ...
    bool zero_weights = false;

    /// Throws std::invalid_argument when a bound is below its minimal valid value.
    void validate() const;
};

/// Portable bounded draws on top of mt19937_64, so instances match across standard libraries.
class InstanceRng {
public:
    explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [lo, hi].
    long uniform(long lo, long hi);
    /// True with probability p (resolution 2^-32).
    bool chance(double p);

private:
    std::mt19937_64 engine_;
};

ParabolicBundle random_instance(std::uint64_t seed, const InstanceLimits& limits);

/// New random summands (count in [min_summands, max_summands]) on the ladders of an existing bundle.
ParabolicBundle random_summands_like(const ParabolicBundle& skeleton, std::uint64_t seed, const InstanceLimits& limits);

/// Cell-by-cell integration over the weight cube.
GradedClass oracle_integral(const ParabolicBundle& bundle);

/// Runs every evaluator and every consistency relation on one bundle.
ChernReport cross_check(const ParabolicBundle& bundle);

}  // namespace parch
