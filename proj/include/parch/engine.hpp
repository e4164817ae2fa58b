#pragma once

// Parabolic Chern character evaluators.
//
// ch_par_integral averages the Chern characters of the sheaf family over
// the weight cube; ch_par_general and ch_par_rr are the closed expressions
// in terms of associated-graded pieces; ch_par_low_degree evaluates the
// explicit ch_0..ch_3 formulas term by term.

#include "parch/parabolic.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace parch {

/// Alternating sum over quotient sheaves; must reproduce ch_vb_sigma.
GradedClass koszul_ch_sigma(const ParabolicBundle& bundle, std::span<const Tread> sigma);

/// The pieces of koszul_ch_sigma prepared once, for evaluation over many sigma.
class KoszulExpansion {
public:
    explicit KoszulExpansion(const ParabolicBundle& bundle);
    [[nodiscard]] GradedClass evaluate(std::span<const Tread> sigma) const;

private:
    struct Summand {
        std::vector<int> divisors;
        std::vector<Tread> upper_treads;  // m_+ of the piece's risers
        GradedClass value;                // signed ch of the pushforward
    };
    GradedClass ch_vb_;
    int divisors_;
    std::vector<Summand> terms_;
};

GradedClass ch_par_integral(const ParabolicBundle& bundle);
GradedClass ch_par_general(const ParabolicBundle& bundle);
GradedClass ch_par_rr(const ParabolicBundle& bundle);

struct NamedTerm {
    std::string name;
    GradedClass value;
};

struct LowDegreeResult {
    std::array<GradedClass, 4> ch;       ///< ch_0 .. ch_3, each homogeneous
    std::vector<NamedTerm> ch2_terms;
    std::vector<NamedTerm> ch3_terms;    ///< the expanded (alpha) form
    std::vector<NamedTerm> ch3_shifted_terms;  ///< the (alpha + 1) form

    /// ch_0 + ch_1 + ch_2 + ch_3.
    [[nodiscard]] GradedClass total() const;
};

LowDegreeResult ch_par_low_degree(const ParabolicBundle& bundle);

GradedClass sum_terms(const ModelPtr& model, std::span<const NamedTerm> terms);

/// ch_2 with the cross term written as half the sum over ordered pairs.
GradedClass mochizuki_symmetrized_ch2(const ParabolicBundle& bundle);

struct GrothendieckCheck {
    bool holds;
    GradedClass residual;
};

/// ch_vb (1 - e^{-D}) + Sum_q (-1)^q Sum_{I, lambda} ch_of_pushforward.
GrothendieckCheck verify_grothendieck_relation(const ParabolicBundle& bundle);

/// Outcome of comparing a list of named terms against a reference class.
struct TermDiagnostic {
    bool agree = true;
    std::optional<GradedClass> residual;          ///< reference minus sum of terms
    std::string first_monomial;                   ///< first differing monomial, canonical order
    std::optional<Rational> coefficient_difference;
    std::vector<std::string> suspects;            ///< terms the residual is a rational multiple of
};

TermDiagnostic diagnose_terms(const GradedClass& reference, std::span<const NamedTerm> terms);

struct MethodResult {
    std::string name;
    GradedClass value;
    int max_degree = -1;  ///< only grades <= max_degree are meaningful; -1 for all
};

struct Discrepancy {
    std::string method_a;
    std::string method_b;
    std::string monomial;
    Rational difference;  ///< coefficient in a minus coefficient in b
};

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

struct ChernReport {
    std::vector<MethodResult> methods;
    bool agreement = true;
    std::optional<Discrepancy> first_discrepancy;
    std::vector<Check> checks;

    [[nodiscard]] bool all_checks_pass() const;
    [[nodiscard]] bool ok() const { return agreement && all_checks_pass(); }
    [[nodiscard]] const MethodResult* find(std::string_view name) const;
};

/// Sum of the grades 0..k of x.
GradedClass truncate_to(const GradedClass& x, int k);

/// Compares every method against every other on their common degree range.
ChernReport compare_methods(std::vector<MethodResult> methods);

}  // namespace parch
