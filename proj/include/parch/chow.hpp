#pragma once

// Truncated graded-commutative algebra Q[D1..Dn, extras] / (monomial relations, degree > d).
//
// Every Chow class in the engine lives here. Generators are all of degree one;
// the divisor generators come first (D1..Dn), followed by the named extra
// classes in declaration order.

#include "parch/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parch {

/// Malformed model or class data: unknown generator, bad exponent, oversize model.
class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operands belong to different intersection models.
class ModelMismatchError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// exp of a non-nilpotent class, inverse of a non-unit.
class AlgebraDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr int kMaxGenerators = 15;
inline constexpr int kMaxDegree = 15;

/// Monomial in at most kMaxGenerators degree-one generators, total degree <= kMaxDegree.
///
/// Packed into 64 bits: the top nibble stores the total degree and nibble
/// (14 - g) stores the exponent of generator g. Multiplication is key
/// addition as long as the degree sum stays <= kMaxDegree.
class Monomial {
public:
    constexpr Monomial() = default;

    static Monomial generator(int g);
    /// Throws SchemaError on negative exponents, too many generators or degree > kMaxDegree.
    static Monomial from_exponents(std::span<const int> exponents);

    [[nodiscard]] int exponent(int g) const {
        return static_cast<int>((key_ >> (4 * (kMaxGenerators - 1 - g))) & 0xF);
    }
    [[nodiscard]] int degree() const { return static_cast<int>(key_ >> 60); }
    [[nodiscard]] bool is_unit() const { return key_ == 0; }
    [[nodiscard]] std::uint64_t key() const { return key_; }
    [[nodiscard]] bool divisible_by(Monomial other) const;

    /// Precondition: degree() + other.degree() <= kMaxDegree.
    [[nodiscard]] Monomial operator*(Monomial other) const { return Monomial(key_ + other.key_); }

    friend bool operator==(Monomial a, Monomial b) = default;

private:
    constexpr explicit Monomial(std::uint64_t key) : key_(key) {}
    std::uint64_t key_ = 0;
};

/// Graded lexicographic: lower degree first; within a degree, larger exponent
/// of the earlier generator first (D1^2 < D1*D2 < D1*H < D2^2 ...).
struct CanonicalOrder {
    bool operator()(Monomial a, Monomial b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.key() > b.key();
    }
};

class IntersectionModel;
using ModelPtr = std::shared_ptr<const IntersectionModel>;

/// The ring presentation: n divisor generators, named extras, vanishing monomials, truncation degree.
class IntersectionModel {
public:
    IntersectionModel(int divisors, int truncation_degree, std::vector<std::string> extras = {},
                      std::vector<Monomial> relations = {});

    static ModelPtr make(int divisors, int truncation_degree, std::vector<std::string> extras = {},
                         std::vector<Monomial> relations = {});

    /// Truncation used when a document leaves it unspecified.
    static int default_truncation(int divisors) { return divisors + 3; }

    [[nodiscard]] int divisor_count() const { return divisors_; }
    [[nodiscard]] int truncation_degree() const { return degree_; }
    [[nodiscard]] int generator_count() const { return divisors_ + static_cast<int>(extras_.size()); }
    [[nodiscard]] const std::vector<std::string>& extras() const { return extras_; }
    /// Minimal generating set of the monomial ideal, in canonical order.
    [[nodiscard]] const std::vector<Monomial>& relations() const { return relations_; }

    [[nodiscard]] std::string generator_name(int g) const;
    [[nodiscard]] std::optional<int> generator_index(std::string_view name) const;

    /// True iff m has degree <= d and no relation divides it.
    [[nodiscard]] bool survives(Monomial m) const;
    [[nodiscard]] bool kills(Monomial m) const { return !survives(m); }

    /// "1", "D1", "D1^2*D3*H". Throws SchemaError on unknown names.
    [[nodiscard]] Monomial parse_monomial(std::string_view text) const;
    [[nodiscard]] std::string format_monomial(Monomial m) const;

    friend bool operator==(const IntersectionModel& a, const IntersectionModel& b);

private:
    int divisors_;
    int degree_;
    std::vector<std::string> extras_;
    std::vector<Monomial> relations_;
};

struct Term {
    Monomial monomial;
    Rational coefficient;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Exponent vector (indexed by generator) with its coefficient; input to normalize().
using RawTerms = std::vector<std::pair<std::vector<int>, Rational>>;

/// Element of the truncated ring, in canonical form.
///
/// Terms are kept sorted by CanonicalOrder with nonzero coefficients and
/// surviving monomials only, so equality is term-list equality.
class GradedClass {
public:
    explicit GradedClass(ModelPtr model) : model_(std::move(model)) {}

    static GradedClass zero(ModelPtr model) { return GradedClass(std::move(model)); }
    static GradedClass constant(ModelPtr model, const Rational& value);
    static GradedClass monomial(ModelPtr model, Monomial m, const Rational& coefficient = 1);
    static GradedClass generator(ModelPtr model, int g, const Rational& coefficient = 1);
    /// Divisor D_{i+1}, 0-based index.
    static GradedClass divisor(ModelPtr model, int i, const Rational& coefficient = 1);
    /// D = D1 + ... + Dn.
    static GradedClass total_divisor(ModelPtr model);

    /// Parses the canonical text form, e.g. "1 + 1/2 * D1 - D1*H^2".
    static GradedClass parse(ModelPtr model, std::string_view text);

    [[nodiscard]] const ModelPtr& model() const { return model_; }
    [[nodiscard]] std::span<const Term> terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] Rational coefficient(Monomial m) const;
    [[nodiscard]] Rational constant_term() const;
    /// Homogeneous degree-k part.
    [[nodiscard]] GradedClass grade(int k) const;
    [[nodiscard]] bool is_homogeneous(int k) const;
    /// Largest degree carrying a nonzero term, -1 for zero.
    [[nodiscard]] int top_degree() const;

    GradedClass& operator+=(const GradedClass& other);
    GradedClass& operator-=(const GradedClass& other);
    GradedClass& operator*=(const GradedClass& other);
    GradedClass& operator*=(const Rational& q);

    friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
    friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
    friend GradedClass operator*(const GradedClass& a, const GradedClass& b);
    friend GradedClass operator*(GradedClass a, const Rational& q) { return a *= q; }
    friend GradedClass operator*(const Rational& q, GradedClass a) { return a *= q; }
    friend GradedClass operator-(GradedClass a) { return a *= Rational(-1); }

    /// Same model (by value) and same terms.
    friend bool operator==(const GradedClass& a, const GradedClass& b);

    /// Canonical text form; "0" for the zero class.
    [[nodiscard]] std::string to_string() const;

private:
    friend GradedClass normalize(const RawTerms& raw, const ModelPtr& model);
    friend GradedClass normalize_monomials(std::vector<Term> raw, const ModelPtr& model);

    void require_same_model(const GradedClass& other) const;

    ModelPtr model_;
    std::vector<Term> terms_;
};

/// Canonical form of raw exponent-vector data: drops zeros, truncates degree > d,
/// kills relation multiples, merges duplicates. Throws SchemaError for exponent
/// vectors naming generators the model does not have.
GradedClass normalize(const RawTerms& raw, const ModelPtr& model);
/// Same, starting from already packed monomials (duplicates allowed).
GradedClass normalize_monomials(std::vector<Term> raw, const ModelPtr& model);

/// Scalar multiple.
GradedClass scale(const Rational& q, GradedClass a);

/// x^k, k >= 0.
GradedClass power(const GradedClass& x, unsigned k);

/// Sum_{k<=d} x^k / k!. Throws AlgebraDomainError when x has a constant term.
GradedClass exp_nilpotent(const GradedClass& x);

/// Two-sided inverse of x. Throws AlgebraDomainError when x has no constant term.
GradedClass invert_unit(const GradedClass& x);

/// Exact value of the integral of exp(-beta * D_i) for beta from a to b, i.e.
/// Sum_k (-1)^k (b^{k+1} - a^{k+1}) / (k+1)! D_i^k. Divisor index i is 0-based.
GradedClass integrate_exp(const ModelPtr& model, const Rational& a, const Rational& b, int i);

/// (1 - exp(-a D_i)) / D_i = Sum_k (-1)^k a^{k+1} D_i^k / (k+1)!. 0-based i.
GradedClass eab_factor(const ModelPtr& model, const Rational& a, int i);

}  // namespace parch
