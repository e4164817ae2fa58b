#include "parch/chow.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace parch {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::generator(int g) {
    if (g < 0 || g >= kMaxGenerators) throw SchemaError("generator index " + std::to_string(g) + " out of range");
    return Monomial((std::uint64_t{1} << 60) | (std::uint64_t{1} << (4 * (kMaxGenerators - 1 - g))));
}

Monomial Monomial::from_exponents(std::span<const int> exponents) {
    if (exponents.size() > static_cast<std::size_t>(kMaxGenerators)) {
        throw SchemaError("monomial references more than " + std::to_string(kMaxGenerators) + " generators");
    }
    std::uint64_t key = 0;
    int degree = 0;
    for (std::size_t g = 0; g < exponents.size(); ++g) {
        const int e = exponents[g];
        if (e < 0) throw SchemaError("negative exponent in monomial");
        degree += e;
        if (degree > kMaxDegree) throw SchemaError("monomial degree exceeds " + std::to_string(kMaxDegree));
        key |= static_cast<std::uint64_t>(e) << (4 * (kMaxGenerators - 1 - static_cast<int>(g)));
    }
    return Monomial(key | (static_cast<std::uint64_t>(degree) << 60));
}

bool Monomial::divisible_by(Monomial other) const {
    for (int g = 0; g < kMaxGenerators; ++g) {
        if (exponent(g) < other.exponent(g)) return false;
    }
    return true;
}

// ------------------------------------------------------- IntersectionModel

namespace {

bool is_divisor_name(std::string_view name) {
    if (name.size() < 2 || name[0] != 'D') return false;
    return std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_identifier(std::string_view name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

IntersectionModel::IntersectionModel(int divisors, int truncation_degree, std::vector<std::string> extras,
                                     std::vector<Monomial> relations)
    : divisors_(divisors), degree_(truncation_degree), extras_(std::move(extras)) {
    if (divisors_ < 0) throw SchemaError("divisor count must be >= 0");
    if (degree_ < 0) throw SchemaError("truncation degree must be >= 0");
    if (degree_ > kMaxDegree) throw SchemaError("truncation degree exceeds " + std::to_string(kMaxDegree));
    if (generator_count() > kMaxGenerators) {
        throw SchemaError("model has " + std::to_string(generator_count()) + " generators; at most " +
                          std::to_string(kMaxGenerators) + " are supported");
    }
    for (std::size_t k = 0; k < extras_.size(); ++k) {
        const auto& name = extras_[k];
        if (!is_identifier(name)) throw SchemaError("invalid extra class name '" + name + "'");
        if (is_divisor_name(name)) throw SchemaError("extra class name '" + name + "' collides with divisor names");
        if (std::find(extras_.begin(), extras_.begin() + static_cast<long>(k), name) != extras_.begin() + static_cast<long>(k)) {
            throw SchemaError("duplicate extra class name '" + name + "'");
        }
    }
    for (Monomial r : relations) {
        if (r.is_unit()) throw SchemaError("the unit monomial cannot be a relation");
        for (int g = generator_count(); g < kMaxGenerators; ++g) {
            if (r.exponent(g) != 0) throw SchemaError("relation references an unknown generator");
        }
    }
    // Keep only minimal generators of the monomial ideal.
    std::sort(relations.begin(), relations.end(), CanonicalOrder{});
    relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
    for (Monomial r : relations) {
        const bool redundant = std::any_of(relations_.begin(), relations_.end(),
                                           [r](Monomial kept) { return r.divisible_by(kept); });
        if (!redundant) relations_.push_back(r);
    }
}

ModelPtr IntersectionModel::make(int divisors, int truncation_degree, std::vector<std::string> extras,
                                 std::vector<Monomial> relations) {
    return std::make_shared<const IntersectionModel>(divisors, truncation_degree, std::move(extras),
                                                     std::move(relations));
}

std::string IntersectionModel::generator_name(int g) const {
    if (g < 0 || g >= generator_count()) throw SchemaError("generator index " + std::to_string(g) + " out of range");
    if (g < divisors_) return "D" + std::to_string(g + 1);
    return extras_[static_cast<std::size_t>(g - divisors_)];
}

std::optional<int> IntersectionModel::generator_index(std::string_view name) const {
    if (is_divisor_name(name)) {
        const std::string digits(name.substr(1));
        if (digits.size() > 4 || digits[0] == '0') return std::nullopt;
        const int i = std::stoi(digits);
        if (i >= 1 && i <= divisors_) return i - 1;
        return std::nullopt;
    }
    for (std::size_t k = 0; k < extras_.size(); ++k) {
        if (extras_[k] == name) return divisors_ + static_cast<int>(k);
    }
    return std::nullopt;
}

bool IntersectionModel::survives(Monomial m) const {
    if (m.degree() > degree_) return false;
    return std::none_of(relations_.begin(), relations_.end(), [m](Monomial r) { return m.divisible_by(r); });
}

Monomial IntersectionModel::parse_monomial(std::string_view text) const {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s == "1") return Monomial{};
    if (s.empty()) throw SchemaError("empty monomial");
    std::vector<int> exponents(static_cast<std::size_t>(generator_count()), 0);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t star = s.find('*', pos);
        const std::string factor = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
        const std::size_t caret = factor.find('^');
        const std::string name = factor.substr(0, caret);
        int e = 1;
        if (caret != std::string::npos) {
            const std::string digits = factor.substr(caret + 1);
            if (digits.empty() || digits.size() > 3 ||
                !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                throw SchemaError("bad exponent in monomial '" + std::string(text) + "'");
            }
            e = std::stoi(digits);
        }
        const auto g = generator_index(name);
        if (!g) throw SchemaError("unknown generator '" + name + "' in monomial '" + std::string(text) + "'");
        exponents[static_cast<std::size_t>(*g)] += e;
        if (star == std::string::npos) break;
        pos = star + 1;
    }
    return Monomial::from_exponents(exponents);
}

std::string IntersectionModel::format_monomial(Monomial m) const {
    if (m.is_unit()) return "1";
    std::string out;
    for (int g = 0; g < generator_count(); ++g) {
        const int e = m.exponent(g);
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += generator_name(g);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

bool operator==(const IntersectionModel& a, const IntersectionModel& b) {
    return a.divisors_ == b.divisors_ && a.degree_ == b.degree_ && a.extras_ == b.extras_ &&
           a.relations_ == b.relations_;
}

// ------------------------------------------------------------ GradedClass

namespace {

bool same_model(const ModelPtr& a, const ModelPtr& b) { return a == b || (a && b && *a == *b); }

// Coefficients rescaled to integers over a common denominator.
struct IntegerForm {
    mpz_class denominator{1};
    std::vector<mpz_class> numerators;

    explicit IntegerForm(std::span<const Term> terms) {
        for (const auto& t : terms) {
            mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), t.coefficient.raw().get_den_mpz_t());
        }
        numerators.reserve(terms.size());
        for (const auto& t : terms) {
            mpz_class scaled = denominator / t.coefficient.raw().get_den();
            scaled *= t.coefficient.raw().get_num();
            numerators.push_back(std::move(scaled));
        }
    }
};

// Mixed-radix index with radix d+1. Exponents of a surviving product never
// exceed d, so the index of a product is the sum of the indices.
std::uint64_t radix_index(Monomial m, int generators, std::uint64_t radix) {
    std::uint64_t index = 0;
    std::uint64_t place = 1;
    for (int g = 0; g < generators; ++g) {
        index += static_cast<std::uint64_t>(m.exponent(g)) * place;
        place *= radix;
    }
    return index;
}

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 16;

}  // namespace

GradedClass GradedClass::constant(ModelPtr model, const Rational& value) {
    return monomial(std::move(model), Monomial{}, value);
}

GradedClass GradedClass::monomial(ModelPtr model, Monomial m, const Rational& coefficient) {
    GradedClass out(std::move(model));
    if (!coefficient.is_zero() && out.model_->survives(m)) out.terms_.push_back({m, coefficient});
    return out;
}

GradedClass GradedClass::generator(ModelPtr model, int g, const Rational& coefficient) {
    if (g < 0 || g >= model->generator_count()) throw SchemaError("generator index " + std::to_string(g) + " out of range");
    return monomial(std::move(model), Monomial::generator(g), coefficient);
}

GradedClass GradedClass::divisor(ModelPtr model, int i, const Rational& coefficient) {
    if (i < 0 || i >= model->divisor_count()) throw SchemaError("divisor index " + std::to_string(i) + " out of range");
    return generator(std::move(model), i, coefficient);
}

GradedClass GradedClass::total_divisor(ModelPtr model) {
    std::vector<Term> raw;
    for (int i = 0; i < model->divisor_count(); ++i) raw.push_back({Monomial::generator(i), Rational(1)});
    return normalize_monomials(std::move(raw), model);
}

GradedClass GradedClass::parse(ModelPtr model, std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw SchemaError("empty class text");
    std::vector<Term> raw;
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        const std::string term = s.substr(pos, end - pos);
        if (term.empty()) throw SchemaError("malformed class text '" + std::string(text) + "'");
        Rational coefficient(sign);
        std::vector<std::string> factors;
        std::string monomial_text;
        std::size_t fpos = 0;
        while (true) {
            const std::size_t star = term.find('*', fpos);
            std::string factor = term.substr(fpos, star == std::string::npos ? std::string::npos : star - fpos);
            if (!factor.empty() && (std::isdigit(static_cast<unsigned char>(factor[0])))) {
                try {
                    coefficient *= Rational::parse(factor);
                } catch (const RationalFormatError& e) {
                    throw SchemaError(e.what());
                }
            } else {
                if (!monomial_text.empty()) monomial_text += '*';
                monomial_text += factor;
            }
            if (star == std::string::npos) break;
            fpos = star + 1;
        }
        const Monomial m = monomial_text.empty() ? Monomial{} : model->parse_monomial(monomial_text);
        raw.push_back({m, coefficient});
        pos = end;
    }
    return normalize_monomials(std::move(raw), model);
}

Rational GradedClass::coefficient(Monomial m) const {
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                     [](const Term& t, Monomial key) { return CanonicalOrder{}(t.monomial, key); });
    if (it != terms_.end() && it->monomial == m) return it->coefficient;
    return Rational(0);
}

Rational GradedClass::constant_term() const {
    if (!terms_.empty() && terms_.front().monomial.is_unit()) return terms_.front().coefficient;
    return Rational(0);
}

GradedClass GradedClass::grade(int k) const {
    GradedClass out(model_);
    for (const auto& t : terms_) {
        if (t.monomial.degree() == k) out.terms_.push_back(t);
    }
    return out;
}

bool GradedClass::is_homogeneous(int k) const {
    return std::all_of(terms_.begin(), terms_.end(), [k](const Term& t) { return t.monomial.degree() == k; });
}

int GradedClass::top_degree() const { return terms_.empty() ? -1 : terms_.back().monomial.degree(); }

void GradedClass::require_same_model(const GradedClass& other) const {
    if (!same_model(model_, other.model_)) throw ModelMismatchError("operands belong to different intersection models");
}

GradedClass& GradedClass::operator+=(const GradedClass& other) {
    require_same_model(other);
    if (other.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = other.terms_;
        return *this;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    const CanonicalOrder less;
    while (a != terms_.end() || b != other.terms_.end()) {
        if (b == other.terms_.end() || (a != terms_.end() && less(a->monomial, b->monomial))) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || less(b->monomial, a->monomial)) {
            merged.push_back(*b++);
        } else {
            Rational sum = a->coefficient + b->coefficient;
            if (!sum.is_zero()) merged.push_back({a->monomial, std::move(sum)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

GradedClass& GradedClass::operator-=(const GradedClass& other) { return *this += -other; }

GradedClass& GradedClass::operator*=(const Rational& q) {
    if (q.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coefficient *= q;
    return *this;
}

GradedClass& GradedClass::operator*=(const GradedClass& other) { return *this = *this * other; }

GradedClass operator*(const GradedClass& a, const GradedClass& b) {
    a.require_same_model(b);
    GradedClass out(a.model_);
    if (a.terms_.empty() || b.terms_.empty()) return out;

    const IntersectionModel& model = *a.model_;
    const int d = model.truncation_degree();
    const int generators = model.generator_count();
    const std::uint64_t radix = static_cast<std::uint64_t>(d) + 1;

    std::uint64_t span = 1;
    for (int g = 0; g < generators && span <= kDenseLimit; ++g) span *= radix;
    const bool dense = span <= kDenseLimit;

    const IntegerForm ia(a.terms_);
    const IntegerForm ib(b.terms_);

    std::vector<std::uint64_t> index_b;
    if (dense) {
        index_b.reserve(b.terms_.size());
        for (const auto& t : b.terms_) index_b.push_back(radix_index(t.monomial, generators, radix));
    }

    std::vector<mpz_class> accumulators;
    std::vector<Monomial> slots;
    std::vector<std::int32_t> dense_slot;
    std::unordered_map<std::uint64_t, std::size_t> sparse_slot;
    if (dense) dense_slot.assign(span, -1);

    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        const Monomial ma = a.terms_[i].monomial;
        const int room = d - ma.degree();
        if (room < 0) break;
        const std::uint64_t index_a = dense ? radix_index(ma, generators, radix) : 0;
        for (std::size_t j = 0; j < b.terms_.size(); ++j) {
            const Monomial mb = b.terms_[j].monomial;
            if (mb.degree() > room) break;  // terms are degree-sorted
            std::size_t slot;
            if (dense) {
                auto& s = dense_slot[index_a + index_b[j]];
                if (s < 0) {
                    s = static_cast<std::int32_t>(slots.size());
                    slots.push_back(ma * mb);
                    accumulators.emplace_back(0);
                }
                slot = static_cast<std::size_t>(s);
            } else {
                const Monomial product = ma * mb;
                auto [it, inserted] = sparse_slot.try_emplace(product.key(), slots.size());
                if (inserted) {
                    slots.push_back(product);
                    accumulators.emplace_back(0);
                }
                slot = it->second;
            }
            mpz_addmul(accumulators[slot].get_mpz_t(), ia.numerators[i].get_mpz_t(), ib.numerators[j].get_mpz_t());
        }
    }

    const mpz_class denominator = ia.denominator * ib.denominator;
    out.terms_.reserve(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (sgn(accumulators[s]) == 0 || !model.survives(slots[s])) continue;
        out.terms_.push_back({slots[s], Rational(accumulators[s], denominator)});
    }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const Term& x, const Term& y) { return CanonicalOrder{}(x.monomial, y.monomial); });
    return out;
}

bool operator==(const GradedClass& a, const GradedClass& b) {
    return same_model(a.model_, b.model_) && a.terms_ == b.terms_;
}

std::string GradedClass::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        const bool negative = t.coefficient.sign() < 0;
        const Rational magnitude = negative ? -t.coefficient : t.coefficient;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (t.monomial.is_unit()) {
            out += magnitude.to_string();
        } else if (magnitude == Rational(1)) {
            out += model_->format_monomial(t.monomial);
        } else {
            out += magnitude.to_string() + " * " + model_->format_monomial(t.monomial);
        }
    }
    return out;
}

GradedClass normalize_monomials(std::vector<Term> raw, const ModelPtr& model) {
    GradedClass out(model);
    std::sort(raw.begin(), raw.end(), [](const Term& x, const Term& y) { return CanonicalOrder{}(x.monomial, y.monomial); });
    for (auto& t : raw) {
        for (int g = model->generator_count(); g < kMaxGenerators; ++g) {
            if (t.monomial.exponent(g) != 0) throw SchemaError("monomial references an unknown generator");
        }
        if (!model->survives(t.monomial)) continue;
        if (!out.terms_.empty() && out.terms_.back().monomial == t.monomial) {
            out.terms_.back().coefficient += t.coefficient;
            if (out.terms_.back().coefficient.is_zero()) out.terms_.pop_back();
        } else if (!t.coefficient.is_zero()) {
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

GradedClass normalize(const RawTerms& raw, const ModelPtr& model) {
    std::vector<Term> packed;
    packed.reserve(raw.size());
    for (const auto& [exponents, coefficient] : raw) {
        if (exponents.size() > static_cast<std::size_t>(model->generator_count())) {
            bool trailing_nonzero = false;
            for (std::size_t g = static_cast<std::size_t>(model->generator_count()); g < exponents.size(); ++g) {
                trailing_nonzero = trailing_nonzero || exponents[g] != 0;
            }
            if (trailing_nonzero) throw SchemaError("exponent vector references an unknown generator");
        }
        long degree = 0;
        for (int e : exponents) {
            if (e < 0) throw SchemaError("negative exponent in raw term");
            degree += e;
        }
        if (degree > model->truncation_degree()) continue;
        const std::size_t used = std::min(exponents.size(), static_cast<std::size_t>(model->generator_count()));
        packed.push_back({Monomial::from_exponents(std::span<const int>(exponents.data(), used)), coefficient});
    }
    return normalize_monomials(std::move(packed), model);
}

GradedClass scale(const Rational& q, GradedClass a) { return a *= q; }

GradedClass power(const GradedClass& x, unsigned k) {
    GradedClass result = GradedClass::constant(x.model(), 1);
    GradedClass base = x;
    while (k > 0) {
        if (k & 1U) result *= base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

GradedClass exp_nilpotent(const GradedClass& x) {
    if (!x.constant_term().is_zero()) throw AlgebraDomainError("exp_nilpotent: argument has a nonzero constant term");
    GradedClass result = GradedClass::constant(x.model(), 1);
    GradedClass term = result;
    for (int k = 1; k <= x.model()->truncation_degree(); ++k) {
        term = term * x;
        if (term.is_zero()) break;
        term *= Rational(1, k);
        result += term;
    }
    return result;
}

GradedClass invert_unit(const GradedClass& x) {
    const Rational c = x.constant_term();
    if (c.is_zero()) throw AlgebraDomainError("invert_unit: class has no constant term");
    const Rational inverse_c = Rational(1) / c;
    // x = c (1 + u) with u nilpotent; 1/x = (1/c) Sum (-u)^k.
    GradedClass minus_u = GradedClass::constant(x.model(), 1) - x * inverse_c;
    GradedClass result = GradedClass::constant(x.model(), 1);
    GradedClass term = result;
    for (int k = 1; k <= x.model()->truncation_degree(); ++k) {
        term = term * minus_u;
        if (term.is_zero()) break;
        result += term;
    }
    return result * inverse_c;
}

GradedClass integrate_exp(const ModelPtr& model, const Rational& a, const Rational& b, int i) {
    if (i < 0 || i >= model->divisor_count()) throw SchemaError("divisor index " + std::to_string(i) + " out of range");
    std::vector<Term> raw;
    Rational a_power = a;  // a^{k+1}
    Rational b_power = b;
    for (int k = 0; k <= model->truncation_degree(); ++k) {
        Rational c = (b_power - a_power) / factorial(static_cast<unsigned>(k + 1));
        if (k % 2 == 1) c = -c;
        std::vector<int> exponents(static_cast<std::size_t>(i) + 1, 0);
        exponents[static_cast<std::size_t>(i)] = k;
        raw.push_back({Monomial::from_exponents(exponents), c});
        a_power *= a;
        b_power *= b;
    }
    return normalize_monomials(std::move(raw), model);
}

GradedClass eab_factor(const ModelPtr& model, const Rational& a, int i) {
    return integrate_exp(model, Rational(0), a, i);
}

}  // namespace parch
