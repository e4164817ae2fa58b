#pragma once

// Helpers shared by the unit tests: small models, class literals, random classes.

#include "closed_form.hpp"
#include "parch/oracle.hpp"

#include <doctest.h>

#include <map>
#include <ostream>
#include <string>

namespace parch {

inline std::ostream& operator<<(std::ostream& os, const GradedClass& x) { return os << x.to_string(); }

}  // namespace parch

namespace testing {

using namespace parch;

inline ModelPtr model(int n, int d, std::vector<std::string> extras = {}, std::vector<std::string> relations = {}) {
    const ModelPtr bare = IntersectionModel::make(n, d, extras);
    std::vector<Monomial> rel;
    for (const auto& r : relations) rel.push_back(bare->parse_monomial(r));
    return IntersectionModel::make(n, d, extras, rel);
}

inline GradedClass cls(const ModelPtr& m, const std::string& text) { return GradedClass::parse(m, text); }

inline Rational q(long p, long r = 1) { return Rational(p, r); }

/// Random class with small coefficients; constant term forced to `constant` when given.
inline GradedClass random_class(InstanceRng& rng, const ModelPtr& m, int max_terms, std::optional<Rational> constant = {}) {
    RawTerms raw;
    const int g = m->generator_count();
    const long terms = rng.uniform(0, max_terms);
    for (long t = 0; t < terms; ++t) {
        std::vector<int> e(static_cast<std::size_t>(g), 0);
        const long degree = rng.uniform(0, m->truncation_degree());
        for (long k = 0; k < degree; ++k) ++e[static_cast<std::size_t>(rng.uniform(0, g - 1))];
        raw.emplace_back(e, Rational(rng.uniform(-5, 5), rng.uniform(1, 4)));
    }
    GradedClass x = normalize(raw, m);
    if (constant) x = x - GradedClass::constant(m, x.constant_term()) + GradedClass::constant(m, *constant);
    return x;
}

}  // namespace testing

namespace testing {

struct SummandLiteral {
    std::string c1;
    std::vector<int> jumps;
};

inline ParabolicBundle bundle(const ModelPtr& m, const std::vector<std::vector<Rational>>& ladders,
                              const std::vector<SummandLiteral>& summands) {
    std::vector<WeightFunction> weights;
    for (const auto& l : ladders) weights.emplace_back(l);
    std::vector<LineSummand> list;
    for (const auto& s : summands) {
        list.push_back({s.c1.empty() ? GradedClass(m) : GradedClass::parse(m, s.c1), s.jumps});
    }
    return ParabolicBundle(m, std::move(weights), std::move(list));
}

}  // namespace testing
