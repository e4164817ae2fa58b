#include "parch/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace parch {

void InstanceLimits::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(max_divisors >= 1, "max_divisors must be >= 1");
    require(max_risers >= 1, "max_risers must be >= 1");
    require(min_summands >= 0 && min_summands <= max_summands, "summand bounds must satisfy 0 <= min <= max");
    require(truncation_degree >= 0, "truncation_degree must be >= 0");
    require(weight_denominator >= 1, "weight_denominator must be >= 1");
    require(c1_bound >= 0, "c1_bound must be >= 0");
    require(relation_probability >= 0 && relation_probability <= 1, "relation_probability must lie in [0, 1]");
    require(tie_probability >= 0 && tie_probability <= 1, "tie_probability must lie in [0, 1]");
    require(extra_classes >= 0, "extra_classes must be >= 0");
    require(max_divisors + extra_classes <= kMaxGenerators, "too many generators for the ring");
}

long InstanceRng::uniform(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(engine_());
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
}

bool InstanceRng::chance(double p) {
    const std::uint64_t x = engine_() >> 32;
    return static_cast<double>(x) < p * 4294967296.0;
}

namespace {

std::vector<std::string> extra_names(int count) {
    std::vector<std::string> names;
    for (int k = 0; k < count; ++k) names.push_back(k == 0 ? "H" : "H" + std::to_string(k + 1));
    return names;
}

LineSummand random_summand(InstanceRng& rng, const ModelPtr& model, std::span<const WeightFunction> weights, int c1_bound) {
    GradedClass c1(model);
    for (int g = 0; g < model->generator_count(); ++g) {
        const long c = rng.uniform(-c1_bound, c1_bound);
        if (c != 0) c1 += GradedClass::generator(model, g, Rational(c));
    }
    std::vector<Riser> jumps;
    for (const auto& w : weights) jumps.push_back(static_cast<Riser>(rng.uniform(0, w.ladder().riser_count() - 1)));
    return {std::move(c1), std::move(jumps)};
}

std::vector<LineSummand> random_summand_list(InstanceRng& rng, const ModelPtr& model,
                                             std::span<const WeightFunction> weights, const InstanceLimits& limits) {
    const long count = rng.uniform(limits.min_summands, limits.max_summands);
    std::vector<LineSummand> summands;
    for (long j = 0; j < count; ++j) summands.push_back(random_summand(rng, model, weights, limits.c1_bound));
    return summands;
}

}  // namespace

ParabolicBundle random_instance(std::uint64_t seed, const InstanceLimits& limits) {
    limits.validate();
    InstanceRng rng(seed);
    const int n = static_cast<int>(rng.uniform(1, limits.max_divisors));
    int cap = limits.truncation_degree > 0 ? limits.truncation_degree : IntersectionModel::default_truncation(n);
    cap = std::min(cap, kMaxDegree);
    const int d = rng.chance(0.75) ? cap : static_cast<int>(rng.uniform(1, cap));

    std::vector<Monomial> relations;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.chance(limits.relation_probability)) {
                relations.push_back(Monomial::generator(i) * Monomial::generator(j));
            }
        }
    }
    const ModelPtr model = IntersectionModel::make(n, d, extra_names(limits.extra_classes), relations);

    std::vector<WeightFunction> weights;
    for (int i = 0; i < n; ++i) {
        const int risers = static_cast<int>(rng.uniform(1, limits.max_risers));
        std::vector<Rational> w;
        for (int r = 0; r < risers; ++r) {
            if (limits.zero_weights) {
                w.emplace_back(0);
            } else if (r > 0 && rng.chance(limits.tie_probability)) {
                w.push_back(w.back());
            } else {
                const long q = rng.uniform(1, limits.weight_denominator);
                const long p = rng.uniform(-(q - 1), 0);  // p/q in (-1, 0]
                w.emplace_back(p, q);
            }
        }
        std::sort(w.begin(), w.end());
        weights.emplace_back(std::move(w));
    }
    auto summands = random_summand_list(rng, model, weights, limits);
    return ParabolicBundle(model, std::move(weights), std::move(summands));
}

ParabolicBundle random_summands_like(const ParabolicBundle& skeleton, std::uint64_t seed, const InstanceLimits& limits) {
    limits.validate();
    InstanceRng rng(seed);
    return skeleton.with_summands(random_summand_list(rng, skeleton.model(), skeleton.weights(), limits));
}

namespace {

// Integral of exp(-Sum beta_i D_i) over the box prod (lo_i, hi_i], expanded
// monomial by monomial: beta^k / k! integrates to (hi^{k+1} - lo^{k+1}) / (k+1)!.
GradedClass box_integral(const ModelPtr& model, std::span<const Rational> lo, std::span<const Rational> hi) {
    const int n = model->divisor_count();
    const int d = model->truncation_degree();
    RawTerms raw;
    std::vector<int> exponents(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> recurse = [&](int i, int remaining) {
        if (i == n) {
            Rational c(1);
            for (int m = 0; m < n; ++m) {
                const unsigned k = static_cast<unsigned>(exponents[static_cast<std::size_t>(m)]);
                Rational moment = hi[static_cast<std::size_t>(m)].pow(k + 1) - lo[static_cast<std::size_t>(m)].pow(k + 1);
                moment /= Rational(static_cast<long>(k) + 1);
                moment /= factorial(k);
                if (k % 2 == 1) moment = -moment;
                c *= moment;
            }
            raw.emplace_back(exponents, c);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            exponents[static_cast<std::size_t>(i)] = k;
            recurse(i + 1, remaining - k);
        }
        exponents[static_cast<std::size_t>(i)] = 0;
    };
    recurse(0, d);
    return normalize(raw, model);
}

}  // namespace

GradedClass oracle_integral(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    const int n = bundle.divisor_count();
    if (n == 0) {
        GradedClass total(model);
        for (const auto& s : bundle.summands()) total += exp_nilpotent(s.c1);
        return total;
    }

    // Breakpoints of the cell grid along each axis of the unit cube.
    std::vector<std::vector<Rational>> cuts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::set<Rational> points{Rational(0), Rational(1)};
        for (const auto& w : bundle.weight(i).weights()) points.insert(w + 1);
        cuts[static_cast<std::size_t>(i)].assign(points.begin(), points.end());
    }
    std::vector<int> cells;
    for (const auto& c : cuts) cells.push_back(static_cast<int>(c.size()) - 1);

    GradedClass numerator(model);
    std::vector<Rational> lo(static_cast<std::size_t>(n));
    std::vector<Rational> hi(static_cast<std::size_t>(n));
    for_each_multi_index(cells, [&](std::span<const int> cell) {
        for (int i = 0; i < n; ++i) {
            lo[static_cast<std::size_t>(i)] = cuts[static_cast<std::size_t>(i)][static_cast<std::size_t>(cell[static_cast<std::size_t>(i)])];
            hi[static_cast<std::size_t>(i)] = cuts[static_cast<std::size_t>(i)][static_cast<std::size_t>(cell[static_cast<std::size_t>(i)]) + 1];
        }
        // On this cell E_beta is constant: summand j is twisted by D_i exactly
        // when beta_i has passed 1 + alpha_i at the summand's jump.
        GradedClass sheaf(model);
        for (const auto& s : bundle.summands()) {
            GradedClass exponent = s.c1;
            for (int i = 0; i < n; ++i) {
                const Rational mid = (lo[static_cast<std::size_t>(i)] + hi[static_cast<std::size_t>(i)]) * Rational(1, 2);
                if (mid > bundle.weight(i)(s.jumps[static_cast<std::size_t>(i)]) + 1) {
                    exponent += GradedClass::divisor(model, i);
                }
            }
            sheaf += exp_nilpotent(exponent);
        }
        if (!sheaf.is_zero()) numerator += sheaf * box_integral(model, lo, hi);
    });

    const std::vector<Rational> zeros(static_cast<std::size_t>(n), Rational(0));
    const std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
    return numerator * invert_unit(box_integral(model, zeros, ones));
}

namespace {

Check koszul_check(const ParabolicBundle& bundle) {
    std::string detail;
    int failures = 0;
    int total = 0;
    const KoszulExpansion expansion(bundle);
    for_each_multi_index(bundle.tread_counts(), [&](std::span<const int> sigma) {
        ++total;
        if (expansion.evaluate(sigma) == ch_vb_sigma(bundle, sigma)) return;
        if (failures++ == 0) {
            std::ostringstream os;
            os << "first failing tread index (";
            for (std::size_t i = 0; i < sigma.size(); ++i) os << (i ? "," : "") << sigma[i];
            os << ")";
            detail = os.str();
        }
    });
    if (failures == 0) detail = std::to_string(total) + " tread indices";
    return {"koszul", failures == 0, detail};
}

Check rank_partition_check(const ParabolicBundle& bundle) {
    const int n = bundle.divisor_count();
    for (int i1 = 0; i1 < n; ++i1) {
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == i2) continue;
            for (Riser lambda : bundle.ladder(i1).risers()) {
                const int single = graded_piece(bundle, PieceIndex{{i1}, {lambda}}).rank;
                int split = 0;
                for (Riser mu : bundle.ladder(i2).risers()) {
                    PieceIndex pair = i1 < i2 ? PieceIndex{{i1, i2}, {lambda, mu}} : PieceIndex{{i2, i1}, {mu, lambda}};
                    split += graded_piece(bundle, pair).rank;
                }
                if (single != split) {
                    return {"rank_partition", false,
                            "divisor " + std::to_string(i1 + 1) + " riser " + std::to_string(lambda) + " against divisor " +
                                std::to_string(i2 + 1)};
                }
            }
        }
    }
    return {"rank_partition", true, ""};
}

Check dom_partition_check(const ParabolicBundle& bundle) {
    for (int i = 0; i < bundle.divisor_count(); ++i) {
        const auto& alpha = bundle.weight(i);
        Rational edge(0);
        Rational length(0);
        for (Tread t = 0; t < alpha.ladder().tread_count(); ++t) {
            const Interval dom = dom_bounds(alpha, t);
            const Interval alt = dom_from_prolongation(alpha, t);
            const bool same = dom.empty() ? alt.empty() : dom == alt;
            if (dom.lo != edge || !same) {
                return {"dom_partition", false, "divisor " + std::to_string(i + 1) + " tread " + std::to_string(t)};
            }
            edge = dom.hi;
            length += dom.length();
        }
        if (edge != Rational(1) || length != Rational(1)) {
            return {"dom_partition", false, "divisor " + std::to_string(i + 1) + " does not reach 1"};
        }
    }
    return {"dom_partition", true, ""};
}

Check term_check(const std::string& name, const GradedClass& reference, std::span<const NamedTerm> terms) {
    const TermDiagnostic diag = diagnose_terms(reference, terms);
    if (diag.agree) return {name, true, ""};
    std::string detail = "residual coefficient " + diag.coefficient_difference->to_string() + " at " + diag.first_monomial;
    if (!diag.suspects.empty()) {
        detail += "; proportional to";
        for (const auto& s : diag.suspects) detail += " " + s;
    }
    return {name, false, detail};
}

}  // namespace

ChernReport cross_check(const ParabolicBundle& bundle) {
    const LowDegreeResult low = ch_par_low_degree(bundle);
    const GradedClass rr = ch_par_rr(bundle);
    ChernReport report = compare_methods({
        {"oracle", oracle_integral(bundle), -1},
        {"integral", ch_par_integral(bundle), -1},
        {"general", ch_par_general(bundle), -1},
        {"rr", rr, -1},
        {"lowdegree", low.total(), 3},
    });

    report.checks.push_back(koszul_check(bundle));

    const GrothendieckCheck g = verify_grothendieck_relation(bundle);
    report.checks.push_back({"grothendieck", g.holds, g.holds ? "" : "residual " + g.residual.to_string()});

    const GradedClass m2 = mochizuki_symmetrized_ch2(bundle);
    report.checks.push_back({"mochizuki", m2 == low.ch[2], ""});

    report.checks.push_back(term_check("ch3_closed_form", rr.grade(3), low.ch3_terms));
    report.checks.push_back(term_check("ch3_shifted_form", rr.grade(3), low.ch3_shifted_terms));
    report.checks.push_back(rank_partition_check(bundle));
    report.checks.push_back(dom_partition_check(bundle));
    return report;
}

}  // namespace parch
