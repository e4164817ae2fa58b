#include "parch/engine.hpp"

#include <algorithm>
#include <map>

namespace parch {

namespace {

GradedClass one(const ModelPtr& model) { return GradedClass::constant(model, 1); }

GradedClass exp_total_divisor(const ModelPtr& model) { return exp_nilpotent(GradedClass::total_divisor(model)); }

// Per-divisor series factors, memoised by weight.
class FactorCache {
public:
    explicit FactorCache(ModelPtr model) : model_(std::move(model)) {}

    const GradedClass& eab(const Rational& a, int i) {
        auto key = std::make_pair(i, a);
        auto it = eab_.find(key);
        if (it == eab_.end()) it = eab_.emplace(key, eab_factor(model_, a, i)).first;
        return it->second;
    }

    // e^{D_i} (1 - e^{-(alpha+1) D_i}) / (e^{D_i} - 1), with e^{D_i} - 1 = e^{D_i} D_i eab(1).
    const GradedClass& bracket(const Rational& alpha, int i) {
        auto key = std::make_pair(i, alpha);
        auto it = bracket_.find(key);
        if (it == bracket_.end()) {
            const GradedClass d_i = GradedClass::divisor(model_, i);
            const GradedClass e = exp_nilpotent(d_i);
            const GradedClass value = e * eab(alpha + 1, i) * invert_unit(eab(1, i)) * exp_nilpotent(-d_i);
            it = bracket_.emplace(key, value).first;
        }
        return it->second;
    }

private:
    struct Less {
        bool operator()(const std::pair<int, Rational>& x, const std::pair<int, Rational>& y) const {
            if (x.first != y.first) return x.first < y.first;
            return x.second < y.second;
        }
    };

    ModelPtr model_;
    std::map<std::pair<int, Rational>, GradedClass, Less> eab_;
    std::map<std::pair<int, Rational>, GradedClass, Less> bracket_;
};

int sign_of_size(std::size_t q) { return q % 2 == 0 ? 1 : -1; }

GradedClass pushforward_times_eab_one(FactorCache& cache, const GradedPiece& piece) {
    GradedClass value = piece.pushforward_ch;
    for (int i : piece.index.divisors) value *= cache.eab(1, i);
    return value;
}

}  // namespace

KoszulExpansion::KoszulExpansion(const ParabolicBundle& bundle)
    : ch_vb_(ch_vb(bundle)), divisors_(bundle.divisor_count()) {
    FactorCache cache(bundle.model());
    for (const auto& piece : nonzero_pieces(bundle)) {
        Summand s{piece.index.divisors, {}, pushforward_times_eab_one(cache, piece)};
        for (std::size_t k = 0; k < piece.index.divisors.size(); ++k) {
            s.upper_treads.push_back(bundle.ladder(piece.index.divisors[k]).m_plus(piece.index.risers[k]));
        }
        if (sign_of_size(piece.index.divisors.size()) < 0) s.value *= Rational(-1);
        terms_.push_back(std::move(s));
    }
}

GradedClass KoszulExpansion::evaluate(std::span<const Tread> sigma) const {
    if (static_cast<int>(sigma.size()) != divisors_) throw BundleError("tread multi-index has the wrong length");
    GradedClass total = ch_vb_;
    for (const auto& t : terms_) {
        bool below = true;
        for (std::size_t k = 0; k < t.divisors.size() && below; ++k) {
            below = sigma[static_cast<std::size_t>(t.divisors[k])] < t.upper_treads[k];
        }
        if (below) total += t.value;
    }
    return total;
}

GradedClass koszul_ch_sigma(const ParabolicBundle& bundle, std::span<const Tread> sigma) {
    return KoszulExpansion(bundle).evaluate(sigma);
}

GradedClass ch_par_integral(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    const int n = bundle.divisor_count();
    if (n == 0) return ch_vb(bundle);

    std::vector<std::vector<Interval>> domains(static_cast<std::size_t>(n));
    std::vector<std::vector<GradedClass>> integrals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& alpha = bundle.weight(i);
        for (Tread t = 0; t < alpha.ladder().tread_count(); ++t) {
            const Interval dom = dom_bounds(alpha, t);
            domains[static_cast<std::size_t>(i)].push_back(dom);
            // Substituting gamma = beta - 1 moves the domain into (-1, 0].
            integrals[static_cast<std::size_t>(i)].push_back(
                dom.empty() ? GradedClass(model) : integrate_exp(model, dom.lo - 1, dom.hi - 1, i));
        }
    }

    GradedClass numerator(model);
    const auto sizes = bundle.tread_counts();
    for_each_multi_index(sizes, [&](std::span<const int> sigma) {
        for (int i = 0; i < n; ++i) {
            if (domains[static_cast<std::size_t>(i)][static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])].empty()) return;
        }
        GradedClass term = ch_vb_sigma(bundle, sigma);
        for (int i = 0; i < n && !term.is_zero(); ++i) {
            term *= integrals[static_cast<std::size_t>(i)][static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])];
        }
        numerator += term;
    });

    GradedClass denominator = one(model);
    for (int i = 0; i < n; ++i) denominator *= eab_factor(model, 1, i);
    return numerator * invert_unit(denominator);
}

GradedClass ch_par_general(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    FactorCache cache(model);
    const GradedClass e_d = exp_total_divisor(model);
    GradedClass sum(model);
    for (const auto& piece : nonzero_pieces(bundle)) {
        GradedClass term = pushforward_times_eab_one(cache, piece);
        for (std::size_t k = 0; k < piece.index.divisors.size() && !term.is_zero(); ++k) {
            const int i = piece.index.divisors[k];
            term *= cache.bracket(bundle.weight(i)(piece.index.risers[k]), i);
        }
        if (sign_of_size(piece.index.divisors.size()) < 0) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    return ch_vb(bundle) * e_d + e_d * sum;
}

GradedClass ch_par_rr(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    FactorCache cache(model);
    GradedClass untwisted(model);
    GradedClass weighted(model);
    for (const auto& piece : nonzero_pieces(bundle)) {
        GradedClass a = piece.pushforward_ch;
        GradedClass b = piece.pushforward_ch;
        for (std::size_t k = 0; k < piece.index.divisors.size(); ++k) {
            const int i = piece.index.divisors[k];
            a *= cache.eab(1, i);
            b *= cache.eab(bundle.weight(i)(piece.index.risers[k]) + 1, i);
        }
        if (sign_of_size(piece.index.divisors.size()) < 0) {
            untwisted -= a;
            weighted -= b;
        } else {
            untwisted += a;
            weighted += b;
        }
    }
    const GradedClass e_d = exp_total_divisor(model);
    return ch_vb(bundle) - e_d * untwisted + e_d * weighted;
}

GrothendieckCheck verify_grothendieck_relation(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    FactorCache cache(model);
    GradedClass residual = ch_vb(bundle) * (one(model) - exp_nilpotent(-GradedClass::total_divisor(model)));
    for (const auto& piece : nonzero_pieces(bundle)) {
        GradedClass term = pushforward_times_eab_one(cache, piece);
        if (sign_of_size(piece.index.divisors.size()) < 0) {
            residual -= term;
        } else {
            residual += term;
        }
    }
    const bool holds = residual.is_zero();
    return {holds, std::move(residual)};
}

GradedClass truncate_to(const GradedClass& x, int k) {
    GradedClass out(x.model());
    for (int g = 0; g <= k; ++g) out += x.grade(g);
    return out;
}

bool ChernReport::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const MethodResult* ChernReport::find(std::string_view name) const {
    for (const auto& m : methods) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

ChernReport compare_methods(std::vector<MethodResult> methods) {
    ChernReport report;
    report.methods = std::move(methods);
    for (std::size_t a = 0; a < report.methods.size() && report.agreement; ++a) {
        for (std::size_t b = a + 1; b < report.methods.size() && report.agreement; ++b) {
            const MethodResult& x = report.methods[a];
            const MethodResult& y = report.methods[b];
            int cap = x.value.model()->truncation_degree();
            if (x.max_degree >= 0) cap = std::min(cap, x.max_degree);
            if (y.max_degree >= 0) cap = std::min(cap, y.max_degree);
            const GradedClass diff = truncate_to(x.value, cap) - truncate_to(y.value, cap);
            if (diff.is_zero()) continue;
            report.agreement = false;
            const Term& first = diff.terms().front();
            report.first_discrepancy = Discrepancy{x.name, y.name, x.value.model()->format_monomial(first.monomial),
                                                   first.coefficient};
        }
    }
    return report;
}

}  // namespace parch
