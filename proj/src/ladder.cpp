#include "parch/ladder.hpp"

#include <algorithm>
#include <string>

namespace parch {

Ladder::Ladder(int risers) : risers_(risers) {
    if (risers_ < 1) throw LadderError(LadderError::Kind::too_few_treads, "a ladder needs at least two treads");
}

std::vector<Riser> Ladder::risers() const {
    std::vector<Riser> out(static_cast<std::size_t>(risers_));
    for (int r = 0; r < risers_; ++r) out[static_cast<std::size_t>(r)] = r;
    return out;
}

Tread Ladder::m_plus(Riser r) const {
    if (!valid_riser(r)) throw LadderError(LadderError::Kind::bad_riser, "riser " + std::to_string(r) + " out of range");
    return r + 1;
}

Tread Ladder::m_minus(Riser r) const {
    if (!valid_riser(r)) throw LadderError(LadderError::Kind::bad_riser, "riser " + std::to_string(r) + " out of range");
    return r;
}

Riser Ladder::c_plus(Tread t) const {
    if (!valid_tread(t)) throw LadderError(LadderError::Kind::bad_tread, "tread " + std::to_string(t) + " out of range");
    if (t == tau()) throw LadderError(LadderError::Kind::undefined_riser, "the top tread has no upper riser");
    return t;
}

Riser Ladder::c_minus(Tread t) const {
    if (!valid_tread(t)) throw LadderError(LadderError::Kind::bad_tread, "tread " + std::to_string(t) + " out of range");
    if (t == eta()) throw LadderError(LadderError::Kind::undefined_riser, "the bottom tread has no lower riser");
    return t - 1;
}

Interval Interval::intersect(const Interval& other) const {
    return {std::max(lo, other.lo), std::min(hi, other.hi)};
}

WeightFunction::WeightFunction(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw LadderError(LadderError::Kind::too_few_treads, "a weight function needs at least one riser");
    for (std::size_t r = 0; r < weights_.size(); ++r) {
        const Rational& w = weights_[r];
        if (w <= Rational(-1) || w > Rational(0)) {
            throw LadderError(LadderError::Kind::weight_out_of_range,
                              "weight " + w.to_string() + " of riser " + std::to_string(r) + " is outside (-1, 0]");
        }
        if (r > 0 && w < weights_[r - 1]) {
            throw LadderError(LadderError::Kind::decreasing_weights,
                              "weight of riser " + std::to_string(r) + " is below the weight of riser " +
                                  std::to_string(r - 1));
        }
    }
}

WeightFunction WeightFunction::trivial(int risers) {
    return WeightFunction(std::vector<Rational>(static_cast<std::size_t>(std::max(risers, 1)), Rational(0)));
}

const Rational& WeightFunction::operator()(Riser r) const {
    if (r < 0 || r >= static_cast<int>(weights_.size())) {
        throw LadderError(LadderError::Kind::bad_riser, "riser " + std::to_string(r) + " out of range");
    }
    return weights_[static_cast<std::size_t>(r)];
}

bool WeightFunction::is_trivial() const {
    return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w.is_zero(); });
}

Rational WeightFunction::alpha_plus(Tread t) const {
    const Ladder l = ladder();
    if (t == l.tau()) return Rational(0);
    return (*this)(l.c_plus(t));
}

Rational WeightFunction::alpha_minus(Tread t) const {
    const Ladder l = ladder();
    if (t == l.eta()) return Rational(-1);
    return (*this)(l.c_minus(t));
}

ExtendedIndex::ExtendedIndex(const Ladder& ladder, long level, Tread tread) : level_(level), tread_(tread) {
    if (!ladder.valid_tread(tread)) throw LadderError(LadderError::Kind::bad_tread, "tread " + std::to_string(tread) + " out of range");
    if (tread_ == ladder.tau()) {
        ++level_;
        tread_ = ladder.eta();
    }
}

ExtendedRiser extended_c_plus(const Ladder& ladder, const ExtendedIndex& phi) {
    return {phi.level(), ladder.c_plus(phi.tread())};
}

ExtendedRiser extended_c_minus(const Ladder& ladder, const ExtendedIndex& phi) {
    if (phi.tread() == ladder.eta()) return {phi.level() - 1, ladder.riser_count() - 1};
    return {phi.level(), ladder.c_minus(phi.tread())};
}

Rational extended_weight(const WeightFunction& alpha, const ExtendedRiser& r) {
    return Rational(r.level) + alpha(r.riser);
}

Interval weight_interval(const WeightFunction& alpha, const ExtendedIndex& phi) {
    const Ladder l = alpha.ladder();
    return {extended_weight(alpha, extended_c_minus(l, phi)), extended_weight(alpha, extended_c_plus(l, phi))};
}

Interval dom_bounds(const WeightFunction& alpha, Tread t) {
    if (!alpha.ladder().valid_tread(t)) throw LadderError(LadderError::Kind::bad_tread, "tread " + std::to_string(t) + " out of range");
    return {alpha.alpha_minus(t) + 1, alpha.alpha_plus(t) + 1};
}

Interval dom_from_prolongation(const WeightFunction& alpha, Tread t) {
    return weight_interval(alpha, ExtendedIndex(alpha.ladder(), 1, t)).intersect({Rational(0), Rational(1)});
}

void for_each_multi_index(std::span<const int> sizes, const std::function<void(std::span<const int>)>& f) {
    if (std::any_of(sizes.begin(), sizes.end(), [](int s) { return s <= 0; })) return;
    std::vector<int> index(sizes.size(), 0);
    while (true) {
        f(index);
        std::size_t k = index.size();
        while (k > 0) {
            --k;
            if (++index[k] < sizes[k]) break;
            index[k] = 0;
            if (k == 0) return;
        }
        if (index.empty()) return;
    }
}

}  // namespace parch
