#pragma once

// Ordered index sets along one divisor component.
//
// A ladder with m risers has treads 0..m; tread 0 is the bottom (eta) and
// tread m the top (tau). Riser r sits between treads r and r+1. Weights
// attach to risers, lie in (-1, 0] and never decrease going up.

#include "parch/rational.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace parch {

using Tread = int;
using Riser = int;

class LadderError : public std::invalid_argument {
public:
    enum class Kind { too_few_treads, bad_tread, bad_riser, undefined_riser, weight_out_of_range, decreasing_weights };

    LadderError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    [[nodiscard]] Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class Ladder {
public:
    /// Ladder with the given number of risers (>= 1), i.e. risers + 1 treads.
    explicit Ladder(int risers);

    [[nodiscard]] int riser_count() const { return risers_; }
    [[nodiscard]] int tread_count() const { return risers_ + 1; }
    [[nodiscard]] Tread eta() const { return 0; }
    [[nodiscard]] Tread tau() const { return risers_; }
    [[nodiscard]] std::vector<Riser> risers() const;

    [[nodiscard]] bool valid_tread(Tread t) const { return t >= 0 && t <= risers_; }
    [[nodiscard]] bool valid_riser(Riser r) const { return r >= 0 && r < risers_; }

    /// Upper and lower tread of a riser.
    [[nodiscard]] Tread m_plus(Riser r) const;
    [[nodiscard]] Tread m_minus(Riser r) const;
    /// Riser just above / below a tread. Undefined at tau / eta respectively.
    [[nodiscard]] Riser c_plus(Tread t) const;
    [[nodiscard]] Riser c_minus(Tread t) const;

    friend bool operator==(const Ladder&, const Ladder&) = default;

private:
    int risers_;
};

/// Half-open interval (lo, hi]; empty when lo >= hi.
struct Interval {
    Rational lo;
    Rational hi;

    [[nodiscard]] bool empty() const { return lo >= hi; }
    [[nodiscard]] Rational length() const { return empty() ? Rational(0) : hi - lo; }
    [[nodiscard]] bool contains(const Rational& x) const { return lo < x && x <= hi; }
    [[nodiscard]] Interval intersect(const Interval& other) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

class WeightFunction {
public:
    /// Throws LadderError when a weight leaves (-1, 0] or the list decreases.
    explicit WeightFunction(std::vector<Rational> weights);
    /// All-zero weights on a ladder with the given riser count.
    static WeightFunction trivial(int risers = 1);

    [[nodiscard]] Ladder ladder() const { return Ladder(static_cast<int>(weights_.size())); }
    [[nodiscard]] std::span<const Rational> weights() const { return weights_; }
    [[nodiscard]] const Rational& operator()(Riser r) const;
    [[nodiscard]] bool is_trivial() const;

    /// Weight of the riser above t, 0 at tau.
    [[nodiscard]] Rational alpha_plus(Tread t) const;
    /// Weight of the riser below t, -1 at eta.
    [[nodiscard]] Rational alpha_minus(Tread t) const;

    friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

private:
    std::vector<Rational> weights_;
};

/// Element of the Z-prolongation of a ladder, (level, tread) with
/// (k, tau) identified with (k+1, eta). Always stored with tread != tau.
class ExtendedIndex {
public:
    ExtendedIndex(const Ladder& ladder, long level, Tread tread);

    [[nodiscard]] long level() const { return level_; }
    [[nodiscard]] Tread tread() const { return tread_; }

    friend bool operator==(const ExtendedIndex&, const ExtendedIndex&) = default;

private:
    long level_;
    Tread tread_;
};

struct ExtendedRiser {
    long level;
    Riser riser;

    friend bool operator==(const ExtendedRiser&, const ExtendedRiser&) = default;
};

ExtendedRiser extended_c_plus(const Ladder& ladder, const ExtendedIndex& phi);
ExtendedRiser extended_c_minus(const Ladder& ladder, const ExtendedIndex& phi);
/// k + alpha(r).
Rational extended_weight(const WeightFunction& alpha, const ExtendedRiser& r);

/// (alpha(C_-(phi)), alpha(C_+(phi))] on the prolongation.
Interval weight_interval(const WeightFunction& alpha, const ExtendedIndex& phi);

/// (alpha_-(t) + 1, alpha_+(t) + 1].
Interval dom_bounds(const WeightFunction& alpha, Tread t);
/// The same domain computed as Int(alpha, (1, t)) intersected with (0, 1].
Interval dom_from_prolongation(const WeightFunction& alpha, Tread t);

/// Calls f on every multi-index with 0 <= idx[i] < sizes[i], last coordinate fastest.
void for_each_multi_index(std::span<const int> sizes, const std::function<void(std::span<const int>)>& f);

}  // namespace parch
