#pragma once

// A locally abelian parabolic bundle, modelled as a direct sum of parabolic
// line summands, and the classes derived from its filtrations.
//
// Each divisor intersection D_I is taken to be irreducible, and restriction
// to D_I followed by pushforward is multiplication by prod_{i in I} D_i.

#include "parch/chow.hpp"
#include "parch/ladder.hpp"

#include <span>
#include <vector>

namespace parch {

class BundleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct LineSummand {
    GradedClass c1;            ///< homogeneous of degree 1
    std::vector<Riser> jumps;  ///< one riser per divisor
};

class ParabolicBundle {
public:
    /// Validates one weight function per divisor and, for each summand, a
    /// degree-1 c1 in this model and a valid jump riser on every divisor.
    ParabolicBundle(ModelPtr model, std::vector<WeightFunction> weights, std::vector<LineSummand> summands);

    [[nodiscard]] const ModelPtr& model() const { return model_; }
    [[nodiscard]] int divisor_count() const { return model_->divisor_count(); }
    [[nodiscard]] int rank() const { return static_cast<int>(summands_.size()); }
    [[nodiscard]] std::span<const WeightFunction> weights() const { return weights_; }
    [[nodiscard]] const WeightFunction& weight(int i) const { return weights_.at(static_cast<std::size_t>(i)); }
    [[nodiscard]] Ladder ladder(int i) const { return weight(i).ladder(); }
    [[nodiscard]] std::span<const LineSummand> summands() const { return summands_; }
    /// Tread count per divisor.
    [[nodiscard]] std::vector<int> tread_counts() const;

    /// Same ladders and weights, different summands.
    [[nodiscard]] ParabolicBundle with_summands(std::vector<LineSummand> summands) const;
    /// Direct sum; both bundles must share model and weights.
    [[nodiscard]] ParabolicBundle direct_sum(const ParabolicBundle& other) const;
    /// Every c1 shifted by the degree-1 class L.
    [[nodiscard]] ParabolicBundle twisted(const GradedClass& L) const;

private:
    ModelPtr model_;
    std::vector<WeightFunction> weights_;
    std::vector<LineSummand> summands_;
};

/// Sub-multi-index (I, lambda): strictly increasing divisor indices with one riser each.
struct PieceIndex {
    std::vector<int> divisors;
    std::vector<Riser> risers;

    friend bool operator==(const PieceIndex&, const PieceIndex&) = default;
    friend auto operator<=>(const PieceIndex&, const PieceIndex&) = default;
};

struct GradedPiece {
    PieceIndex index;
    int rank = 0;
    GradedClass pushforward_ch;  ///< sum of exp(c1_j) * prod D_i over matching summands
    GradedClass c1_pushforward;  ///< sum of c1_j * prod D_i
    GradedClass c1_squared_pushforward;  ///< (sum of c1_j)^2 * prod D_i
    GradedClass c2_pushforward;  ///< e2(c1_j) * prod D_i
    std::vector<int> members;    ///< indices of the matching summands
};

/// prod_{i in I} D_i, 0-based indices.
GradedClass divisor_product(const ModelPtr& model, std::span<const int> divisors);

GradedClass ch_vb(const ParabolicBundle& bundle);

/// gamma_i = 0 when sigma_i >= m_+(lambda_i), else -1.
std::vector<int> twist_vector(const ParabolicBundle& bundle, std::span<const Tread> sigma, const LineSummand& summand);

/// Sum_j exp(c1_j + Sum_i gamma_i D_i).
GradedClass ch_vb_sigma(const ParabolicBundle& bundle, std::span<const Tread> sigma);

GradedPiece graded_piece(const ParabolicBundle& bundle, const PieceIndex& index);

/// prod_{i in I} eab_factor(1, i) * pushforward_ch.
GradedClass ch_of_pushforward(const ParabolicBundle& bundle, const PieceIndex& index);

/// Sum over risers lambda with sigma_i < m_+(lambda_i) on I of ch_of_pushforward.
GradedClass quotient_class(const ParabolicBundle& bundle, std::span<const int> divisors, std::span<const Tread> sigma);

/// Every nonempty subset I in increasing size, then lexicographically.
std::vector<std::vector<int>> divisor_subsets(int divisors);

/// All pieces with nonzero rank, in (|I|, I, lambda) lexicographic order.
std::vector<GradedPiece> nonzero_pieces(const ParabolicBundle& bundle);

/// All pieces over a fixed I, including rank-0 ones, lambda lexicographic.
std::vector<GradedPiece> pieces_over(const ParabolicBundle& bundle, std::span<const int> divisors);

}  // namespace parch
