#include "parch/parabolic.hpp"

#include <map>
#include <string>

namespace parch {

ParabolicBundle::ParabolicBundle(ModelPtr model, std::vector<WeightFunction> weights, std::vector<LineSummand> summands)
    : model_(std::move(model)), weights_(std::move(weights)), summands_(std::move(summands)) {
    if (!model_) throw BundleError("bundle without an intersection model");
    if (static_cast<int>(weights_.size()) != model_->divisor_count()) {
        throw BundleError("expected " + std::to_string(model_->divisor_count()) + " weight functions, got " +
                          std::to_string(weights_.size()));
    }
    for (std::size_t j = 0; j < summands_.size(); ++j) {
        const LineSummand& s = summands_[j];
        const std::string where = "summand " + std::to_string(j) + ": ";
        if (!(*s.c1.model() == *model_)) throw BundleError(where + "c1 belongs to a different model");
        if (!s.c1.is_homogeneous(1)) throw BundleError(where + "c1 is not homogeneous of degree 1");
        if (static_cast<int>(s.jumps.size()) != model_->divisor_count()) {
            throw BundleError(where + "expected one jump per divisor");
        }
        for (int i = 0; i < model_->divisor_count(); ++i) {
            if (!ladder(i).valid_riser(s.jumps[static_cast<std::size_t>(i)])) {
                throw BundleError(where + "jump on divisor " + std::to_string(i + 1) + " is not a riser of its ladder");
            }
        }
    }
}

std::vector<int> ParabolicBundle::tread_counts() const {
    std::vector<int> out;
    out.reserve(weights_.size());
    for (const auto& w : weights_) out.push_back(w.ladder().tread_count());
    return out;
}

ParabolicBundle ParabolicBundle::with_summands(std::vector<LineSummand> summands) const {
    return ParabolicBundle(model_, weights_, std::move(summands));
}

ParabolicBundle ParabolicBundle::direct_sum(const ParabolicBundle& other) const {
    if (!(*model_ == *other.model_) || weights_ != other.weights_) {
        throw BundleError("direct sum needs identical models and weights");
    }
    std::vector<LineSummand> all = summands_;
    all.insert(all.end(), other.summands_.begin(), other.summands_.end());
    return with_summands(std::move(all));
}

ParabolicBundle ParabolicBundle::twisted(const GradedClass& L) const {
    if (!L.is_homogeneous(1)) throw BundleError("twisting class must be homogeneous of degree 1");
    std::vector<LineSummand> shifted = summands_;
    for (auto& s : shifted) s.c1 += L;
    return with_summands(std::move(shifted));
}

GradedClass divisor_product(const ModelPtr& model, std::span<const int> divisors) {
    std::vector<int> exponents(static_cast<std::size_t>(model->generator_count()), 0);
    for (int i : divisors) {
        if (i < 0 || i >= model->divisor_count()) throw SchemaError("divisor index out of range");
        ++exponents[static_cast<std::size_t>(i)];
    }
    return normalize(RawTerms{{exponents, Rational(1)}}, model);
}

GradedClass ch_vb(const ParabolicBundle& bundle) {
    GradedClass total(bundle.model());
    for (const auto& s : bundle.summands()) total += exp_nilpotent(s.c1);
    return total;
}

std::vector<int> twist_vector(const ParabolicBundle& bundle, std::span<const Tread> sigma, const LineSummand& summand) {
    if (static_cast<int>(sigma.size()) != bundle.divisor_count()) throw BundleError("tread multi-index has the wrong length");
    std::vector<int> gamma(sigma.size(), 0);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        const Ladder l = bundle.ladder(static_cast<int>(i));
        if (!l.valid_tread(sigma[i])) throw BundleError("tread " + std::to_string(sigma[i]) + " out of range");
        gamma[i] = sigma[i] >= l.m_plus(summand.jumps[i]) ? 0 : -1;
    }
    return gamma;
}

GradedClass ch_vb_sigma(const ParabolicBundle& bundle, std::span<const Tread> sigma) {
    GradedClass total(bundle.model());
    for (const auto& s : bundle.summands()) {
        const auto gamma = twist_vector(bundle, sigma, s);
        GradedClass exponent = s.c1;
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            if (gamma[i] != 0) exponent += GradedClass::divisor(bundle.model(), static_cast<int>(i), gamma[i]);
        }
        total += exp_nilpotent(exponent);
    }
    return total;
}

namespace {

void check_index(const ParabolicBundle& bundle, const PieceIndex& index) {
    if (index.divisors.size() != index.risers.size()) throw BundleError("piece index needs one riser per divisor");
    for (std::size_t k = 0; k < index.divisors.size(); ++k) {
        const int i = index.divisors[k];
        if (i < 0 || i >= bundle.divisor_count()) throw BundleError("piece references an unknown divisor");
        if (k > 0 && index.divisors[k - 1] >= i) throw BundleError("piece divisors must be strictly increasing");
        if (!bundle.ladder(i).valid_riser(index.risers[k])) throw BundleError("piece riser out of range");
    }
}

GradedPiece make_piece(const ParabolicBundle& bundle, PieceIndex index, std::vector<int> members) {
    const ModelPtr& model = bundle.model();
    const GradedClass d_i = divisor_product(model, index.divisors);
    GradedClass exp_sum(model);
    GradedClass c1_sum(model);
    GradedClass c1_squares(model);
    for (int j : members) {
        const GradedClass& c1 = bundle.summands()[static_cast<std::size_t>(j)].c1;
        exp_sum += exp_nilpotent(c1);
        c1_sum += c1;
        c1_squares += c1 * c1;
    }
    const GradedClass c1_sq = c1_sum * c1_sum;
    const GradedClass e2 = (c1_sq - c1_squares) * Rational(1, 2);
    GradedPiece piece{std::move(index),
                      static_cast<int>(members.size()),
                      exp_sum * d_i,
                      c1_sum * d_i,
                      c1_sq * d_i,
                      e2 * d_i,
                      std::move(members)};
    return piece;
}

}  // namespace

GradedPiece graded_piece(const ParabolicBundle& bundle, const PieceIndex& index) {
    check_index(bundle, index);
    std::vector<int> members;
    const auto summands = bundle.summands();
    for (std::size_t j = 0; j < summands.size(); ++j) {
        bool match = true;
        for (std::size_t k = 0; k < index.divisors.size() && match; ++k) {
            match = summands[j].jumps[static_cast<std::size_t>(index.divisors[k])] == index.risers[k];
        }
        if (match) members.push_back(static_cast<int>(j));
    }
    return make_piece(bundle, index, std::move(members));
}

GradedClass ch_of_pushforward(const ParabolicBundle& bundle, const PieceIndex& index) {
    GradedClass result = graded_piece(bundle, index).pushforward_ch;
    for (int i : index.divisors) result *= eab_factor(bundle.model(), 1, i);
    return result;
}

GradedClass quotient_class(const ParabolicBundle& bundle, std::span<const int> divisors, std::span<const Tread> sigma) {
    if (divisors.size() != sigma.size()) throw BundleError("quotient needs one tread per divisor");
    GradedClass total(bundle.model());
    for (const auto& piece : pieces_over(bundle, divisors)) {
        bool below = true;
        for (std::size_t k = 0; k < divisors.size() && below; ++k) {
            below = sigma[k] < bundle.ladder(divisors[k]).m_plus(piece.index.risers[k]);
        }
        if (below && piece.rank > 0) total += ch_of_pushforward(bundle, piece.index);
    }
    return total;
}

std::vector<std::vector<int>> divisor_subsets(int divisors) {
    std::vector<std::vector<int>> out;
    for (int size = 1; size <= divisors; ++size) {
        std::vector<int> subset(static_cast<std::size_t>(size));
        for (int k = 0; k < size; ++k) subset[static_cast<std::size_t>(k)] = k;
        while (true) {
            out.push_back(subset);
            int k = size - 1;
            while (k >= 0 && subset[static_cast<std::size_t>(k)] == divisors - size + k) --k;
            if (k < 0) break;
            ++subset[static_cast<std::size_t>(k)];
            for (int m = k + 1; m < size; ++m) subset[static_cast<std::size_t>(m)] = subset[static_cast<std::size_t>(m - 1)] + 1;
        }
    }
    return out;
}

std::vector<GradedPiece> nonzero_pieces(const ParabolicBundle& bundle) {
    std::vector<GradedPiece> out;
    const auto summands = bundle.summands();
    for (const auto& subset : divisor_subsets(bundle.divisor_count())) {
        std::map<std::vector<Riser>, std::vector<int>> groups;
        for (std::size_t j = 0; j < summands.size(); ++j) {
            std::vector<Riser> key;
            key.reserve(subset.size());
            for (int i : subset) key.push_back(summands[j].jumps[static_cast<std::size_t>(i)]);
            groups[key].push_back(static_cast<int>(j));
        }
        for (auto& [risers, members] : groups) {
            out.push_back(make_piece(bundle, PieceIndex{subset, risers}, std::move(members)));
        }
    }
    return out;
}

std::vector<GradedPiece> pieces_over(const ParabolicBundle& bundle, std::span<const int> divisors) {
    std::vector<int> sizes;
    for (int i : divisors) sizes.push_back(bundle.ladder(i).riser_count());
    std::vector<GradedPiece> out;
    const std::vector<int> subset(divisors.begin(), divisors.end());
    for_each_multi_index(sizes, [&](std::span<const int> lambda) {
        out.push_back(graded_piece(bundle, PieceIndex{subset, std::vector<Riser>(lambda.begin(), lambda.end())}));
    });
    return out;
}

}  // namespace parch
