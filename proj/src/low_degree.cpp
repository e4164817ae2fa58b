// Closed forms for ch_0 .. ch_3 in terms of ranks and line classes of the
// associated-graded pieces.

#include "parch/engine.hpp"

namespace parch {

namespace {

// Accumulates named contributions, keeping first-seen order.
class TermList {
public:
    explicit TermList(ModelPtr model) : model_(std::move(model)) {}

    void add(const std::string& name, const GradedClass& value) {
        for (auto& t : terms_) {
            if (t.name == name) {
                t.value += value;
                return;
            }
        }
        terms_.push_back({name, value});
    }
    void declare(const std::string& name) { add(name, GradedClass(model_)); }

    [[nodiscard]] std::vector<NamedTerm> take() { return std::move(terms_); }

private:
    ModelPtr model_;
    std::vector<NamedTerm> terms_;
};

struct PieceData {
    const GradedPiece* piece;
    std::vector<Rational> alpha;  // weight at each jump of the piece
    Rational rank;
    GradedClass d_i;  // product of the piece's divisors
};

std::vector<PieceData> piece_data(const ParabolicBundle& bundle, const std::vector<GradedPiece>& pieces) {
    std::vector<PieceData> out;
    for (const auto& p : pieces) {
        PieceData data{&p, {}, Rational(p.rank), divisor_product(bundle.model(), p.index.divisors)};
        for (std::size_t k = 0; k < p.index.divisors.size(); ++k) {
            data.alpha.push_back(bundle.weight(p.index.divisors[k])(p.index.risers[k]));
        }
        out.push_back(std::move(data));
    }
    return out;
}

Rational half() { return Rational(1, 2); }
Rational sixth() { return Rational(1, 6); }

}  // namespace

GradedClass LowDegreeResult::total() const {
    GradedClass out = ch[0];
    for (int k = 1; k < 4; ++k) out += ch[static_cast<std::size_t>(k)];
    return out;
}

GradedClass sum_terms(const ModelPtr& model, std::span<const NamedTerm> terms) {
    GradedClass out(model);
    for (const auto& t : terms) out += t.value;
    return out;
}

LowDegreeResult ch_par_low_degree(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    const GradedClass vb = ch_vb(bundle);
    const GradedClass D = GradedClass::total_divisor(model);
    const GradedClass D2 = D * D;
    const auto pieces = nonzero_pieces(bundle);
    const auto data = piece_data(bundle, pieces);
    auto div = [&](int i) { return GradedClass::divisor(model, i); };

    LowDegreeResult result{{vb.grade(0), GradedClass(model), GradedClass(model), GradedClass(model)}, {}, {}, {}};

    GradedClass ch1 = vb.grade(1);
    TermList t2(model);
    t2.add("ch2_vb", vb.grade(2));
    t2.declare("alpha_c1_pushforward");
    t2.declare("alpha_squared_rank_Di_squared");
    t2.declare("pair_alpha_alpha_rank_Dp");

    TermList t3(model);
    t3.add("ch3_vb", vb.grade(3));
    TermList s3(model);
    s3.add("ch3_vb", vb.grade(3));

    for (const auto& pd : data) {
        const GradedPiece& p = *pd.piece;
        const auto q = p.index.divisors.size();
        const Rational& r = pd.rank;
        if (q == 1) {
            const int i = p.index.divisors[0];
            const Rational a = pd.alpha[0];
            const Rational b = a + 1;
            const GradedClass Di = div(i);
            const GradedClass Di2 = Di * Di;
            const GradedClass& P1 = p.c1_pushforward;
            const GradedClass c1sq = p.c1_squared_pushforward;
            const GradedClass c2 = p.c2_pushforward;
            const GradedClass sumsq = c1sq - c2 * Rational(2);

            ch1 -= a * r * Di;

            t2.add("alpha_c1_pushforward", -a * P1);
            t2.add("alpha_squared_rank_Di_squared", half() * a * a * r * Di2);

            t3.add("alpha_rank_Di_D2", -half() * a * r * Di * D2);
            t3.add("alpha2_c1_pushforward_Di", half() * (a * a + 2 * a) * P1 * Di);
            t3.add("alpha3_rank_Di3", -sixth() * (a.pow(3) + 3 * a * a + 3 * a) * r * Di2 * Di);
            t3.add("alpha_c1_pushforward_D", -a * P1 * D);
            t3.add("alpha2_rank_Di2_D", half() * (a * a + 2 * a) * r * Di2 * D);
            t3.add("alpha_c1_squared_pushforward", -half() * a * c1sq);
            t3.add("alpha_c2_pushforward", a * c2);

            s3.add("shifted_rank_Di_D2", -half() * b * r * Di * D2);
            s3.add("shifted_c1_pushforward_Di", half() * b * b * P1 * Di);
            s3.add("shifted_rank_Di3", -sixth() * b.pow(3) * r * Di2 * Di);
            s3.add("shifted_c1_pushforward_D", -b * P1 * D);
            s3.add("shifted_rank_Di2_D", half() * b * b * r * Di2 * D);
            s3.add("shifted_ch2_pushforward", -half() * b * sumsq);
            s3.add("unit_rank_Di_D2", half() * r * Di * D2);
            s3.add("unit_c1_pushforward_Di", -half() * P1 * Di);
            s3.add("unit_rank_Di3", sixth() * r * Di2 * Di);
            s3.add("unit_c1_pushforward_D", P1 * D);
            s3.add("unit_rank_Di2_D", -half() * r * Di2 * D);
            s3.add("unit_ch2_pushforward", half() * sumsq);
        } else if (q == 2) {
            const int i1 = p.index.divisors[0];
            const int i2 = p.index.divisors[1];
            const Rational a1 = pd.alpha[0];
            const Rational a2 = pd.alpha[1];
            const Rational b1 = a1 + 1;
            const Rational b2 = a2 + 1;
            const GradedClass& Dp = pd.d_i;
            const GradedClass& P1 = p.c1_pushforward;

            t2.add("pair_alpha_alpha_rank_Dp", a1 * a2 * r * Dp);

            t3.add("pair_rank_Di2_Dp", -half() * (a2 * a2 * a1 + 2 * a1 * a2 + a1 + a2 * a2 + 2 * a2) * r * div(i2) * Dp);
            t3.add("pair_rank_Di1_Dp", -half() * (a1 * a1 * a2 + 2 * a1 * a2 + a2 + a1 * a1 + 2 * a1) * r * div(i1) * Dp);
            t3.add("pair_rank_D_Dp", (a1 * a2 + a1 + a2) * r * D * Dp);
            t3.add("pair_c1_pushforward", (a1 * a2 + a1 + a2) * P1);

            s3.add("shifted_pair_rank_Di2_Dp", -half() * b1 * b2 * b2 * r * div(i2) * Dp);
            s3.add("shifted_pair_rank_Di1_Dp", -half() * b1 * b1 * b2 * r * div(i1) * Dp);
            s3.add("shifted_pair_rank_D_Dp", b1 * b2 * r * D * Dp);
            s3.add("shifted_pair_c1_pushforward", b1 * b2 * P1);
            s3.add("unit_pair_rank_D_Dp", -r * D * Dp);
            s3.add("unit_pair_c1_pushforward", -P1);
            s3.add("unit_pair_rank_Di2_Dp", half() * r * div(i2) * Dp);
            s3.add("unit_pair_rank_Di1_Dp", half() * r * div(i1) * Dp);
        } else if (q == 3) {
            const Rational& a1 = pd.alpha[0];
            const Rational& a2 = pd.alpha[1];
            const Rational& a3 = pd.alpha[2];
            const Rational e = a1 * a2 * a3 + a1 * a2 + a2 * a3 + a1 * a3 + a1 + a2 + a3;
            t3.add("triple_rank_Dp", -e * r * pd.d_i);
            s3.add("shifted_triple_rank_Dp", -(a1 + 1) * (a2 + 1) * (a3 + 1) * r * pd.d_i);
            s3.add("unit_triple_rank_Dp", r * pd.d_i);
        }
    }

    result.ch[1] = std::move(ch1);
    result.ch2_terms = t2.take();
    result.ch[2] = sum_terms(model, result.ch2_terms);
    result.ch3_terms = t3.take();
    result.ch3_shifted_terms = s3.take();
    result.ch[3] = sum_terms(model, result.ch3_terms);
    return result;
}

GradedClass mochizuki_symmetrized_ch2(const ParabolicBundle& bundle) {
    const ModelPtr& model = bundle.model();
    const int n = bundle.divisor_count();
    const auto summands = bundle.summands();
    GradedClass result = ch_vb(bundle).grade(2);

    for (int i = 0; i < n; ++i) {
        const GradedClass Di = GradedClass::divisor(model, i);
        for (Riser lambda : bundle.ladder(i).risers()) {
            const Rational a = bundle.weight(i)(lambda);
            GradedClass c1(model);
            int rank = 0;
            for (const auto& s : summands) {
                if (s.jumps[static_cast<std::size_t>(i)] != lambda) continue;
                c1 += s.c1;
                ++rank;
            }
            result -= a * c1 * Di;
            result += Rational(1, 2) * a * a * Rational(rank) * Di * Di;
        }
    }

    // Ordered pairs i != k, each unordered pair counted twice.
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if (i == k) continue;
            const GradedClass Dp = GradedClass::divisor(model, i) * GradedClass::divisor(model, k);
            for (Riser li : bundle.ladder(i).risers()) {
                for (Riser lk : bundle.ladder(k).risers()) {
                    int rank = 0;
                    for (const auto& s : summands) {
                        if (s.jumps[static_cast<std::size_t>(i)] == li && s.jumps[static_cast<std::size_t>(k)] == lk) ++rank;
                    }
                    if (rank == 0) continue;
                    result += Rational(1, 2) * bundle.weight(i)(li) * bundle.weight(k)(lk) * Rational(rank) * Dp;
                }
            }
        }
    }
    return result;
}

TermDiagnostic diagnose_terms(const GradedClass& reference, std::span<const NamedTerm> terms) {
    TermDiagnostic out;
    const GradedClass residual = reference - sum_terms(reference.model(), terms);
    if (residual.is_zero()) return out;
    out.agree = false;
    out.residual = residual;
    out.first_monomial = residual.model()->format_monomial(residual.terms().front().monomial);
    out.coefficient_difference = residual.terms().front().coefficient;
    for (const auto& t : terms) {
        if (t.value.is_zero()) continue;
        const Term& lead = t.value.terms().front();
        const Rational ratio = residual.coefficient(lead.monomial) / lead.coefficient;
        if (!ratio.is_zero() && t.value * ratio == residual) out.suspects.push_back(t.name);
    }
    return out;
}

}  // namespace parch
