#include "support.hpp"

using namespace testing;

TEST_CASE("bundle validation") {
    const auto m = model(1, 3, {"H"});
    CHECK_THROWS_AS(bundle(m, {}, {}), BundleError);
    CHECK_THROWS_AS(bundle(m, {{q(-1, 2)}}, {{"1 + H", {0}}}), BundleError);
    CHECK_THROWS_AS(bundle(m, {{q(-1, 2)}}, {{"H^2", {0}}}), BundleError);
    CHECK_THROWS_AS(bundle(m, {{q(-1, 2)}}, {{"H", {1}}}), BundleError);
    CHECK_THROWS_AS(bundle(m, {{q(-1, 2)}}, {{"H", {}}}), BundleError);
    const auto other = model(1, 4, {"H"});
    std::vector<LineSummand> foreign{{GradedClass::parse(other, "H"), {0}}};
    CHECK_THROWS_AS(ParabolicBundle(m, {WeightFunction({q(0)})}, foreign), BundleError);
    CHECK(bundle(m, {{q(-1, 2)}}, {}).rank() == 0);
}

TEST_CASE("ch_vb") {
    const auto m = model(1, 2, {"H"});
    CHECK(ch_vb(bundle(m, {{q(0)}}, {{"", {0}}})) == cls(m, "1"));
    CHECK(ch_vb(bundle(m, {{q(0)}}, {{"", {0}}, {"H", {0}}})) == cls(m, "2 + H + 1/2*H^2"));
    CHECK(ch_vb(bundle(m, {{q(0)}}, {})).is_zero());
}

TEST_CASE("twist vectors and ch_vb_sigma") {
    const auto m = model(2, 4, {"H"});
    const auto b = bundle(m, {{q(-1, 2), q(-1, 4)}, {q(-1, 3)}}, {{"H", {1, 0}}, {"D1 - H", {0, 0}}});
    const std::vector<Tread> top{2, 1};
    const std::vector<Tread> bottom{0, 0};
    CHECK(twist_vector(b, top, b.summands()[0]) == std::vector<int>{0, 0});
    CHECK(twist_vector(b, bottom, b.summands()[0]) == std::vector<int>{-1, -1});
    const std::vector<Tread> middle{1, 1};
    CHECK(twist_vector(b, middle, b.summands()[0]) == std::vector<int>{-1, 0});
    CHECK(twist_vector(b, middle, b.summands()[1]) == std::vector<int>{0, 0});

    CHECK(ch_vb_sigma(b, top) == ch_vb(b));
    CHECK(ch_vb_sigma(b, bottom) == ch_vb(b) * exp_nilpotent(-GradedClass::total_divisor(m)));

    const auto line = model(1, 1);
    const std::vector<Tread> eta{0};
    CHECK(ch_vb_sigma(bundle(line, {{q(-1, 2)}}, {{"", {0}}}), eta) == cls(line, "1 - D1"));
    CHECK_THROWS_AS(ch_vb_sigma(b, std::vector<Tread>{3, 0}), BundleError);
}

TEST_CASE("graded pieces and pushforwards") {
    const auto m = model(2, 3, {}, {"D1*D2"});
    const auto b = bundle(m, {{q(-1, 2)}, {q(-1, 2), q(0)}}, {{"", {0, 1}}});
    const GradedPiece none = graded_piece(b, PieceIndex{{1}, {0}});
    CHECK(none.rank == 0);
    CHECK(none.pushforward_ch.is_zero());

    const GradedPiece p = graded_piece(b, PieceIndex{{0}, {0}});
    CHECK(p.rank == 1);
    CHECK(p.pushforward_ch == cls(m, "D1"));
    CHECK(graded_piece(b, PieceIndex{{0, 1}, {0, 1}}).pushforward_ch.is_zero());  // D1*D2 = 0
    CHECK(graded_piece(b, PieceIndex{{0, 1}, {0, 1}}).rank == 1);
    CHECK_THROWS_AS(graded_piece(b, PieceIndex{{1, 0}, {0, 0}}), BundleError);

    const auto line = model(1, 2);
    const auto o = bundle(line, {{q(-1, 2)}}, {{"", {0}}});
    CHECK(ch_of_pushforward(o, PieceIndex{{0}, {0}}) == cls(line, "D1 - 1/2*D1^2"));
}

TEST_CASE("pushforward classes of a multi-summand piece") {
    const auto m = model(1, 4, {"H", "K"});
    const auto b = bundle(m, {{q(-1, 3), q(0)}}, {{"H", {0}}, {"2*K - H", {0}}, {"K", {1}}});
    const GradedPiece p = graded_piece(b, PieceIndex{{0}, {0}});
    CHECK(p.rank == 2);
    CHECK(p.members == std::vector<int>{0, 1});
    const GradedClass D1 = cls(m, "D1");
    CHECK(p.c1_pushforward == cls(m, "2*K") * D1);
    CHECK(p.c1_squared_pushforward == cls(m, "4*K^2") * D1);
    CHECK(p.c2_pushforward == cls(m, "H") * cls(m, "2*K - H") * D1);
    CHECK(p.pushforward_ch == (exp_nilpotent(cls(m, "H")) + exp_nilpotent(cls(m, "2*K - H"))) * D1);
    // Leading term is rank times the intersection class.
    CHECK(p.pushforward_ch.grade(1) == Rational(p.rank) * D1);
}

TEST_CASE("quotient classes") {
    const auto m = model(1, 3);
    const auto b = bundle(m, {{q(-1, 2), q(-1, 4)}}, {{"", {0}}, {"", {1}}});
    const std::vector<int> I{0};
    CHECK(quotient_class(b, I, std::vector<Tread>{2}).is_zero());
    CHECK(quotient_class(b, I, std::vector<Tread>{0}) ==
          ch_of_pushforward(b, PieceIndex{{0}, {0}}) + ch_of_pushforward(b, PieceIndex{{0}, {1}}));
    CHECK(quotient_class(b, I, std::vector<Tread>{1}) == ch_of_pushforward(b, PieceIndex{{0}, {1}}));

    const auto single = bundle(m, {{q(-1, 2), q(-1, 4)}}, {{"", {1}}});
    CHECK(quotient_class(single, I, std::vector<Tread>{0}) == ch_of_pushforward(single, PieceIndex{{0}, {1}}));
}

TEST_CASE("subset and piece enumeration order") {
    const auto subsets = divisor_subsets(3);
    const std::vector<std::vector<int>> expected{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
    CHECK(subsets == expected);
    CHECK(divisor_subsets(0).empty());

    const auto m = model(2, 4);
    const auto b = bundle(m, {{q(-1, 2), q(0)}, {q(-1, 3)}}, {{"", {1, 0}}, {"", {0, 0}}, {"D2", {1, 0}}});
    const auto pieces = nonzero_pieces(b);
    std::vector<PieceIndex> order;
    for (const auto& p : pieces) order.push_back(p.index);
    CHECK(std::is_sorted(order.begin(), order.end(), [](const PieceIndex& x, const PieceIndex& y) {
        if (x.divisors.size() != y.divisors.size()) return x.divisors.size() < y.divisors.size();
        return x < y;
    }));
    CHECK(pieces.size() == 5);
    CHECK(pieces[0].index == PieceIndex{{0}, {0}});
    CHECK(pieces[1].rank == 2);
}

TEST_CASE("rank identities") {
    InstanceRng seeds(404);
    InstanceLimits lim;
    for (int round = 0; round < 60; ++round) {
        const ParabolicBundle b = random_instance(static_cast<std::uint64_t>(seeds.uniform(0, 1L << 40)), lim);
        const int n = b.divisor_count();
        for (int i1 = 0; i1 < n; ++i1) {
            for (int i2 = i1 + 1; i2 < n; ++i2) {
                for (Riser l1 : b.ladder(i1).risers()) {
                    int split = 0;
                    for (Riser l2 : b.ladder(i2).risers()) split += graded_piece(b, PieceIndex{{i1, i2}, {l1, l2}}).rank;
                    CHECK(split == graded_piece(b, PieceIndex{{i1}, {l1}}).rank);
                }
            }
        }
        // Summing piece ranks under sigma counts summands with every jump below sigma.
        for_each_multi_index(b.tread_counts(), [&](std::span<const int> sigma) {
            for (const auto& subset : divisor_subsets(n)) {
                int below = 0;
                for (const auto& p : pieces_over(b, subset)) {
                    bool all = true;
                    for (std::size_t k = 0; k < subset.size(); ++k) all = all && p.index.risers[k] < sigma[static_cast<std::size_t>(subset[k])];
                    if (all) below += p.rank;
                }
                int direct = 0;
                for (const auto& s : b.summands()) {
                    bool all = true;
                    for (int i : subset) all = all && s.jumps[static_cast<std::size_t>(i)] < sigma[static_cast<std::size_t>(i)];
                    if (all) ++direct;
                }
                CHECK(below == direct);
            }
        });
    }
}

TEST_CASE("derived classes are additive over summands") {
    InstanceLimits lim;
    lim.min_summands = 1;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const ParabolicBundle b = random_instance(seed, lim);
        const ParabolicBundle c = random_summands_like(b, seed + 1000, lim);
        const ParabolicBundle sum = b.direct_sum(c);
        CHECK(ch_vb(sum) == ch_vb(b) + ch_vb(c));
        for_each_multi_index(b.tread_counts(), [&](std::span<const int> sigma) {
            CHECK(ch_vb_sigma(sum, sigma) == ch_vb_sigma(b, sigma) + ch_vb_sigma(c, sigma));
        });
        for (const auto& subset : divisor_subsets(b.divisor_count())) {
            for (const auto& p : pieces_over(b, subset)) {
                CHECK(graded_piece(sum, p.index).pushforward_ch == p.pushforward_ch + graded_piece(c, p.index).pushforward_ch);
            }
            const std::vector<Tread> bottom(subset.size(), 0);
            CHECK(quotient_class(sum, subset, bottom) == quotient_class(b, subset, bottom) + quotient_class(c, subset, bottom));
        }
    }
}
