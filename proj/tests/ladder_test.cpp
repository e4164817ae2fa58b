#include "support.hpp"

using namespace testing;

TEST_CASE("risers and tread maps") {
    CHECK(Ladder(1).risers().size() == 1);
    CHECK(Ladder(2).risers().size() == 2);
    CHECK_THROWS_AS(Ladder(0), LadderError);

    const Ladder l(2);  // treads eta=0, a=1, tau=2
    CHECK(l.m_plus(0) == 1);
    CHECK(l.m_minus(1) == 1);
    CHECK(l.c_plus(l.eta()) == 0);
    CHECK(l.c_minus(l.tau()) == 1);
    try {
        (void)l.c_plus(l.tau());
        FAIL("c_plus(tau) must throw");
    } catch (const LadderError& e) {
        CHECK(e.kind() == LadderError::Kind::undefined_riser);
    }
    CHECK_THROWS_AS((void)l.c_minus(l.eta()), LadderError);
    CHECK_THROWS_AS((void)l.m_plus(2), LadderError);

    for (int m = 1; m <= 5; ++m) {
        const Ladder k(m);
        for (Tread t = 0; t < k.tau(); ++t) {
            CHECK(k.m_minus(k.c_plus(t)) == t);
            CHECK(k.m_plus(k.c_plus(t)) == t + 1);
        }
        for (Riser r : k.risers()) CHECK(k.c_plus(k.m_minus(r)) == r);
    }
}

TEST_CASE("weight function invariants") {
    CHECK_NOTHROW(WeightFunction({q(0)}));
    CHECK_NOTHROW(WeightFunction({q(-1, 3), q(-1, 3), q(0)}));
    auto kind_of = [](std::vector<Rational> w) {
        try {
            WeightFunction f(std::move(w));
        } catch (const LadderError& e) {
            return e.kind();
        }
        return LadderError::Kind::bad_tread;
    };
    CHECK(kind_of({q(-1)}) == LadderError::Kind::weight_out_of_range);
    CHECK(kind_of({q(1, 5)}) == LadderError::Kind::weight_out_of_range);
    CHECK(kind_of({q(-1, 4), q(-1, 2)}) == LadderError::Kind::decreasing_weights);
    CHECK(kind_of({}) == LadderError::Kind::too_few_treads);

    const WeightFunction w({q(-1, 2), q(-1, 4)});
    CHECK(w.alpha_minus(0) == q(-1));
    CHECK(w.alpha_plus(2) == q(0));
    CHECK(w.alpha_plus(0) == q(-1, 2));
    CHECK(w.alpha_minus(2) == q(-1, 4));
    CHECK(WeightFunction::trivial(3).is_trivial());
}

TEST_CASE("prolongation") {
    const WeightFunction w({q(-2, 3), q(-1, 5)});
    const Ladder l = w.ladder();
    CHECK(extended_weight(w, {0, 1}) == q(-1, 5));
    CHECK(extended_weight(w, {1, 1}) == q(4, 5));
    CHECK(extended_weight(w, {-2, 0}) == q(-8, 3));

    const ExtendedIndex top(l, 0, l.tau());
    CHECK(top == ExtendedIndex(l, 1, l.eta()));
    CHECK(extended_c_plus(l, top) == ExtendedRiser{1, 0});
    CHECK(extended_c_minus(l, ExtendedIndex(l, 3, 0)) == ExtendedRiser{2, 1});
    for (long k = -2; k <= 2; ++k) {
        for (Riser r : l.risers()) CHECK(extended_weight(w, {k + 1, r}) == extended_weight(w, {k, r}) + 1);
    }
}

TEST_CASE("domains") {
    const WeightFunction half({q(-1, 2)});
    CHECK(dom_bounds(half, 0) == Interval{q(0), q(1, 2)});
    CHECK(dom_bounds(half, 1) == Interval{q(1, 2), q(1)});

    const WeightFunction tie({q(-1, 3), q(-1, 3)});
    CHECK(dom_bounds(tie, 1) == Interval{q(2, 3), q(2, 3)});
    CHECK(dom_bounds(tie, 1).empty());
    CHECK(dom_bounds(tie, 1).length() == q(0));

    InstanceRng rng(5);
    for (int round = 0; round < 200; ++round) {
        std::vector<Rational> ws;
        const long m = rng.uniform(1, 5);
        for (long r = 0; r < m; ++r) {
            const long den = rng.uniform(1, 12);
            ws.emplace_back(rng.uniform(-(den - 1), 0), den);
        }
        std::sort(ws.begin(), ws.end());
        const WeightFunction w(ws);
        Rational edge(0);
        Rational total(0);
        for (Tread t = 0; t < w.ladder().tread_count(); ++t) {
            const Interval dom = dom_bounds(w, t);
            CHECK(dom.lo == edge);
            edge = dom.hi;
            total += dom.length();
            const Interval alt = dom_from_prolongation(w, t);
            if (dom.empty()) {
                CHECK(alt.empty());
            } else {
                CHECK(alt == dom);
            }
        }
        CHECK(edge == q(1));
        CHECK(total == q(1));
    }
}

TEST_CASE("multi-index enumeration is lexicographic") {
    std::vector<std::vector<int>> seen;
    const std::vector<int> sizes{2, 3};
    for_each_multi_index(sizes, [&](std::span<const int> idx) { seen.emplace_back(idx.begin(), idx.end()); });
    REQUIRE(seen.size() == 6);
    CHECK(seen.front() == std::vector<int>{0, 0});
    CHECK(seen[1] == std::vector<int>{0, 1});
    CHECK(seen[3] == std::vector<int>{1, 0});
    CHECK(seen.back() == std::vector<int>{1, 2});

    int calls = 0;
    for_each_multi_index(std::vector<int>{}, [&](std::span<const int>) { ++calls; });
    CHECK(calls == 1);
    for_each_multi_index(std::vector<int>{3, 0}, [&](std::span<const int>) { ++calls; });
    CHECK(calls == 1);
}
