#include <retrograph/order_statistic.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

using retrograph::OrderStatisticTree;

TEST_CASE("rank counts keys strictly below the bound") {
    OrderStatisticTree t;
    for (std::int64_t k : {5, 1, 9, 5}) t.insert(k);
    CHECK(t.size() == 4);
    CHECK(t.rank_below(1) == 0);
    CHECK(t.rank_below(5) == 1);
    CHECK(t.rank_below(6) == 3);  // duplicates both counted
    CHECK(t.rank_below(100) == 4);

    CHECK(t.erase(5));
    CHECK_FALSE(t.erase(42));
    CHECK(t.rank_below(6) == 2);
    CHECK(t.keys() == std::vector<std::int64_t>{1, 5, 9});
}

TEST_CASE("random ops match a sorted-vector reference") {
    std::mt19937_64 rng(2024);
    OrderStatisticTree t;
    std::vector<std::int64_t> ref;
    for (int step = 0; step < 5000; ++step) {
        std::int64_t k = static_cast<std::int64_t>(rng() % 500) - 250;
        if (!ref.empty() && rng() % 3 == 0) {
            std::int64_t victim = ref[rng() % ref.size()];
            REQUIRE(t.erase(victim));
            ref.erase(std::find(ref.begin(), ref.end(), victim));
        } else {
            t.insert(k);
            ref.push_back(k);
        }
        if (step % 50 == 0) {
            std::int64_t bound = static_cast<std::int64_t>(rng() % 600) - 300;
            std::size_t want = static_cast<std::size_t>(
                std::count_if(ref.begin(), ref.end(),
                              [&](std::int64_t x) { return x < bound; }));
            REQUIRE(t.rank_below(bound) == want);
            REQUIRE(t.size() == ref.size());
        }
    }
}
