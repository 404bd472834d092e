#include <doctest.h>

#include <set>

#include "cuprank/cup.hpp"
#include "cuprank/errors.hpp"
#include "cuprank/rng.hpp"

using namespace cuprank;

namespace {

ContextSchema small_schema() {
    return ContextSchema(
        {
            {"Device", {"Mobile", "Desktop"}},
            {"Day", {"Friday", "Sunday"}},
        },
        "1");
}

EncodedVector make_vec(std::vector<std::uint8_t> endorsement,
                       std::vector<std::uint8_t> context) {
    EncodedVector vec;
    vec.endorsement_dim = endorsement.size();
    vec.bits = std::move(endorsement);
    vec.bits.insert(vec.bits.end(), context.begin(), context.end());
    return vec;
}

ClusterModel fake_model(std::vector<std::uint32_t> assignment, std::size_t k) {
    ClusterModel model;
    model.k = k;
    model.assignment = std::move(assignment);
    return model;
}

WeightMatrix weights_from(std::vector<std::vector<std::uint64_t>> counts) {
    ContextCounts cc;
    cc.counts = std::move(counts);
    cc.context_dim = cc.counts.empty() ? 0 : cc.counts[0].size();
    return compute_weights(cc);
}

}  // namespace

TEST_CASE("projection counts context coordinates per cluster") {
    const auto schema = small_schema();
    // Three reviews on Mobile in cluster 0, one Desktop+Sunday in cluster 1.
    std::vector<EncodedVector> encoded = {
        make_vec({1, 0}, {1, 0, 0, 0}),
        make_vec({0, 1}, {1, 0, 0, 1}),
        make_vec({1, 1}, {1, 0, 1, 0}),
        make_vec({1, 0}, {0, 1, 0, 1}),
    };
    const auto model = fake_model({0, 0, 0, 1}, 2);
    const auto counts = project_to_context(encoded, model, schema);

    CHECK(counts.context_dim == 4);  // endorsement coordinates are gone
    CHECK(counts.counts[0][0] == 3);  // Mobile appears in all of cluster 0
    CHECK(counts.counts[0][1] == 0);
    CHECK(counts.counts[0][2] == 1);
    CHECK(counts.counts[0][3] == 1);
    CHECK(counts.counts[1][0] == 0);
    CHECK(counts.counts[1][1] == 1);
    CHECK(counts.counts[1][3] == 1);

    // Partition identity: per-coordinate totals match the corpus.
    for (std::size_t j = 0; j < counts.context_dim; ++j) {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < model.k; ++i) total += counts.counts[i][j];
        std::uint64_t corpus = 0;
        for (const auto& vec : encoded) corpus += vec.bits[vec.endorsement_dim + j];
        CHECK(total == corpus);
    }
}

TEST_CASE("weights are count ratios with the 0/0 convention") {
    const auto weights = weights_from({{10, 5, 0}, {0, 10, 0}});
    CHECK(weights.w[0][0] == doctest::Approx(1.0));
    CHECK(weights.w[0][1] == doctest::Approx(1.0 / 3.0));
    CHECK(weights.w[1][1] == doctest::Approx(2.0 / 3.0));
    CHECK(weights.column_totals[2] == 0);  // never observed: dropped downstream
}

TEST_CASE("pruning boundary is inclusive at the threshold") {
    // Coordinate 0: w = 19/100 = 0.19 for cluster 0. Coordinate 1: 20/100.
    const auto weights = weights_from({{19, 20}, {81, 80}});
    const auto cups = prune_cups(weights, 0.2);
    REQUIRE(cups.cups.size() == 2);
    CHECK(cups.cups[0].weighted_center.count(0) == 0);  // 0.19 dropped
    CHECK(cups.cups[0].weighted_center.count(1) == 1);  // 0.20 retained
    CHECK(cups.cups[0].weighted_center.at(1) == doctest::Approx(0.2));
    CHECK(cups.cups[1].weighted_center.size() == 2);
}

TEST_CASE("uniformly spread coordinates prune everywhere and clusters can drop") {
    // Six clusters, a coordinate spread evenly: w = 1/6 < 0.2 for all.
    std::vector<std::vector<std::uint64_t>> counts(6, {100, 0});
    counts[0][1] = 50;  // cluster 0 keeps a second coordinate at w = 1.0
    const auto weights = weights_from(counts);
    const auto cups = prune_cups(weights, 0.2);
    REQUIRE(cups.cups.size() == 1);  // clusters 1..5 lost everything
    CHECK(cups.cups[0].source_cluster_id == 0);
    CHECK(cups.cups[0].weighted_center.count(0) == 0);
    CHECK(cups.cups[0].weighted_center.at(1) == doctest::Approx(1.0));
}

TEST_CASE("twenty clusters with three emptied leaves seventeen cups") {
    // Clusters 0..16 each own an exclusive coordinate (w = 1.0). Coordinate
    // 20 is spread across all 20 clusters (w = 0.05 each), so it prunes
    // everywhere and clusters 17..19, which have nothing else, drop.
    std::vector<std::vector<std::uint64_t>> counts(20, std::vector<std::uint64_t>(21, 0));
    for (std::size_t i = 0; i < 17; ++i) counts[i][i] = 100;
    for (std::size_t i = 0; i < 20; ++i) counts[i][20] = 1;
    const auto cups = prune_cups(weights_from(counts), 0.2);
    CHECK(cups.cups.size() == 17);
}

TEST_CASE("pruning everything is a degenerate error") {
    const auto weights = weights_from({{10, 10}, {90, 90}});
    CHECK_THROWS_AS(prune_cups(weights, 0.95), DataError);
    CHECK_THROWS_AS(prune_cups(weights, 1.5), ConfigError);
}

TEST_CASE("profile algebra properties over random count matrices") {
    Rng rng(314159);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 2 + rng.uniform_index(7);
        const std::size_t dim = 1 + rng.uniform_index(10);
        std::vector<std::vector<std::uint64_t>> counts(k, std::vector<std::uint64_t>(dim, 0));
        for (auto& row : counts)
            for (auto& cell : row)
                if (rng.chance(0.7)) cell = rng.uniform_index(50);
        const auto weights = weights_from(counts);

        // Normalization: observed columns sum to 1 pre-pruning.
        for (std::size_t j = 0; j < dim; ++j) {
            if (weights.column_totals[j] == 0) continue;
            double sum = 0.0;
            for (std::size_t i = 0; i < k; ++i) sum += weights.w[i][j];
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }

        // Pruning monotonicity: higher threshold retains a subset.
        const double t1 = rng.uniform() * 0.5;
        const double t2 = t1 + rng.uniform() * (1.0 - t1);
        CupSet low, high;
        bool low_ok = true, high_ok = true;
        try {
            low = prune_cups(weights, t1);
        } catch (const DataError&) {
            low_ok = false;
        }
        try {
            high = prune_cups(weights, t2);
        } catch (const DataError&) {
            high_ok = false;
        }
        if (!low_ok) CHECK(!high_ok);  // if everything pruned at t1, also at t2
        if (low_ok && high_ok) {
            for (const auto& cup_high : high.cups) {
                const Cup* cup_low = nullptr;
                for (const auto& cup : low.cups)
                    if (cup.source_cluster_id == cup_high.source_cluster_id) cup_low = &cup;
                REQUIRE(cup_low != nullptr);  // surviving clusters survive lower thresholds
                for (const auto& [j, w] : cup_high.weighted_center) {
                    REQUIRE(cup_low->weighted_center.count(j) == 1);
                    CHECK(cup_low->weighted_center.at(j) == w);
                    CHECK(w >= t2);
                    CHECK(w > 0.0);
                    CHECK(w <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("assignment picks the nearest weighted center") {
    CupSet cups;
    cups.context_dim = 4;
    Cup a;
    a.cup_id = 0;
    a.weighted_center = {{0, 1.0}};
    Cup b;
    b.cup_id = 1;
    b.weighted_center = {{1, 0.5}, {2, 0.5}};
    cups.cups = {a, b};

    // User with coordinates 1 and 2 set: d^2 = 0.5 vs 3.0.
    const std::vector<std::uint8_t> user = {0, 1, 1, 0};
    CHECK(assignment_distance2(user, a) == doctest::Approx(3.0));
    CHECK(assignment_distance2(user, b) == doctest::Approx(0.5));
    CHECK(assign(user, cups) == 1);

    // Exact center match has distance 0.
    const std::vector<std::uint8_t> exact = {1, 0, 0, 0};
    CHECK(assignment_distance2(exact, a) == doctest::Approx(0.0));
    CHECK(assign(exact, cups) == 0);
}

TEST_CASE("equidistant centers break ties to the lowest cup id") {
    CupSet cups;
    cups.context_dim = 2;
    Cup a;
    a.cup_id = 0;
    a.weighted_center = {{0, 1.0}};
    Cup b;
    b.cup_id = 1;
    b.weighted_center = {{1, 1.0}};
    cups.cups = {a, b};
    const std::vector<std::uint8_t> between = {0, 0};
    CHECK(assign(between, cups) == 0);
}

TEST_CASE("assignment validates inputs") {
    CupSet empty;
    empty.context_dim = 2;
    CHECK_THROWS_AS(assign({0, 0}, empty), DataError);

    CupSet cups;
    cups.context_dim = 3;
    Cup cup;
    cup.cup_id = 0;
    cup.weighted_center = {{0, 0.5}};
    cups.cups = {cup};
    CHECK_THROWS_AS(assign({0, 0}, cups), DataError);  // wrong dimension
}

TEST_CASE("assignment optimality and determinism over random inputs") {
    Rng rng(2718);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 3 + rng.uniform_index(8);
        CupSet cups;
        cups.context_dim = dim;
        const std::size_t cup_count = 1 + rng.uniform_index(5);
        for (std::size_t c = 0; c < cup_count; ++c) {
            Cup cup;
            cup.cup_id = static_cast<std::uint32_t>(c);
            for (std::size_t j = 0; j < dim; ++j)
                if (rng.chance(0.4)) cup.weighted_center[j] = 0.2 + 0.8 * rng.uniform();
            if (cup.weighted_center.empty()) cup.weighted_center[rng.uniform_index(dim)] = 1.0;
            cups.cups.push_back(std::move(cup));
        }
        std::vector<std::uint8_t> user(dim);
        for (auto& bit : user) bit = rng.chance(0.5) ? 1 : 0;

        const auto chosen = assign(user, cups);
        CHECK(assign(user, cups) == chosen);
        const auto* cup = cups.find(chosen);
        REQUIRE(cup != nullptr);
        const double best = assignment_distance2(user, *cup);
        for (const auto& other : cups.cups)
            CHECK(best <= assignment_distance2(user, other) + 1e-12);
    }
}
