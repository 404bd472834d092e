// Microbenchmarks for the hot paths: encoding, online assignment + ranking
// (the request path), and the offline clustering loop.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "cuprank/cup.hpp"
#include "cuprank/kmeans.hpp"
#include "cuprank/naive_bayes.hpp"
#include "cuprank/pipeline.hpp"
#include "cuprank/rng.hpp"
#include "cuprank/schema.hpp"
#include "cuprank/server.hpp"
#include "cuprank/synthetic.hpp"

using namespace cuprank;

namespace {

ContextSchema bench_schema() {
    std::vector<ContextFeature> features;
    const std::vector<std::pair<std::string, int>> shape = {
        {"Device Type", 5}, {"OS", 27}, {"Browser", 114}, {"Traffic Type", 16}, {"Day", 7}};
    for (const auto& [name, count] : shape) {
        ContextFeature feature;
        feature.name = name;
        for (int i = 0; i < count; ++i)
            feature.categories.push_back(name + " " + std::to_string(i));
        features.push_back(std::move(feature));
    }
    return ContextSchema(std::move(features), "1");
}

EndorsementVocabulary bench_vocab(std::size_t x) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < x; ++i) names.push_back("e" + std::to_string(i));
    return EndorsementVocabulary(names, "1");
}

ContextualReview bench_review(const ContextSchema& schema, const EndorsementVocabulary& vocab,
                              Rng& rng) {
    ContextualReview review;
    review.destination_id = "d" + std::to_string(rng.uniform_index(200));
    const std::size_t picks = 1 + rng.uniform_index(3);
    for (std::size_t i = 0; i < picks; ++i)
        review.endorsements.insert(vocab.endorsements()[rng.uniform_index(vocab.size())]);
    for (const auto& feature : schema.features()) {
        review.context[feature.name] =
            feature.categories[rng.uniform_index(feature.categories.size())];
    }
    return review;
}

CupSet bench_cups(std::size_t cup_count, std::size_t context_dim, Rng& rng) {
    CupSet cups;
    cups.context_dim = context_dim;
    cups.threshold = 0.2;
    for (std::size_t c = 0; c < cup_count; ++c) {
        Cup cup;
        cup.cup_id = static_cast<std::uint32_t>(c);
        cup.source_cluster_id = cup.cup_id;
        const std::size_t coords = 4 + rng.uniform_index(12);
        for (std::size_t i = 0; i < coords; ++i)
            cup.weighted_center[rng.uniform_index(context_dim)] = 0.2 + 0.8 * rng.uniform();
        cups.cups.push_back(std::move(cup));
    }
    return cups;
}

}  // namespace

static void BM_EncodeReview(benchmark::State& state) {
    const auto schema = bench_schema();
    const auto vocab = bench_vocab(256);
    Rng rng(1);
    const auto review = bench_review(schema, vocab, rng);
    for (auto _ : state) {
        auto vec = encode_review(review, schema, vocab);
        benchmark::DoNotOptimize(vec);
    }
}
BENCHMARK(BM_EncodeReview);

static void BM_AssignCup(benchmark::State& state) {
    const auto schema = bench_schema();
    Rng rng(2);
    const auto cups = bench_cups(static_cast<std::size_t>(state.range(0)),
                                 schema.coordinate_count(), rng);
    std::vector<std::uint8_t> user(schema.coordinate_count(), 0);
    for (int i = 0; i < 5; ++i) user[rng.uniform_index(user.size())] = 1;
    for (auto _ : state) {
        auto cup = assign(user, cups);
        benchmark::DoNotOptimize(cup);
    }
}
BENCHMARK(BM_AssignCup)->Arg(17)->Arg(64);

static void BM_NbRank(benchmark::State& state) {
    const auto vocab = bench_vocab(256);
    Rng rng(3);
    std::vector<ContextualReview> reviews;
    const auto schema = bench_schema();
    for (int i = 0; i < 20000; ++i) reviews.push_back(bench_review(schema, vocab, rng));
    const auto model = NbModel::train(reviews, vocab, 1.0);
    const std::set<std::string> query = {"e1", "e7"};
    for (auto _ : state) {
        auto ranked = model.rank(query, 10);
        benchmark::DoNotOptimize(ranked);
    }
    state.SetLabel(std::to_string(model.destinations().size()) + " destinations");
}
BENCHMARK(BM_NbRank);

static void BM_KMeans(benchmark::State& state) {
    Rng rng(4);
    std::vector<RealVector> points;
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (std::size_t i = 0; i < n; ++i) {
        RealVector p(24);
        for (auto& value : p) value = rng.chance(0.2) ? 1.0 : 0.0;
        points.push_back(std::move(p));
    }
    for (auto _ : state) {
        auto model = kmeans(points, 6, {.seed = 5, .max_iter = 20});
        benchmark::DoNotOptimize(model);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_KMeans)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_HandleRank(benchmark::State& state) {
    // Full request path: parse, assign, rank, serialize.
    const ContextSchema schema({{"Device", {"Mobile", "Desktop", "Tablet"}},
                                {"OS", {"Android", "Windows", "Linux"}}},
                               "1");
    const auto vocab = bench_vocab(16);
    Rng rng(6);
    std::vector<ContextualReview> reviews;
    for (int i = 0; i < 5000; ++i) {
        ContextualReview review;
        review.destination_id = "d" + std::to_string(rng.uniform_index(50));
        review.endorsements.insert("e" + std::to_string(rng.uniform_index(16)));
        review.context["Device"] =
            schema.features()[0].categories[rng.uniform_index(3)];
        reviews.push_back(std::move(review));
    }
    TrainOptions options;
    options.k_range = {2, 3};
    options.restarts = 2;
    options.seed = 1;
    const auto artifact = train_model(reviews, schema, vocab, options).artifact;

    const auto dir = std::filesystem::temp_directory_path() / "cuprank_bench.model";
    save_artifact(artifact, dir.string());
    RankService service(schema, {});
    service.load_model(dir.string());
    const std::string request =
        R"({"context":{"Device":"Mobile","OS":"Android"},"endorsements":["e1"],"top_n":10})";
    for (auto _ : state) {
        auto response = service.handle_rank(request);
        benchmark::DoNotOptimize(response);
    }
    std::remove(dir.string().c_str());
}
BENCHMARK(BM_HandleRank);

BENCHMARK_MAIN();
