#include <doctest.h>

#include <sstream>

#include "cuprank/errors.hpp"
#include "cuprank/log_io.hpp"

using namespace cuprank;

namespace {
const std::string kConfigDir = CUPRANK_CONFIG_DIR;

struct Fixtures {
    ContextSchema schema = load_schema(kConfigDir + "/schema.default.json");
    EndorsementVocabulary vocab = load_vocabulary(kConfigDir + "/vocab.default.json");
};
}  // namespace

TEST_CASE("happy path record yields one review") {
    Fixtures f;
    std::istringstream in(
        R"({"destination":"London","endorsements":["Shopping"],"context":{"OS":"Windows 8.1"},"user":"u1","ts":1500000000})"
        "\n");
    auto [reviews, stats] = read_review_log(in, f.schema, f.vocab, /*strict=*/false);
    REQUIRE(reviews.size() == 1);
    CHECK(stats.accepted == 1);
    CHECK(stats.skipped == 0);
    CHECK(reviews[0].destination_id == "London");
    CHECK(reviews[0].endorsements == std::set<std::string>{"Shopping"});
    CHECK(reviews[0].context.at("OS") == "Windows 8.1");
    CHECK(reviews[0].user_id == "u1");
    CHECK(reviews[0].timestamp == 1500000000);
}

TEST_CASE("unknown endorsement is skipped and counted in lenient mode") {
    Fixtures f;
    std::istringstream in(
        R"({"destination":"Oslo","endorsements":["Skiing2"],"context":{}})"
        "\n");
    auto [reviews, stats] = read_review_log(in, f.schema, f.vocab, false);
    CHECK(reviews.empty());
    CHECK(stats.skipped == 1);
    CHECK(stats.skip_reasons.at("unknown-endorsement") == 1);
}

TEST_CASE("empty endorsement set is skipped with reason no-signal") {
    Fixtures f;
    std::istringstream in(
        R"({"destination":"Oslo","endorsements":[],"context":{}})"
        "\n");
    auto [reviews, stats] = read_review_log(in, f.schema, f.vocab, false);
    CHECK(reviews.empty());
    CHECK(stats.skip_reasons.at("no-signal") == 1);
}

TEST_CASE("strict mode aborts on the first malformed record") {
    Fixtures f;
    std::istringstream in(
        "not json at all\n"
        R"({"destination":"Oslo","endorsements":["Skiing"]})"
        "\n");
    CHECK_THROWS_AS(read_review_log(in, f.schema, f.vocab, /*strict=*/true), DataError);
}

TEST_CASE("lenient ingest conserves record counts across mixed input") {
    Fixtures f;
    std::istringstream in(
        R"({"destination":"Oslo","endorsements":["Skiing"]})"
        "\n"
        "garbage\n"
        R"({"endorsements":["Beach"]})"
        "\n"
        R"({"destination":"Rome","endorsements":["Food"],"context":{"OS":"nope"}})"
        "\n"
        R"({"destination":"Rome","endorsements":["Food"],"context":{"Planet":"Mars"}})"
        "\n"
        R"({"destination":"Nice","endorsements":["Beach","Food"]})"
        "\n");
    auto [reviews, stats] = read_review_log(in, f.schema, f.vocab, false);
    CHECK(reviews.size() == 2);
    CHECK(stats.accepted == 2);
    CHECK(stats.skipped == 4);
    CHECK(stats.accepted + stats.skipped == 6);
    CHECK(stats.skip_reasons.at("bad-json") == 1);
    CHECK(stats.skip_reasons.at("missing-destination") == 1);
    CHECK(stats.skip_reasons.at("unknown-category") == 1);
    CHECK(stats.skip_reasons.at("unknown-feature") == 1);
}

TEST_CASE("records round trip through the line format") {
    Fixtures f;
    ContextualReview review;
    review.destination_id = "Lisbon";
    review.endorsements = {"Beach", "Food"};
    review.context = {{"Device Type", "Mobile"}, {"Day of Week", "Sunday"}};
    review.user_id = "u42";
    review.timestamp = 1600000000;

    std::istringstream in(review_to_json_line(review) + "\n");
    auto [reviews, stats] = read_review_log(in, f.schema, f.vocab, true);
    REQUIRE(reviews.size() == 1);
    CHECK(reviews[0].destination_id == review.destination_id);
    CHECK(reviews[0].endorsements == review.endorsements);
    CHECK(reviews[0].context == review.context);
    CHECK(reviews[0].user_id == review.user_id);
    CHECK(reviews[0].timestamp == review.timestamp);
    // Identical reviews serialize to identical bytes.
    CHECK(review_to_json_line(review) == review_to_json_line(reviews[0]));
}
