#include <doctest.h>

#include "cuprank/errors.hpp"
#include "cuprank/schema.hpp"

using namespace cuprank;

namespace {
const std::string kConfigDir = CUPRANK_CONFIG_DIR;
}

TEST_CASE("default shipped schema has 5 features and 169 coordinates") {
    const auto schema = load_schema(kConfigDir + "/schema.default.json");
    CHECK(schema.features().size() == 5);
    CHECK(schema.coordinate_count() == 169);
    CHECK(schema.features()[0].name == "Device Type");
    CHECK(schema.features()[0].categories.size() == 5);
    CHECK(schema.features()[1].categories.size() == 27);
    CHECK(schema.features()[2].categories.size() == 114);
    CHECK(schema.features()[3].categories.size() == 16);
    CHECK(schema.features()[4].categories.size() == 7);
}

TEST_CASE("coordinate indices are stable anchors for the shipped schema") {
    const auto schema = load_schema(kConfigDir + "/schema.default.json");
    CHECK(schema.coordinate("Device Type", "Mobile") == 0);
    CHECK(schema.coordinate("OS", "Windows XP") == 5);
    CHECK(schema.coordinate("Day of Week", "Sunday") == 168);
    // Same file loaded twice fingerprints identically.
    const auto again = load_schema(kConfigDir + "/schema.default.json");
    CHECK(schema.content_hash() == again.content_hash());
    for (const auto& feature : schema.features()) {
        for (const auto& category : feature.categories) {
            CHECK(schema.coordinate(feature.name, category) ==
                  again.coordinate(feature.name, category));
        }
    }
}

TEST_CASE("degenerate one-feature one-category schema") {
    const auto schema = parse_schema(R"({"version":"1","features":[
        {"name":"OS","categories":["Linux"]}]})");
    CHECK(schema.coordinate_count() == 1);
    CHECK(schema.coordinate("OS", "Linux") == 0);
    CHECK(schema.locate(0) == std::pair<std::size_t, std::size_t>{0, 0});
}

TEST_CASE("duplicate category within a feature is rejected") {
    CHECK_THROWS_AS(parse_schema(R"({"version":"1","features":[
        {"name":"Device Type","categories":["Mobile","Tablet","Mobile"]}]})"),
                    SchemaError);
}

TEST_CASE("duplicate feature name is rejected") {
    CHECK_THROWS_AS(parse_schema(R"({"version":"1","features":[
        {"name":"OS","categories":["Linux"]},
        {"name":"OS","categories":["Windows"]}]})"),
                    SchemaError);
}

TEST_CASE("empty schema is rejected") {
    CHECK_THROWS_AS(parse_schema(R"({"version":"1","features":[]})"), SchemaError);
    CHECK_THROWS_AS(parse_schema(R"({"version":"1","features":[
        {"name":"OS","categories":[]}]})"),
                    SchemaError);
}

TEST_CASE("coordinate lookups fail cleanly for unknown names") {
    const auto schema = parse_schema(R"({"version":"1","features":[
        {"name":"OS","categories":["Linux","Windows"]}]})");
    CHECK(!schema.coordinate("OS", "BeOS").has_value());
    CHECK(!schema.coordinate("Browser", "Firefox").has_value());
    CHECK(!schema.feature_index("Browser").has_value());
    CHECK(schema.coordinate_label(1) == "OS / Windows");
}

TEST_CASE("vocabulary validates uniqueness and order") {
    const auto vocab = parse_vocabulary(R"({"version":"1","endorsements":["Beach","Shopping"]})");
    CHECK(vocab.size() == 2);
    CHECK(vocab.index_of("Beach") == 0);
    CHECK(vocab.index_of("Shopping") == 1);
    CHECK(!vocab.index_of("Food").has_value());
    CHECK_THROWS_AS(parse_vocabulary(R"({"endorsements":["Beach","Beach"]})"), SchemaError);
    CHECK_THROWS_AS(parse_vocabulary(R"({"endorsements":[]})"), SchemaError);
}

TEST_CASE("missing schema file reports a data error") {
    CHECK_THROWS_AS(load_schema("/nonexistent/schema.json"), DataError);
}
