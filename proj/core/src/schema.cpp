#include "cuprank/schema.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cuprank/errors.hpp"
#include "cuprank/hash.hpp"

namespace cuprank {

namespace {

std::string coordinate_key(const std::string& feature, const std::string& category) {
    std::string key;
    key.reserve(feature.size() + category.size() + 1);
    key += feature;
    key += '\x1f';
    key += category;
    return key;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw DataError("invalid JSON in " + what);
    return doc;
}

std::string version_field(const nlohmann::json& doc) {
    if (!doc.contains("version")) return "1";
    const auto& v = doc.at("version");
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw SchemaError("version must be a string or integer");
}

}  // namespace

ContextSchema::ContextSchema(std::vector<ContextFeature> features, std::string version)
    : features_(std::move(features)), version_(std::move(version)) {
    if (features_.empty()) throw SchemaError("schema has no features");
    offsets_.reserve(features_.size());
    for (std::size_t n = 0; n < features_.size(); ++n) {
        const auto& feature = features_[n];
        if (feature.name.empty()) throw SchemaError("feature with empty name");
        if (feature.categories.empty())
            throw SchemaError("feature '" + feature.name + "' has no categories");
        if (!feature_by_name_.emplace(feature.name, n).second)
            throw SchemaError("duplicate feature name '" + feature.name + "'");
        offsets_.push_back(coordinate_count_);
        for (std::size_t m = 0; m < feature.categories.size(); ++m) {
            const auto& category = feature.categories[m];
            if (category.empty())
                throw SchemaError("empty category name in feature '" + feature.name + "'");
            const auto key = coordinate_key(feature.name, category);
            if (!coordinate_by_key_.emplace(key, coordinate_count_ + m).second)
                throw SchemaError("duplicate category '" + category + "' in feature '" +
                                  feature.name + "'");
        }
        coordinate_count_ += feature.categories.size();
    }
}

std::optional<std::size_t> ContextSchema::feature_index(const std::string& name) const {
    auto it = feature_by_name_.find(name);
    if (it == feature_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> ContextSchema::coordinate(const std::string& feature,
                                                     const std::string& category) const {
    auto it = coordinate_by_key_.find(coordinate_key(feature, category));
    if (it == coordinate_by_key_.end()) return std::nullopt;
    return it->second;
}

std::pair<std::size_t, std::size_t> ContextSchema::locate(std::size_t coordinate) const {
    if (coordinate >= coordinate_count_)
        throw SchemaError("coordinate out of range: " + std::to_string(coordinate));
    std::size_t n = features_.size() - 1;
    while (offsets_[n] > coordinate) --n;
    return {n, coordinate - offsets_[n]};
}

std::string ContextSchema::coordinate_label(std::size_t coordinate) const {
    const auto [n, m] = locate(coordinate);
    return features_[n].name + " / " + features_[n].categories[m];
}

std::string ContextSchema::canonical_string() const {
    // Order-preserving rendering; nlohmann objects sort keys, so features
    // are emitted as arrays to keep the declared order in the hash.
    nlohmann::json doc;
    doc["version"] = version_;
    auto features = nlohmann::json::array();
    for (const auto& feature : features_) {
        features.push_back({{"name", feature.name}, {"categories", feature.categories}});
    }
    doc["features"] = std::move(features);
    return doc.dump();
}

std::string ContextSchema::content_hash() const {
    return hash_hex(fnv1a64(canonical_string()));
}

EndorsementVocabulary::EndorsementVocabulary(std::vector<std::string> endorsements,
                                             std::string version)
    : endorsements_(std::move(endorsements)), version_(std::move(version)) {
    if (endorsements_.empty()) throw SchemaError("vocabulary has no endorsements");
    for (std::size_t i = 0; i < endorsements_.size(); ++i) {
        if (endorsements_[i].empty()) throw SchemaError("empty endorsement name");
        if (!index_by_name_.emplace(endorsements_[i], i).second)
            throw SchemaError("duplicate endorsement '" + endorsements_[i] + "'");
    }
}

std::optional<std::size_t> EndorsementVocabulary::index_of(const std::string& name) const {
    auto it = index_by_name_.find(name);
    if (it == index_by_name_.end()) return std::nullopt;
    return it->second;
}

std::string EndorsementVocabulary::canonical_string() const {
    nlohmann::json doc;
    doc["version"] = version_;
    doc["endorsements"] = endorsements_;
    return doc.dump();
}

std::string EndorsementVocabulary::content_hash() const {
    return hash_hex(fnv1a64(canonical_string()));
}

ContextSchema parse_schema(const std::string& json_text) {
    const auto doc = parse_json(json_text, "schema");
    if (!doc.contains("features") || !doc.at("features").is_array())
        throw SchemaError("schema must contain a \"features\" array");
    std::vector<ContextFeature> features;
    for (const auto& entry : doc.at("features")) {
        if (!entry.is_object() || !entry.contains("name") || !entry.contains("categories"))
            throw SchemaError("each feature needs \"name\" and \"categories\"");
        ContextFeature feature;
        feature.name = entry.at("name").get<std::string>();
        for (const auto& category : entry.at("categories")) {
            feature.categories.push_back(category.get<std::string>());
        }
        features.push_back(std::move(feature));
    }
    return ContextSchema(std::move(features), version_field(doc));
}

ContextSchema load_schema(const std::string& path) {
    return parse_schema(read_file(path));
}

EndorsementVocabulary parse_vocabulary(const std::string& json_text) {
    const auto doc = parse_json(json_text, "vocabulary");
    if (!doc.contains("endorsements") || !doc.at("endorsements").is_array())
        throw SchemaError("vocabulary must contain an \"endorsements\" array");
    std::vector<std::string> names;
    for (const auto& name : doc.at("endorsements")) {
        names.push_back(name.get<std::string>());
    }
    return EndorsementVocabulary(std::move(names), version_field(doc));
}

EndorsementVocabulary load_vocabulary(const std::string& path) {
    return parse_vocabulary(read_file(path));
}

}  // namespace cuprank
