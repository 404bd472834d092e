#include "cuprank/log_io.hpp"

#include <fstream>
#include <istream>

#include <json.hpp>

#include "cuprank/errors.hpp"

namespace cuprank {

namespace {

// Reasons are short stable tokens; they end up in stats and error messages.
struct RecordRejection {
    std::string reason;
    std::string detail;
};

ContextualReview parse_record(const nlohmann::json& doc, const ContextSchema& schema,
                              const EndorsementVocabulary& vocab) {
    if (!doc.is_object()) throw RecordRejection{"bad-record", "record is not an object"};
    if (!doc.contains("destination") || !doc.at("destination").is_string())
        throw RecordRejection{"missing-destination", "record has no destination"};

    ContextualReview review;
    review.destination_id = doc.at("destination").get<std::string>();
    if (review.destination_id.empty())
        throw RecordRejection{"missing-destination", "empty destination id"};

    if (doc.contains("endorsements")) {
        if (!doc.at("endorsements").is_array())
            throw RecordRejection{"bad-record", "endorsements must be an array"};
        for (const auto& e : doc.at("endorsements")) {
            if (!e.is_string()) throw RecordRejection{"bad-record", "endorsement must be a string"};
            const auto name = e.get<std::string>();
            if (!vocab.index_of(name))
                throw RecordRejection{"unknown-endorsement", "unknown endorsement '" + name + "'"};
            review.endorsements.insert(name);
        }
    }
    if (review.endorsements.empty())
        throw RecordRejection{"no-signal", "review has no endorsements"};

    if (doc.contains("context")) {
        if (!doc.at("context").is_object())
            throw RecordRejection{"bad-record", "context must be an object"};
        for (const auto& [feature, category] : doc.at("context").items()) {
            if (!category.is_string())
                throw RecordRejection{"bad-record", "context categories must be strings"};
            const auto value = category.get<std::string>();
            if (!schema.feature_index(feature))
                throw RecordRejection{"unknown-feature", "unknown context feature '" + feature + "'"};
            if (!schema.coordinate(feature, value))
                throw RecordRejection{"unknown-category",
                                      "unknown category '" + value + "' for feature '" + feature + "'"};
            review.context[feature] = value;
        }
    }

    if (doc.contains("user") && doc.at("user").is_string())
        review.user_id = doc.at("user").get<std::string>();
    if (doc.contains("ts") && doc.at("ts").is_number())
        review.timestamp = doc.at("ts").get<std::int64_t>();
    return review;
}

}  // namespace

IngestStats parse_review_log(std::istream& stream, const ContextSchema& schema,
                             const EndorsementVocabulary& vocab, bool strict,
                             const std::function<void(ContextualReview&&)>& sink) {
    IngestStats stats;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (line.empty()) continue;  // blank lines are not records
        nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
        RecordRejection rejection;
        if (doc.is_discarded()) {
            rejection = {"bad-json", "unparseable JSON"};
        } else {
            try {
                sink(parse_record(doc, schema, vocab));
                ++stats.accepted;
                continue;
            } catch (const RecordRejection& r) {
                rejection = r;
            }
        }
        if (strict)
            throw DataError("line " + std::to_string(line_number) + ": " + rejection.detail);
        ++stats.skipped;
        ++stats.skip_reasons[rejection.reason];
    }
    return stats;
}

std::pair<std::vector<ContextualReview>, IngestStats> read_review_log(
    std::istream& stream, const ContextSchema& schema, const EndorsementVocabulary& vocab,
    bool strict) {
    std::vector<ContextualReview> reviews;
    IngestStats stats = parse_review_log(stream, schema, vocab, strict,
                                         [&](ContextualReview&& r) { reviews.push_back(std::move(r)); });
    return {std::move(reviews), stats};
}

std::pair<std::vector<ContextualReview>, IngestStats> read_review_log_file(
    const std::string& path, const ContextSchema& schema, const EndorsementVocabulary& vocab,
    bool strict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open review log: " + path);
    return read_review_log(in, schema, vocab, strict);
}

std::string review_to_json_line(const ContextualReview& review) {
    nlohmann::json doc;
    doc["destination"] = review.destination_id;
    doc["endorsements"] = review.endorsements;  // std::set renders sorted
    doc["context"] = review.context;            // std::map renders sorted
    if (review.user_id) doc["user"] = *review.user_id;
    if (review.timestamp) doc["ts"] = *review.timestamp;
    return doc.dump();
}

}  // namespace cuprank
