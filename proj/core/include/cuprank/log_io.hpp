#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cuprank/review.hpp"
#include "cuprank/schema.hpp"

namespace cuprank {

/// Outcome of one ingest pass. accepted + skipped always equals the number
/// of input records.
struct IngestStats {
    std::size_t accepted = 0;
    std::size_t skipped = 0;
    std::map<std::string, std::size_t> skip_reasons;

    std::size_t total() const { return accepted + skipped; }
};

/// Parses a line-delimited review log. Valid records are passed to `sink`
/// in input order. strict=true aborts on the first malformed record
/// (DataError); lenient mode counts and skips it.
///
/// Record format, one JSON object per line:
///   {"destination": "...", "endorsements": ["..."], "context": {"F": "v"},
///    "user": "...", "ts": 1234567890}
IngestStats parse_review_log(std::istream& stream, const ContextSchema& schema,
                             const EndorsementVocabulary& vocab, bool strict,
                             const std::function<void(ContextualReview&&)>& sink);

/// Convenience wrapper collecting accepted reviews into a vector.
std::pair<std::vector<ContextualReview>, IngestStats> read_review_log(
    std::istream& stream, const ContextSchema& schema, const EndorsementVocabulary& vocab,
    bool strict);

std::pair<std::vector<ContextualReview>, IngestStats> read_review_log_file(
    const std::string& path, const ContextSchema& schema, const EndorsementVocabulary& vocab,
    bool strict);

/// Serializes one review as a single JSON line (no trailing newline).
/// Key order is fixed, so identical reviews render identical bytes.
std::string review_to_json_line(const ContextualReview& review);

}  // namespace cuprank
