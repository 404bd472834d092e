#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cuprank/schema.hpp"

namespace cuprank {

/// One endorsement event: a visitor endorsed a destination for a set of
/// activities, under a situational context. user/ts are carried through
/// ingest but unused by training.
struct ContextualReview {
    std::string destination_id;
    std::set<std::string> endorsements;           // nonempty
    std::map<std::string, std::string> context;   // feature -> category
    std::optional<std::string> user_id;
    std::optional<std::int64_t> timestamp;        // UTC seconds
};

/// Flat binary encoding of a contextualized review: X endorsement
/// coordinates followed by the context blocks in schema order. Within each
/// feature block at most one coordinate is set; an absent feature leaves
/// its block all-zero.
struct EncodedVector {
    std::vector<std::uint8_t> bits;
    std::size_t endorsement_dim = 0;

    std::size_t size() const { return bits.size(); }
    std::size_t context_dim() const { return bits.size() - endorsement_dim; }

    /// Copy of the context block (coordinates X..end).
    std::vector<std::uint8_t> context_block() const {
        return std::vector<std::uint8_t>(bits.begin() + static_cast<std::ptrdiff_t>(endorsement_dim),
                                         bits.end());
    }
};

/// Validates a review against schema and vocabulary and produces its
/// deterministic binary encoding. Throws DataError on unknown endorsements,
/// features, or categories, and on an empty endorsement set.
EncodedVector encode_review(const ContextualReview& review, const ContextSchema& schema,
                            const EndorsementVocabulary& vocab);

/// Encodes just a context map into a context block (length = schema
/// coordinate count). Used by the online path where no endorsements exist
/// yet. strict=false drops unknown features/categories instead of throwing.
std::vector<std::uint8_t> encode_context(const std::map<std::string, std::string>& context,
                                         const ContextSchema& schema, bool strict = true);

/// Inverse of encode_review: recovers the endorsement set and context map.
/// Only meaningful for vectors produced by encode_review (one-hot blocks).
ContextualReview decode_vector(const EncodedVector& vec, const ContextSchema& schema,
                               const EndorsementVocabulary& vocab);

}  // namespace cuprank
