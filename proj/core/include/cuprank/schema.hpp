#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cuprank {

/// One contextual feature: a named dimension with an ordered list of
/// discrete categories. Ordering is part of the contract; coordinate
/// indices are derived from it and must stay stable across runs.
struct ContextFeature {
    std::string name;
    std::vector<std::string> categories;
};

/// The contextual space: an ordered list of features, each with ordered
/// categories. A category (n, m) owns one binary coordinate; coordinates
/// are laid out feature by feature in declaration order.
class ContextSchema {
public:
    ContextSchema() = default;

    /// Validates and indexes the feature list. Throws SchemaError on
    /// duplicate feature names, duplicate categories within a feature,
    /// or an empty schema.
    ContextSchema(std::vector<ContextFeature> features, std::string version);

    const std::vector<ContextFeature>& features() const { return features_; }
    const std::string& version() const { return version_; }

    /// Total number of context coordinates (sum of category counts).
    std::size_t coordinate_count() const { return coordinate_count_; }

    /// Index of a feature by name, or nullopt when unknown.
    std::optional<std::size_t> feature_index(const std::string& name) const;

    /// Flat coordinate of (feature, category), or nullopt when unknown.
    std::optional<std::size_t> coordinate(const std::string& feature,
                                          const std::string& category) const;

    /// First coordinate of a feature's block; the block spans
    /// [offset, offset + categories.size()).
    std::size_t feature_offset(std::size_t feature_index) const {
        return offsets_[feature_index];
    }

    /// Maps a flat coordinate back to (feature_index, category_index).
    std::pair<std::size_t, std::size_t> locate(std::size_t coordinate) const;

    /// Human-readable "Feature / Category" label of a flat coordinate.
    std::string coordinate_label(std::size_t coordinate) const;

    /// Canonical serialization used for hashing and artifact metadata.
    std::string canonical_string() const;

    /// Stable fingerprint of the schema content (FNV-1a of the canonical
    /// form). Artifacts record it so serving can reject mismatched schemas.
    std::string content_hash() const;

private:
    std::vector<ContextFeature> features_;
    std::string version_;
    std::vector<std::size_t> offsets_;
    std::size_t coordinate_count_ = 0;
    std::unordered_map<std::string, std::size_t> feature_by_name_;
    // "feature\x1fcategory" -> flat coordinate
    std::unordered_map<std::string, std::size_t> coordinate_by_key_;
};

/// Ordered endorsement vocabulary (e_1..e_X). Names unique, X >= 1.
class EndorsementVocabulary {
public:
    EndorsementVocabulary() = default;
    EndorsementVocabulary(std::vector<std::string> endorsements, std::string version);

    const std::vector<std::string>& endorsements() const { return endorsements_; }
    const std::string& version() const { return version_; }
    std::size_t size() const { return endorsements_.size(); }

    std::optional<std::size_t> index_of(const std::string& name) const;

    std::string canonical_string() const;
    std::string content_hash() const;

private:
    std::vector<std::string> endorsements_;
    std::string version_;
    std::unordered_map<std::string, std::size_t> index_by_name_;
};

/// Loads a schema config file (JSON: {"version": ..., "features": [...]})
/// preserving declared order. Throws SchemaError / DataError.
ContextSchema load_schema(const std::string& path);

/// Parses schema JSON from a string (same format as load_schema).
ContextSchema parse_schema(const std::string& json_text);

/// Loads a vocabulary config file (JSON: {"version": ..., "endorsements": [...]})
EndorsementVocabulary load_vocabulary(const std::string& path);

/// Parses vocabulary JSON from a string.
EndorsementVocabulary parse_vocabulary(const std::string& json_text);

}  // namespace cuprank
