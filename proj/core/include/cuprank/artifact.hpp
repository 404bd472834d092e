#pragma once

#include <cstdint>
#include <string>

#include "cuprank/cup.hpp"
#include "cuprank/suite.hpp"

namespace cuprank {

/// Everything the online stage needs: the profile set, the ranker suite,
/// and the fingerprint of the schema the profiles were built against.
/// Training provenance rides along for inspection.
struct ModelArtifact {
    CupSet cups;
    RankerSuite suite;
    std::string schema_hash;
    std::string schema_version;

    std::size_t chosen_k = 0;
    double silhouette = 0.0;
    std::uint64_t training_seed = 0;
    std::uint64_t training_reviews = 0;
    double alpha = 1.0;
    bool uniform_prior = false;
};

inline constexpr int kArtifactVersion = 1;
inline constexpr const char* kArtifactFormat = "cuprank-model";

/// Renders the artifact as its canonical file content. Deterministic:
/// identical artifacts produce identical bytes.
std::string artifact_to_string(const ModelArtifact& artifact);

/// Parses and verifies artifact content: format tag, version, and payload
/// checksum. Throws ModelError on mismatch, corruption, or truncation.
ModelArtifact artifact_from_string(const std::string& text);

void save_artifact(const ModelArtifact& artifact, const std::string& path);
ModelArtifact load_artifact(const std::string& path);

}  // namespace cuprank
