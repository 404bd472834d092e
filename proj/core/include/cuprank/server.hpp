#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "cuprank/artifact.hpp"
#include "cuprank/schema.hpp"

namespace cuprank {

/// An immutable loaded model. Requests resolve every sub-lookup
/// (assignment + ranking) against exactly one snapshot; reloads publish a
/// new snapshot without touching in-flight readers.
struct ModelSnapshot {
    ModelArtifact artifact;
    std::string snapshot_id;       // payload checksum + load counter
    std::int64_t loaded_at = 0;    // UTC seconds

    /// Bounded memo of context-vector -> cup assignments. Assignment is
    /// pure, so concurrent double-computation is benign; the cache resets
    /// when full.
    mutable std::mutex cache_mutex;
    mutable std::unordered_map<std::string, std::uint32_t> assignment_cache;
    std::size_t cache_cap = 4096;

    std::uint32_t assign_cached(const std::vector<std::uint8_t>& context_block) const;
};

/// Atomically replaceable snapshot holder; readers take a shared_ptr copy.
class SnapshotStore {
public:
    std::shared_ptr<const ModelSnapshot> get() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return current_;
    }
    void set(std::shared_ptr<const ModelSnapshot> next) {
        std::lock_guard<std::mutex> lock(mutex_);
        current_ = std::move(next);
    }

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const ModelSnapshot> current_;
};

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;          // 0 picks an ephemeral port
    bool strict = true;       // reject unknown categories/endorsements with 400
    std::size_t assignment_cache_cap = 4096;
};

/// Read-only ranking service.
///
///   POST /rank          {"context": {...}, "endorsements": [...], "top_n": N}
///   GET  /health
///   GET  /profiles
///   POST /admin/reload  {"path": "artifact file"}
///
/// Training never happens here; the artifact is produced by the CLI.
class RankService {
public:
    RankService(ContextSchema schema, ServerOptions options);
    ~RankService();

    RankService(const RankService&) = delete;
    RankService& operator=(const RankService&) = delete;

    /// Loads an artifact and publishes it as the current snapshot. Throws
    /// ModelError if the file is invalid or was built against a different
    /// schema; the previous snapshot (if any) keeps serving on failure.
    void load_model(const std::string& artifact_path);

    /// Binds and serves on a background thread. Returns the bound port.
    int start();
    void stop();

    bool has_model() const { return store_.get() != nullptr; }
    std::string current_snapshot_id() const;

    /// Request handlers, exposed for in-process use. Each returns
    /// (HTTP status, JSON body).
    std::pair<int, std::string> handle_rank(const std::string& request_body) const;
    std::pair<int, std::string> handle_health() const;
    std::pair<int, std::string> handle_profiles() const;
    std::pair<int, std::string> handle_reload(const std::string& request_body);

    /// The CUP dump shared by GET /profiles and the CLI `inspect`.
    static std::string profiles_json(const ModelArtifact& artifact, const ContextSchema& schema);
    static std::string profiles_table(const ModelArtifact& artifact, const ContextSchema& schema);

private:
    ContextSchema schema_;
    ServerOptions options_;
    SnapshotStore store_;
    std::uint64_t load_counter_ = 0;
    std::mutex load_mutex_;  // single admin writer

    struct HttpState;
    std::unique_ptr<HttpState> http_;
};

}  // namespace cuprank
