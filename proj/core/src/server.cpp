#include "cuprank/server.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cuprank/cup.hpp"
#include "cuprank/errors.hpp"
#include "cuprank/review.hpp"

namespace cuprank {

using nlohmann::json;

namespace {

std::string error_body(const std::string& type, const std::string& message) {
    json doc;
    doc["error"] = {{"type", type}, {"message", message}};
    return doc.dump();
}

std::string cache_key(const std::vector<std::uint8_t>& block) {
    return std::string(block.begin(), block.end());
}

}  // namespace

std::uint32_t ModelSnapshot::assign_cached(const std::vector<std::uint8_t>& context_block) const {
    const auto key = cache_key(context_block);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        const auto it = assignment_cache.find(key);
        if (it != assignment_cache.end()) return it->second;
    }
    const auto cup_id = assign(context_block, artifact.cups);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (assignment_cache.size() >= cache_cap) assignment_cache.clear();
        assignment_cache.emplace(key, cup_id);
    }
    return cup_id;
}

struct RankService::HttpState {
    httplib::Server server;
    std::thread worker;
    int port = 0;
};

RankService::RankService(ContextSchema schema, ServerOptions options)
    : schema_(std::move(schema)), options_(std::move(options)), http_(new HttpState) {}

RankService::~RankService() { stop(); }

void RankService::load_model(const std::string& artifact_path) {
    std::lock_guard<std::mutex> lock(load_mutex_);
    ModelArtifact artifact = load_artifact(artifact_path);  // throws, old snapshot untouched
    if (artifact.schema_hash != schema_.content_hash())
        throw ModelError("artifact was built against a different schema (hash " +
                         artifact.schema_hash + ", serving " + schema_.content_hash() + ")");
    if (artifact.cups.context_dim != schema_.coordinate_count())
        throw ModelError("artifact context dimension does not match schema");

    auto snapshot = std::make_shared<ModelSnapshot>();
    snapshot->artifact = std::move(artifact);
    ++load_counter_;
    // Re-derive the payload checksum for the id so responses are tagged by
    // content and by load generation.
    const std::string content = artifact_to_string(snapshot->artifact);
    const auto doc = json::parse(content);
    snapshot->snapshot_id =
        doc.at("checksum").get<std::string>() + ":" + std::to_string(load_counter_);
    snapshot->loaded_at = std::chrono::duration_cast<std::chrono::seconds>(
                              std::chrono::system_clock::now().time_since_epoch())
                              .count();
    snapshot->cache_cap = options_.assignment_cache_cap;
    store_.set(std::move(snapshot));
}

std::string RankService::current_snapshot_id() const {
    const auto snapshot = store_.get();
    return snapshot ? snapshot->snapshot_id : std::string();
}

std::pair<int, std::string> RankService::handle_rank(const std::string& request_body) const {
    const auto snapshot = store_.get();
    if (!snapshot) return {503, error_body("no-model", "no model snapshot loaded")};

    json request = json::parse(request_body, nullptr, false);
    if (request.is_discarded() || !request.is_object())
        return {400, error_body("bad-request", "request body must be a JSON object")};

    std::map<std::string, std::string> context;
    if (request.contains("context")) {
        if (!request.at("context").is_object())
            return {400, error_body("bad-request", "context must be an object")};
        for (const auto& [feature, category] : request.at("context").items()) {
            if (!category.is_string())
                return {400, error_body("bad-request", "context categories must be strings")};
            context[feature] = category.get<std::string>();
        }
    }

    std::set<std::string> query;
    if (request.contains("endorsements")) {
        if (!request.at("endorsements").is_array())
            return {400, error_body("bad-request", "endorsements must be an array")};
        for (const auto& endorsement : request.at("endorsements")) {
            if (!endorsement.is_string())
                return {400, error_body("bad-request", "endorsements must be strings")};
            query.insert(endorsement.get<std::string>());
        }
    }

    std::size_t top_n = 10;
    if (request.contains("top_n")) {
        if (!request.at("top_n").is_number_unsigned() || request.at("top_n").get<std::uint64_t>() == 0)
            return {400, error_body("bad-request", "top_n must be a positive integer")};
        top_n = request.at("top_n").get<std::size_t>();
    }

    try {
        std::vector<std::uint8_t> block;
        try {
            block = encode_context(context, schema_, options_.strict);
        } catch (const DataError& e) {
            return {400, error_body("unknown-context", e.what())};
        }
        const auto cup_id = snapshot->assign_cached(block);
        const auto [model, used_fallback] = snapshot->artifact.suite.model_for(cup_id);

        if (!options_.strict) {
            // Lenient: drop endorsements the model does not know.
            std::set<std::string> known;
            for (const auto& endorsement : query) {
                for (const auto& name : model->vocabulary()) {
                    if (name == endorsement) {
                        known.insert(endorsement);
                        break;
                    }
                }
            }
            query = std::move(known);
        }

        RankedList ranked;
        try {
            ranked = model->rank(query, top_n);
        } catch (const DataError& e) {
            return {400, error_body("unknown-endorsement", e.what())};
        }

        json response;
        response["snapshot_id"] = snapshot->snapshot_id;
        response["cup_id"] = cup_id;
        response["used_fallback"] = used_fallback;
        auto results = json::array();
        for (const auto& entry : ranked) {
            results.push_back({{"destination", entry.destination_id},
                               {"log_score", entry.log_score}});
        }
        response["results"] = std::move(results);
        return {200, response.dump()};
    } catch (const Error& e) {
        return {500, error_body("internal", e.what())};
    }
}

std::pair<int, std::string> RankService::handle_health() const {
    const auto snapshot = store_.get();
    json doc;
    if (!snapshot) {
        doc["status"] = "no model";
        return {200, doc.dump()};
    }
    doc["status"] = "ok";
    doc["snapshot_id"] = snapshot->snapshot_id;
    doc["loaded_at"] = snapshot->loaded_at;
    doc["cups"] = snapshot->artifact.cups.cups.size();
    doc["contextual_rankers"] = snapshot->artifact.suite.per_cup.size();
    doc["chosen_k"] = snapshot->artifact.chosen_k;
    return {200, doc.dump()};
}

std::pair<int, std::string> RankService::handle_profiles() const {
    const auto snapshot = store_.get();
    if (!snapshot) return {503, error_body("no-model", "no model snapshot loaded")};
    return {200, profiles_json(snapshot->artifact, schema_)};
}

std::pair<int, std::string> RankService::handle_reload(const std::string& request_body) {
    json request = json::parse(request_body, nullptr, false);
    if (request.is_discarded() || !request.is_object() || !request.contains("path") ||
        !request.at("path").is_string())
        return {400, error_body("bad-request", "expected {\"path\": \"...\"}")};
    try {
        load_model(request.at("path").get<std::string>());
    } catch (const Error& e) {
        // Previous snapshot keeps serving.
        return {400, error_body("reload-failed", e.what())};
    }
    json doc;
    doc["status"] = "ok";
    doc["snapshot_id"] = current_snapshot_id();
    return {200, doc.dump()};
}

std::string RankService::profiles_json(const ModelArtifact& artifact,
                                       const ContextSchema& schema) {
    json doc;
    doc["threshold"] = artifact.cups.threshold;
    doc["chosen_k"] = artifact.chosen_k;
    auto cups = json::array();
    for (const auto& cup : artifact.cups.cups) {
        json entry;
        entry["cup_id"] = cup.cup_id;
        entry["source_cluster"] = cup.source_cluster_id;
        const auto it = artifact.suite.per_cup.find(cup.cup_id);
        entry["has_contextual_ranker"] = it != artifact.suite.per_cup.end();
        auto coordinates = json::array();
        // Highest weight first; ties by coordinate for stable output.
        std::vector<std::pair<std::size_t, double>> sorted(cup.weighted_center.begin(),
                                                           cup.weighted_center.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        for (const auto& [coordinate, weight] : sorted) {
            coordinates.push_back({{"coordinate", coordinate},
                                   {"label", schema.coordinate_label(coordinate)},
                                   {"weight", weight}});
        }
        entry["coordinates"] = std::move(coordinates);
        cups.push_back(std::move(entry));
    }
    doc["cups"] = std::move(cups);
    return doc.dump();
}

std::string RankService::profiles_table(const ModelArtifact& artifact,
                                        const ContextSchema& schema) {
    const auto doc = json::parse(profiles_json(artifact, schema));
    std::string out;
    out += "CUPs: " + std::to_string(doc.at("cups").size()) +
           " (k=" + std::to_string(artifact.chosen_k) + ", threshold " +
           std::to_string(artifact.cups.threshold).substr(0, 4) + ")\n";
    for (const auto& cup : doc.at("cups")) {
        out += "\nCUP " + std::to_string(cup.at("cup_id").get<int>()) + " (cluster " +
               std::to_string(cup.at("source_cluster").get<int>()) + ", " +
               (cup.at("has_contextual_ranker").get<bool>() ? "contextual ranker"
                                                            : "global fallback") +
               ")\n";
        for (const auto& coordinate : cup.at("coordinates")) {
            char line[160];
            std::snprintf(line, sizeof(line), "  %5.3f  %s\n",
                          coordinate.at("weight").get<double>(),
                          coordinate.at("label").get<std::string>().c_str());
            out += line;
        }
    }
    return out;
}

int RankService::start() {
    auto& server = http_->server;

    server.Post("/rank", [this](const httplib::Request& req, httplib::Response& res) {
        const auto [status, body] = handle_rank(req.body);
        res.status = status;
        res.set_content(body, "application/json");
    });
    server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
        const auto [status, body] = handle_health();
        res.status = status;
        res.set_content(body, "application/json");
    });
    server.Get("/profiles", [this](const httplib::Request&, httplib::Response& res) {
        const auto [status, body] = handle_profiles();
        res.status = status;
        res.set_content(body, "application/json");
    });
    server.Post("/admin/reload", [this](const httplib::Request& req, httplib::Response& res) {
        const auto [status, body] = handle_reload(req.body);
        res.status = status;
        res.set_content(body, "application/json");
    });

    int port = options_.port;
    if (port == 0) {
        port = server.bind_to_any_port(options_.host);
        if (port < 0) throw Error("failed to bind " + options_.host);
    } else {
        if (!server.bind_to_port(options_.host, port))
            throw Error("failed to bind " + options_.host + ":" + std::to_string(port));
    }
    http_->port = port;
    http_->worker = std::thread([this] { http_->server.listen_after_bind(); });
    server.wait_until_ready();
    return port;
}

void RankService::stop() {
    if (!http_) return;
    if (http_->worker.joinable()) {
        http_->server.stop();
        http_->worker.join();
    }
}

}  // namespace cuprank
