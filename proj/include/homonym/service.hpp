#pragma once
// Local HTTP facade over one analysis and its review session.
//
// Every body carries "schema_version" and "corpus_hash". Mutating requests
// must echo the hash; a different value is answered with 409 and leaves the
// session untouched. Routes and schemas are listed in docs/formats.md.

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>

#include "json.hpp"

#include "homonym/pipeline.hpp"
#include "homonym/session.hpp"

namespace httplib {
class Server;
}

namespace homonym {

inline constexpr int kSchemaVersion = 1;

struct Response {
    int status = 200;
    nlohmann::json body;
};

class ReviewService {
public:
    // `session_path`, when given, is rewritten after every mutation.
    ReviewService(const Analysis& analysis, SessionFile file,
                  std::optional<std::filesystem::path> session_path = std::nullopt);

    Response session_info() const;
    Response list_clusters() const;
    Response get_cluster(int id) const;
    Response selection() const;
    Response export_selection(std::optional<std::string> format = std::nullopt) const;
    Response log() const;
    Response preview_auto_reject(double cutoff) const;

    // {"corpus_hash", "cluster", "verdict": accept|reject|undo}
    Response post_decision(const nlohmann::json& request);
    // {"corpus_hash", "action": accept_all|reject_all}
    Response post_bulk(const nlohmann::json& request);
    // {"corpus_hash", "cutoff"?}; the cutoff, when present, is set first.
    Response post_auto_reject(const nlohmann::json& request);
    // {"corpus_hash", "mode": by_citations|by_size|by_distance_to_selected}
    Response post_mode(const nlohmann::json& request);

    SessionFile snapshot() const;

private:
    nlohmann::json envelope() const;
    Response error(int status, std::string code, std::string message) const;
    std::optional<Response> check_hash(const nlohmann::json& request) const;
    nlohmann::json cluster_json(int id) const;
    nlohmann::json clusters_body() const;
    Response mutated(std::vector<int> changed);

    const Analysis& analysis_;
    SessionFile file_;
    std::optional<std::filesystem::path> session_path_;
    mutable std::shared_mutex mutex_;
};

nlohmann::json record_json(const PublicationRecord& record);

void mount_routes(httplib::Server& server, ReviewService& service);

// Blocks until the server stops; returns false when the socket cannot be bound.
bool serve(ReviewService& service, const std::string& host, int port);

} // namespace homonym
