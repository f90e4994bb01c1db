#include "homonym/service.hpp"

#include <mutex>

#include "httplib.h"

#include "homonym/ingest.hpp"
#include "homonym/tokenize.hpp"

namespace homonym {

using nlohmann::json;

namespace {

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json summary_json(const MeritSummary& s) {
    return {
        {"papers", s.papers},
        {"citations", s.citations},
        {"citations_per_paper", s.citations_per_paper},
        {"year_min", optional_int(s.year_min)},
        {"year_max", optional_int(s.year_max)},
        {"h_index", s.h_index},
    };
}

json entry_json(const LogEntry& e) {
    json j = {{"seq", e.seq}, {"time", e.timestamp}, {"action", e.action}};
    if (e.action == "mode") {
        j["mode"] = e.mode;
    } else if (e.action == "cutoff") {
        j["value"] = e.value;
    } else if (e.action == "accept" || e.action == "reject" || e.action == "undo") {
        j["cluster"] = e.cluster;
    }
    return j;
}

std::vector<int> newly_decided(const std::vector<int>& before, const SelectionSession& s) {
    std::vector<int> out;
    for (int id : before) {
        if (s.decision(id) != Decision::undecided) out.push_back(id);
    }
    return out;
}

} // namespace

json record_json(const PublicationRecord& r) {
    const auto& t = r.text;
    const auto words = address_display_words(t.addresses);
    return {
        {"id", r.id},
        {"title", t.title},
        {"authors", t.authors},
        {"source", t.source},
        {"year", t.year},
        {"volume", t.volume},
        {"pages", t.pages},
        {"citations", t.citations},
        {"addresses", t.addresses},
        {"address_words", words},
    };
}

ReviewService::ReviewService(const Analysis& analysis, SessionFile file,
                             std::optional<std::filesystem::path> session_path)
    : analysis_(analysis), file_(std::move(file)), session_path_(std::move(session_path)) {
    if (file_.session.corpus_hash() != analysis_.hash) {
        throw SessionError("session belongs to a different corpus or settings");
    }
}

json ReviewService::envelope() const {
    return {{"schema_version", kSchemaVersion}, {"corpus_hash", analysis_.hash}};
}

Response ReviewService::error(int status, std::string code, std::string message) const {
    json body = envelope();
    body["error"] = {{"code", std::move(code)}, {"message", std::move(message)}};
    return {status, std::move(body)};
}

std::optional<Response> ReviewService::check_hash(const json& request) const {
    if (!request.is_object()) return error(400, "bad_request", "body must be a JSON object");
    const auto it = request.find("corpus_hash");
    if (it == request.end() || !it->is_string()) return error(400, "bad_request", "corpus_hash is required");
    if (it->get<std::string>() != analysis_.hash) {
        return error(409, "stale_hash", "corpus_hash does not match this session");
    }
    return std::nullopt;
}

json ReviewService::cluster_json(int id) const {
    const Cluster& c = analysis_.clusters.at(id);
    const auto d = distance_to_selected(file_.session, analysis_.clusters, id);
    return {
        {"id", id},
        {"papers", c.paper_count},
        {"citations", c.total_citations},
        {"year_min", optional_int(c.year_min)},
        {"year_max", optional_int(c.year_max)},
        {"decision", to_string(file_.session.decision(id))},
        {"distance_to_selected", d ? json(*d) : json(nullptr)},
        {"representative", record_json(analysis_.corpus.records.at(c.representative_id))},
    };
}

json ReviewService::clusters_body() const {
    json body = envelope();
    body["mode"] = to_string(file_.session.mode());
    body["cutoff"] = file_.session.cutoff();
    const auto next = next_cluster(file_.session, analysis_.clusters);
    body["next"] = next ? json(*next) : json(nullptr);
    json list = json::array();
    for (int id : presentation_order(file_.session, analysis_.clusters)) list.push_back(cluster_json(id));
    body["clusters"] = std::move(list);
    return body;
}

Response ReviewService::session_info() const {
    std::shared_lock lock(mutex_);
    const auto& s = file_.session;
    json body = envelope();
    body["query_name"] = analysis_.corpus.query_name;
    body["records"] = analysis_.corpus.size();
    body["clusters"] = analysis_.clusters.size();
    body["mode"] = to_string(s.mode());
    body["cutoff"] = s.cutoff();
    body["accepted"] = s.ids_with(Decision::accepted).size();
    body["rejected"] = s.ids_with(Decision::rejected).size();
    body["undecided"] = s.ids_with(Decision::undecided).size();
    return {200, std::move(body)};
}

Response ReviewService::list_clusters() const {
    std::shared_lock lock(mutex_);
    return {200, clusters_body()};
}

Response ReviewService::get_cluster(int id) const {
    std::shared_lock lock(mutex_);
    if (!analysis_.clusters.contains(id)) return error(404, "not_found", "no cluster " + std::to_string(id));
    json body = envelope();
    body["cluster"] = cluster_json(id);
    json members = json::array();
    for (std::size_t rid : analysis_.clusters.at(id).member_ids) {
        members.push_back(record_json(analysis_.corpus.records.at(rid)));
    }
    body["members"] = std::move(members);
    json distances = json::array();
    for (const auto& other : analysis_.clusters.clusters) {
        if (other.id != id) {
            distances.push_back({{"cluster", other.id}, {"distance", analysis_.clusters.distance(id, other.id)}});
        }
    }
    body["distances"] = std::move(distances);
    return {200, std::move(body)};
}

Response ReviewService::selection() const {
    std::shared_lock lock(mutex_);
    if (!file_.session.any_accepted()) return error(422, "empty_selection", "no cluster has been accepted");
    const Selection sel = homonym::export_selection(file_.session, analysis_.corpus, analysis_.clusters);
    json body = envelope();
    body["clusters"] = file_.session.ids_with(Decision::accepted);
    body["record_ids"] = sel.record_ids;
    body["summary"] = summary_json(sel.summary);
    body["text"] = format_merit(sel.summary);
    return {200, std::move(body)};
}

Response ReviewService::export_selection(std::optional<std::string> format) const {
    std::shared_lock lock(mutex_);
    const std::string corpus_format(format_name(analysis_.corpus.format));
    if (format && *format != corpus_format) {
        return error(400, "bad_request", "export format must be " + corpus_format);
    }
    if (!file_.session.any_accepted()) return error(422, "empty_selection", "no cluster has been accepted");
    const Selection sel = homonym::export_selection(file_.session, analysis_.corpus, analysis_.clusters);
    json body = envelope();
    body["format"] = corpus_format;
    body["content"] = write_export(analysis_.corpus, sel.record_ids);
    return {200, std::move(body)};
}

Response ReviewService::log() const {
    std::shared_lock lock(mutex_);
    json body = envelope();
    json entries = json::array();
    for (const auto& e : file_.session.log()) entries.push_back(entry_json(e));
    body["log"] = std::move(entries);
    return {200, std::move(body)};
}

Response ReviewService::preview_auto_reject(double cutoff) const {
    std::shared_lock lock(mutex_);
    if (!(cutoff > 0.0)) return error(400, "bad_request", "cutoff must be positive");
    if (!file_.session.any_accepted()) return error(422, "empty_selection", "no cluster has been accepted");
    json body = envelope();
    body["cutoff"] = cutoff;
    body["count"] = count_beyond_cutoff(file_.session, analysis_.clusters, cutoff);
    return {200, std::move(body)};
}

Response ReviewService::mutated(std::vector<int> changed) {
    if (session_path_) save_session(*session_path_, file_);
    json body = clusters_body();
    body["changed"] = std::move(changed);
    return {200, std::move(body)};
}

Response ReviewService::post_decision(const json& request) {
    std::unique_lock lock(mutex_);
    if (auto bad = check_hash(request)) return *bad;
    const auto cluster = request.find("cluster");
    const auto verdict = request.find("verdict");
    if (cluster == request.end() || !cluster->is_number_integer() || verdict == request.end() ||
        !verdict->is_string()) {
        return error(400, "bad_request", "cluster (integer) and verdict (string) are required");
    }
    const int id = cluster->get<int>();
    if (!analysis_.clusters.contains(id)) return error(404, "not_found", "no cluster " + std::to_string(id));
    const auto v = verdict->get<std::string>();
    if (v == "accept") {
        file_.session.decide(id, Verdict::accept);
    } else if (v == "reject") {
        file_.session.decide(id, Verdict::reject);
    } else if (v == "undo") {
        file_.session.undo(id);
    } else {
        return error(400, "bad_request", "verdict must be accept, reject or undo");
    }
    return mutated({id});
}

Response ReviewService::post_bulk(const json& request) {
    std::unique_lock lock(mutex_);
    if (auto bad = check_hash(request)) return *bad;
    const auto action = request.find("action");
    if (action == request.end() || !action->is_string()) return error(400, "bad_request", "action is required");
    const auto a = action->get<std::string>();
    if (a != "accept_all" && a != "reject_all") {
        return error(400, "bad_request", "action must be accept_all or reject_all");
    }
    const auto before = file_.session.ids_with(Decision::undecided);
    a == "accept_all" ? file_.session.accept_all_remaining() : file_.session.reject_all_remaining();
    return mutated(newly_decided(before, file_.session));
}

Response ReviewService::post_auto_reject(const json& request) {
    std::unique_lock lock(mutex_);
    if (auto bad = check_hash(request)) return *bad;
    std::optional<double> cutoff;
    if (const auto it = request.find("cutoff"); it != request.end()) {
        if (!it->is_number() || !(it->get<double>() > 0.0)) {
            return error(400, "bad_request", "cutoff must be a positive number");
        }
        cutoff = it->get<double>();
    }
    if (!file_.session.any_accepted()) return error(422, "empty_selection", "no cluster has been accepted");
    if (cutoff && *cutoff != file_.session.cutoff()) file_.session.set_cutoff(*cutoff);
    const auto before = file_.session.ids_with(Decision::undecided);
    file_.session.auto_reject_beyond_cutoff(analysis_.clusters);
    return mutated(newly_decided(before, file_.session));
}

Response ReviewService::post_mode(const json& request) {
    std::unique_lock lock(mutex_);
    if (auto bad = check_hash(request)) return *bad;
    const auto it = request.find("mode");
    const auto mode = (it != request.end() && it->is_string()) ? parse_mode(it->get<std::string>()) : std::nullopt;
    if (!mode) return error(400, "bad_request", "mode must be by_citations, by_size or by_distance_to_selected");
    file_.session.set_mode(*mode);
    return mutated({});
}

SessionFile ReviewService::snapshot() const {
    std::shared_lock lock(mutex_);
    return file_;
}

void mount_routes(httplib::Server& server, ReviewService& service) {
    const auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    const auto post = [&server, reply](const char* path, auto handler) {
        server.Post(path, [reply, handler](const httplib::Request& req, httplib::Response& res) {
            const json body = json::parse(req.body, nullptr, false);
            if (body.is_discarded()) {
                res.status = 400;
                res.set_content(R"({"schema_version":1,"error":{"code":"bad_request","message":"invalid JSON"}})",
                                "application/json");
                return;
            }
            reply(res, handler(body));
        });
    };

    server.Get("/api/v1/session", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.session_info());
    });
    server.Get("/api/v1/clusters", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.list_clusters());
    });
    server.Get(R"(/api/v1/clusters/(\d+))", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        int id = 0;
        try {
            id = std::stoi(req.matches[1].str());
        } catch (const std::out_of_range&) {
            id = 0;
        }
        reply(res, service.get_cluster(id));
    });
    server.Get("/api/v1/selection", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.selection());
    });
    server.Get("/api/v1/selection/export", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> format;
        if (req.has_param("format")) format = req.get_param_value("format");
        reply(res, service.export_selection(format));
    });
    server.Get("/api/v1/log", [&service, reply](const httplib::Request&, httplib::Response& res) {
        reply(res, service.log());
    });
    server.Get("/api/v1/auto-reject/preview", [&service, reply](const httplib::Request& req, httplib::Response& res) {
        double cutoff = service.snapshot().session.cutoff();
        if (req.has_param("cutoff")) {
            try {
                cutoff = std::stod(req.get_param_value("cutoff"));
            } catch (const std::exception&) {
                cutoff = -1.0;
            }
        }
        reply(res, service.preview_auto_reject(cutoff));
    });
    post("/api/v1/decisions", [&service](const json& b) { return service.post_decision(b); });
    post("/api/v1/bulk", [&service](const json& b) { return service.post_bulk(b); });
    post("/api/v1/auto-reject", [&service](const json& b) { return service.post_auto_reject(b); });
    post("/api/v1/mode", [&service](const json& b) { return service.post_mode(b); });
}

bool serve(ReviewService& service, const std::string& host, int port) {
    httplib::Server server;
    mount_routes(server, service);
    return server.listen(host, port);
}

} // namespace homonym
