#include "homonym/session.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

namespace homonym {

namespace {

constexpr std::string_view kDecisionNames[] = {"undecided", "accepted", "rejected"};
constexpr std::string_view kModeNames[] = {"by_citations", "by_size", "by_distance_to_selected"};

} // namespace

std::string_view to_string(Decision d) { return kDecisionNames[static_cast<int>(d)]; }
std::string_view to_string(PresentationMode m) { return kModeNames[static_cast<int>(m)]; }

std::optional<Decision> parse_decision(std::string_view s) {
    for (int i = 0; i < 3; ++i) {
        if (kDecisionNames[i] == s) return static_cast<Decision>(i);
    }
    return std::nullopt;
}

std::optional<PresentationMode> parse_mode(std::string_view s) {
    for (int i = 0; i < 3; ++i) {
        if (kModeNames[i] == s) return static_cast<PresentationMode>(i);
    }
    return std::nullopt;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

SelectionSession::SelectionSession(std::string corpus_hash, std::size_t cluster_count, double cutoff)
    : corpus_hash_(std::move(corpus_hash)),
      initial_cutoff_(cutoff),
      cutoff_(cutoff),
      decisions_(cluster_count, Decision::undecided) {
    if (!(cutoff > 0.0)) throw SessionError("cutoff must be positive");
}

void SelectionSession::check_id(int id) const {
    if (id < 1 || static_cast<std::size_t>(id) > decisions_.size()) {
        throw std::out_of_range("unknown cluster id " + std::to_string(id));
    }
}

Decision SelectionSession::decision(int id) const {
    check_id(id);
    return decisions_[static_cast<std::size_t>(id - 1)];
}

std::vector<int> SelectionSession::ids_with(Decision d) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < decisions_.size(); ++i) {
        if (decisions_[i] == d) out.push_back(static_cast<int>(i + 1));
    }
    return out;
}

bool SelectionSession::any_accepted() const {
    return std::find(decisions_.begin(), decisions_.end(), Decision::accepted) != decisions_.end();
}

LogEntry& SelectionSession::append(std::string action) {
    LogEntry e;
    e.seq = log_.size() + 1;
    e.timestamp = clock_ ? clock_() : std::string();
    e.action = std::move(action);
    log_.push_back(std::move(e));
    return log_.back();
}

void SelectionSession::decide(int id, Verdict verdict) {
    check_id(id);
    decisions_[static_cast<std::size_t>(id - 1)] =
        verdict == Verdict::accept ? Decision::accepted : Decision::rejected;
    append(verdict == Verdict::accept ? "accept" : "reject").cluster = id;
}

void SelectionSession::undo(int id) {
    check_id(id);
    decisions_[static_cast<std::size_t>(id - 1)] = Decision::undecided;
    append("undo").cluster = id;
}

std::size_t SelectionSession::set_all_undecided(Decision to) {
    std::size_t n = 0;
    for (auto& d : decisions_) {
        if (d == Decision::undecided) {
            d = to;
            ++n;
        }
    }
    return n;
}

std::size_t SelectionSession::accept_all_remaining() {
    const auto n = set_all_undecided(Decision::accepted);
    append("accept_all");
    return n;
}

std::size_t SelectionSession::reject_all_remaining() {
    const auto n = set_all_undecided(Decision::rejected);
    append("reject_all");
    return n;
}

void SelectionSession::set_mode(PresentationMode mode) {
    mode_ = mode;
    append("mode").mode = std::string(to_string(mode));
}

void SelectionSession::set_cutoff(double cutoff) {
    if (!(cutoff > 0.0)) throw SessionError("cutoff must be positive");
    cutoff_ = cutoff;
    append("cutoff").value = cutoff;
}

std::size_t SelectionSession::auto_reject_beyond_cutoff(const ClusterSet& clusters) {
    if (!any_accepted()) throw SessionError("no accepted clusters: cutoff has no reference set");
    std::size_t n = 0;
    for (int id = 1; id <= static_cast<int>(decisions_.size()); ++id) {
        auto& d = decisions_[static_cast<std::size_t>(id - 1)];
        if (d != Decision::undecided) continue;
        const auto dist = distance_to_selected(*this, clusters, id);
        if (dist && *dist > cutoff_) {
            d = Decision::rejected;
            ++n;
        }
    }
    append("auto_reject").value = cutoff_;
    return n;
}

void SelectionSession::apply(const LogEntry& entry, const ClusterSet& clusters) {
    const std::size_t before = log_.size();
    const auto& a = entry.action;
    if (a == "accept") decide(entry.cluster, Verdict::accept);
    else if (a == "reject") decide(entry.cluster, Verdict::reject);
    else if (a == "undo") undo(entry.cluster);
    else if (a == "accept_all") accept_all_remaining();
    else if (a == "reject_all") reject_all_remaining();
    else if (a == "auto_reject") auto_reject_beyond_cutoff(clusters);
    else if (a == "cutoff") set_cutoff(entry.value);
    else if (a == "mode") {
        const auto m = parse_mode(entry.mode);
        if (!m) throw SessionError("unknown presentation mode '" + entry.mode + "' in log");
        set_mode(*m);
    } else {
        throw SessionError("unknown log action '" + a + "'");
    }
    if (log_.size() == before + 1) {
        log_.back().seq = entry.seq;
        log_.back().timestamp = entry.timestamp;
    }
}

bool SelectionSession::operator==(const SelectionSession& o) const {
    return corpus_hash_ == o.corpus_hash_ && initial_cutoff_ == o.initial_cutoff_ && cutoff_ == o.cutoff_ &&
           mode_ == o.mode_ && decisions_ == o.decisions_ && log_ == o.log_;
}

std::optional<double> distance_to_selected(const SelectionSession& session, const ClusterSet& clusters, int id) {
    std::optional<double> best;
    for (int a : session.ids_with(Decision::accepted)) {
        const double d = clusters.distance(id, a);
        if (!best || d < *best) best = d;
    }
    return best;
}

std::vector<int> presentation_order(const SelectionSession& session, const ClusterSet& clusters) {
    std::vector<int> ids(clusters.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i + 1);
    switch (session.mode()) {
        case PresentationMode::by_citations:
            break;
        case PresentationMode::by_size:
            std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
                return clusters.at(a).paper_count > clusters.at(b).paper_count;
            });
            break;
        case PresentationMode::by_distance_to_selected: {
            std::vector<double> dist(ids.size());
            for (int id : ids) {
                dist[static_cast<std::size_t>(id - 1)] =
                    distance_to_selected(session, clusters, id).value_or(std::numeric_limits<double>::infinity());
            }
            std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
                return dist[static_cast<std::size_t>(a - 1)] < dist[static_cast<std::size_t>(b - 1)];
            });
            break;
        }
    }
    return ids;
}

std::optional<int> next_cluster(const SelectionSession& session, const ClusterSet& clusters) {
    for (int id : presentation_order(session, clusters)) {
        if (session.decision(id) == Decision::undecided) return id;
    }
    return std::nullopt;
}

std::size_t count_beyond_cutoff(const SelectionSession& session, const ClusterSet& clusters, double cutoff) {
    if (!session.any_accepted()) return 0;
    std::size_t n = 0;
    for (int id : session.ids_with(Decision::undecided)) {
        const auto d = distance_to_selected(session, clusters, id);
        if (d && *d > cutoff) ++n;
    }
    return n;
}

SelectionSession replay(std::string corpus_hash, std::size_t cluster_count, double initial_cutoff,
                        const std::vector<LogEntry>& log, const ClusterSet& clusters) {
    SelectionSession s(std::move(corpus_hash), cluster_count, initial_cutoff);
    s.set_clock(nullptr);
    for (const auto& e : log) s.apply(e, clusters);
    s.set_clock(utc_timestamp);
    return s;
}

std::uint32_t h_index(std::vector<std::uint32_t> citations) {
    std::sort(citations.begin(), citations.end(), std::greater<>());
    std::uint32_t h = 0;
    while (h < citations.size() && citations[h] >= h + 1) ++h;
    return h;
}

Selection export_selection(const SelectionSession& session, const Corpus& corpus, const ClusterSet& clusters) {
    const auto accepted = session.ids_with(Decision::accepted);
    if (accepted.empty()) throw SessionError("nothing accepted");
    Selection sel;
    for (int id : accepted) {
        const auto& members = clusters.at(id).member_ids;
        sel.record_ids.insert(sel.record_ids.end(), members.begin(), members.end());
    }
    std::sort(sel.record_ids.begin(), sel.record_ids.end());

    auto& s = sel.summary;
    std::vector<std::uint32_t> cites;
    for (std::size_t rid : sel.record_ids) {
        const auto& rec = corpus.records.at(rid);
        cites.push_back(rec.citations);
        s.citations += rec.citations;
        if (auto y = rec.year_value()) {
            s.year_min = s.year_min ? std::min(*s.year_min, *y) : *y;
            s.year_max = s.year_max ? std::max(*s.year_max, *y) : *y;
        }
    }
    s.papers = sel.record_ids.size();
    s.citations_per_paper = static_cast<double>(s.citations) / static_cast<double>(s.papers);
    s.h_index = h_index(std::move(cites));
    return sel;
}

std::string format_merit(const MeritSummary& s) {
    char buf[256];
    std::string period = "-";
    if (s.year_min && s.year_max) period = std::to_string(*s.year_min) + "-" + std::to_string(*s.year_max);
    std::snprintf(buf, sizeof buf,
                  "Papers:          %10zu\n"
                  "Citations:       %10llu\n"
                  "Citations/paper: %10.2f\n"
                  "Period:          %10s\n"
                  "h-index:         %10u\n",
                  s.papers, static_cast<unsigned long long>(s.citations), s.citations_per_paper, period.c_str(),
                  s.h_index);
    return buf;
}

nlohmann::json session_to_json(const SessionFile& file) {
    using nlohmann::json;
    const auto& s = file.session;
    json decisions = json::array();
    for (std::size_t i = 0; i < s.cluster_count(); ++i) {
        const int id = static_cast<int>(i + 1);
        decisions.push_back({{"cluster", id}, {"decision", to_string(s.decision(id))}});
    }
    json log = json::array();
    for (const auto& e : s.log()) {
        json entry = {{"seq", e.seq}, {"time", e.timestamp}, {"action", e.action}};
        if (e.action == "accept" || e.action == "reject" || e.action == "undo") entry["cluster"] = e.cluster;
        if (e.action == "mode") entry["mode"] = e.mode;
        if (e.action == "cutoff" || e.action == "auto_reject") entry["value"] = e.value;
        log.push_back(std::move(entry));
    }
    return json{
        {"format", kSessionFormat},
        {"version", kSessionVersion},
        {"corpus_hash", s.corpus_hash()},
        {"clusters", s.cluster_count()},
        {"initial_cutoff", s.initial_cutoff()},
        {"cutoff", s.cutoff()},
        {"mode", to_string(s.mode())},
        {"decisions", std::move(decisions)},
        {"log", std::move(log)},
        {"sources", file.sources},
        {"settings", file.settings},
    };
}

namespace {

void check_format(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("format", "") != kSessionFormat) {
        throw SessionError("not a session file");
    }
    if (doc.value("version", 0) != kSessionVersion) {
        throw SessionError("unsupported session version " + doc.value("version", nlohmann::json()).dump());
    }
}

} // namespace

SessionFile session_from_json(const nlohmann::json& doc, const ClusterSet& clusters) {
    check_format(doc);
    try {
        std::vector<LogEntry> log;
        for (const auto& j : doc.at("log")) {
            LogEntry e;
            e.seq = j.at("seq").get<std::uint64_t>();
            e.timestamp = j.at("time").get<std::string>();
            e.action = j.at("action").get<std::string>();
            e.cluster = j.value("cluster", 0);
            e.mode = j.value("mode", "");
            e.value = j.value("value", 0.0);
            log.push_back(std::move(e));
        }
        const auto count = doc.at("clusters").get<std::size_t>();
        if (count != clusters.size()) {
            throw SessionError("session has " + std::to_string(count) + " clusters, analysis has " +
                               std::to_string(clusters.size()));
        }
        SessionFile file{replay(doc.at("corpus_hash").get<std::string>(), count,
                                doc.at("initial_cutoff").get<double>(), log, clusters),
                         doc.value("sources", std::vector<std::string>{}),
                         doc.value("settings", nlohmann::json::object())};
        for (const auto& d : doc.at("decisions")) {
            const int id = d.at("cluster").get<int>();
            const auto stored = parse_decision(d.at("decision").get<std::string>());
            if (!stored || file.session.decision(id) != *stored) {
                throw SessionError("stored decision for cluster " + std::to_string(id) +
                                   " does not match the replayed log");
            }
        }
        return file;
    } catch (const nlohmann::json::exception& e) {
        throw SessionError(std::string("malformed session file: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw SessionError(std::string("malformed session file: ") + e.what());
    }
}

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SessionError("cannot open session file " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SessionError("malformed session file " + path.string() + ": " + e.what());
    }
}

} // namespace

SessionHeader read_session_header(const std::filesystem::path& path) {
    const auto doc = read_json(path);
    check_format(doc);
    return SessionHeader{doc.value("corpus_hash", ""), doc.value("sources", std::vector<std::string>{}),
                         doc.value("settings", nlohmann::json::object())};
}

void save_session(const std::filesystem::path& path, const SessionFile& file) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SessionError("cannot write session file " + tmp.string());
        out << session_to_json(file).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

SessionFile load_session(const std::filesystem::path& path, const std::string& expected_hash,
                         const ClusterSet& clusters) {
    const auto doc = read_json(path);
    check_format(doc);
    const auto stored = doc.value("corpus_hash", "");
    if (stored != expected_hash) {
        throw SessionError("session " + path.string() + " belongs to corpus " + stored + ", not " + expected_hash);
    }
    return session_from_json(doc, clusters);
}

} // namespace homonym
