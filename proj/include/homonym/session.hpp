#pragma once
// Review state for one target author: per-cluster decisions, presentation
// order, an append-only action log, and the merit summary of the accepted
// records.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "homonym/cluster.hpp"
#include "homonym/record.hpp"

namespace homonym {

enum class Decision { undecided, accepted, rejected };
enum class Verdict { accept, reject };
enum class PresentationMode { by_citations, by_size, by_distance_to_selected };

std::string_view to_string(Decision d);
std::string_view to_string(PresentationMode m);
std::optional<Decision> parse_decision(std::string_view s);
std::optional<PresentationMode> parse_mode(std::string_view s);

inline constexpr double kDefaultCutoff = 3.0;
// Shown in place of a distance while nothing has been accepted.
inline constexpr std::string_view kNoSelectionSentinel = "******";

// Invalid session state transition (e.g. cutoff rejection with nothing accepted).
class SessionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LogEntry {
    std::uint64_t seq = 0;
    std::string timestamp;
    std::string action; // accept reject undo accept_all reject_all auto_reject mode cutoff
    int cluster = 0;
    std::string mode;
    double value = 0.0;

    bool operator==(const LogEntry&) const = default;
};

using Clock = std::function<std::string()>;

// ISO-8601 UTC, second resolution.
std::string utc_timestamp();

class SelectionSession {
public:
    SelectionSession(std::string corpus_hash, std::size_t cluster_count, double cutoff = kDefaultCutoff);

    const std::string& corpus_hash() const { return corpus_hash_; }
    std::size_t cluster_count() const { return decisions_.size(); }
    double initial_cutoff() const { return initial_cutoff_; }
    double cutoff() const { return cutoff_; }
    PresentationMode mode() const { return mode_; }
    const std::vector<LogEntry>& log() const { return log_; }

    Decision decision(int id) const;
    std::vector<int> ids_with(Decision d) const;
    bool any_accepted() const;

    void set_clock(Clock clock) { clock_ = std::move(clock); }

    void decide(int id, Verdict verdict);
    void undo(int id);
    std::size_t accept_all_remaining();
    std::size_t reject_all_remaining();
    void set_mode(PresentationMode mode);
    void set_cutoff(double cutoff);
    // Rejects every undecided cluster farther than cutoff() from the accepted
    // set; returns the number rejected.
    std::size_t auto_reject_beyond_cutoff(const ClusterSet& clusters);

    // Re-applies a logged action, keeping its sequence number and timestamp.
    void apply(const LogEntry& entry, const ClusterSet& clusters);

    bool operator==(const SelectionSession& other) const;

private:
    void check_id(int id) const;
    LogEntry& append(std::string action);
    std::size_t set_all_undecided(Decision to);

    std::string corpus_hash_;
    double initial_cutoff_;
    double cutoff_;
    PresentationMode mode_ = PresentationMode::by_citations;
    std::vector<Decision> decisions_; // index = id - 1
    std::vector<LogEntry> log_;
    Clock clock_ = utc_timestamp;
};

// Single-linkage distance from cluster `id` to the union of accepted
// clusters; nullopt while nothing is accepted.
std::optional<double> distance_to_selected(const SelectionSession& session, const ClusterSet& clusters, int id);

// Every cluster id in the order of the session's presentation mode.
std::vector<int> presentation_order(const SelectionSession& session, const ClusterSet& clusters);

// First undecided cluster in presentation order; nullopt when exhausted.
std::optional<int> next_cluster(const SelectionSession& session, const ClusterSet& clusters);

// How many undecided clusters auto_reject_beyond_cutoff would reject at `cutoff`.
std::size_t count_beyond_cutoff(const SelectionSession& session, const ClusterSet& clusters, double cutoff);

SelectionSession replay(std::string corpus_hash, std::size_t cluster_count, double initial_cutoff,
                        const std::vector<LogEntry>& log, const ClusterSet& clusters);

struct MeritSummary {
    std::size_t papers = 0;
    std::uint64_t citations = 0;
    double citations_per_paper = 0.0;
    std::optional<int> year_min;
    std::optional<int> year_max;
    std::uint32_t h_index = 0; // extension: not part of the original indicator set
};

struct Selection {
    std::vector<std::size_t> record_ids; // source order
    MeritSummary summary;
};

std::uint32_t h_index(std::vector<std::uint32_t> citations);

// Throws SessionError when nothing is accepted.
Selection export_selection(const SelectionSession& session, const Corpus& corpus, const ClusterSet& clusters);

std::string format_merit(const MeritSummary& summary);

// On-disk session: the replayable state plus what is needed to rebuild the
// analysis it refers to.
struct SessionFile {
    SelectionSession session;
    std::vector<std::string> sources;
    nlohmann::json settings = nlohmann::json::object();
};

inline constexpr std::string_view kSessionFormat = "homonym-session";
inline constexpr int kSessionVersion = 1;

nlohmann::json session_to_json(const SessionFile& file);
// Rebuilds the session by replaying its log; throws SessionError on a
// format/version problem or when the stored decisions disagree with the log.
SessionFile session_from_json(const nlohmann::json& doc, const ClusterSet& clusters);

// Reads only the fields needed to rebuild the analysis (sources, settings, hash).
struct SessionHeader {
    std::string corpus_hash;
    std::vector<std::string> sources;
    nlohmann::json settings;
};
SessionHeader read_session_header(const std::filesystem::path& path);

void save_session(const std::filesystem::path& path, const SessionFile& file);
// Throws SessionError when the stored corpus hash differs from `expected_hash`.
SessionFile load_session(const std::filesystem::path& path, const std::string& expected_hash,
                         const ClusterSet& clusters);

} // namespace homonym
