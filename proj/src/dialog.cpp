#include "homonym/dialog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <vector>

namespace homonym {

namespace {

namespace L = dialog_layout;

std::string printf_string(const char* fmt, auto... args) {
    const int n = std::snprintf(nullptr, 0, fmt, args...);
    std::string out(static_cast<std::size_t>(n), '\0');
    std::snprintf(out.data(), out.size() + 1, fmt, args...);
    return out;
}

std::string period(const std::optional<int>& lo, const std::optional<int>& hi) {
    if (!lo || !hi) return "unknown";
    return std::to_string(*lo) + "-" + std::to_string(*hi);
}

std::string trim_lower(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    s = s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string_view mode_label(PresentationMode m) {
    switch (m) {
        case PresentationMode::by_citations: return "citations";
        case PresentationMode::by_size: return "number of papers";
        case PresentationMode::by_distance_to_selected: return "distance to selected groups";
    }
    return "";
}

std::size_t accepted_papers(const Analysis& a, const SelectionSession& s) {
    std::size_t n = 0;
    for (int id : s.ids_with(Decision::accepted)) n += a.clusters.at(id).paper_count;
    return n;
}

} // namespace

std::string format_cluster_table(const Analysis& analysis) {
    std::string out = printf_string("Found%*zu papers in%*zu groups\n", L::kFoundPapers, analysis.corpus.size(),
                                    L::kFoundGroups, analysis.clusters.size());
    for (const auto& c : analysis.clusters.clusters) {
        out += printf_string("group, papers, citations =%*d%*zu%*llu\n", L::kTableGroup, c.id, L::kTablePapers,
                             c.paper_count, L::kTableCitations,
                             static_cast<unsigned long long>(c.total_citations));
    }
    return out;
}

std::string format_distance(std::optional<double> distance) {
    if (!distance) return std::string(kNoSelectionSentinel);
    return printf_string("%*.2f", L::kDistance, *distance);
}

std::string format_paper(const PublicationRecord& rec, bool with_address) {
    const auto& t = rec.text;
    std::string out = " Title: " + t.title + "\n";
    out += " Authors: ";
    for (const auto& a : t.authors) out += " " + a + ";";
    out += "\n";

    std::string source = t.source;
    if (!t.year.empty()) source += " (" + t.year + ")";
    if (!t.volume.empty()) source += " " + t.volume;
    if (!t.pages.empty()) source += (t.volume.empty() ? " " : ", ") + t.pages;
    out += " Source:  " + source + "\n";

    if (with_address) {
        std::string line = " Address words: ";
        bool has_word = false;
        for (const auto& w : address_display_words(t.addresses)) {
            if (has_word && line.size() + w.size() + 1 > L::kAddressLineWidth) {
                out += line + "\n";
                line = "   ";
            }
            line += w + " ";
            has_word = true;
        }
        out += line + "\n";
    }
    return out;
}

std::string format_group_block(const Analysis& analysis, const SelectionSession& session, int id) {
    const Cluster& c = analysis.clusters.at(id);
    std::string out = "\n";
    out += printf_string("Group%*d has%*zu papers and%*llu citations in period %s\n", L::kBlockGroup, id,
                         L::kBlockPapers, c.paper_count, L::kBlockCitations,
                         static_cast<unsigned long long>(c.total_citations), period(c.year_min, c.year_max).c_str());
    out += "Distance to selected groups is " + format_distance(distance_to_selected(session, analysis.clusters, id)) +
           "   A sample paper is\n";
    out += format_paper(analysis.corpus.records.at(c.representative_id), true);
    return out;
}

std::string dialog_help() {
    return " y       select this group\n"
           " n       reject this group\n"
           " u       undo the last decision and show that group again\n"
           " all     select all remaining groups\n"
           " none    reject all remaining groups\n"
           " p       show the other papers of this group\n"
           " c       change the order of presentation (citations, size, distance)\n"
           " d       show the distances from this group to the other groups\n"
           " x       reject all remaining groups farther than the cutoff distance\n"
           " number  go to that group\n"
           " help    show this list\n";
}

int run_filter_dialog(const Analysis& analysis, SessionFile& file, std::istream& in, std::ostream& out,
                      const SessionSink& save) {
    SelectionSession& session = file.session;
    const ClusterSet& clusters = analysis.clusters;
    auto persist = [&] {
        if (save) save(file);
    };

    out << format_cluster_table(analysis);

    // Each entry lists the groups one command decided, for "u".
    std::vector<std::vector<int>> undo_stack;
    std::optional<int> current = next_cluster(session, clusters);
    bool show = true;

    while (true) {
        if (!current) {
            out << "\n";
            out << printf_string("Selected%*zu papers in%*zu groups\n", L::kFoundPapers,
                                 accepted_papers(analysis, session), L::kFoundGroups,
                                 session.ids_with(Decision::accepted).size());
            return 0;
        }
        if (show) out << format_group_block(analysis, session, *current);
        show = false;
        out << L::kPrompt << "\n";

        std::string line;
        if (!std::getline(in, line)) {
            out << "\n"
                << printf_string("Input ended with%*zu groups undecided\n", L::kFoundGroups,
                                 session.ids_with(Decision::undecided).size());
            return 0;
        }
        const std::string cmd = trim_lower(line);
        const Cluster& group = clusters.at(*current);

        if (cmd == "y" || cmd == "n") {
            session.decide(*current, cmd == "y" ? Verdict::accept : Verdict::reject);
            undo_stack.push_back({*current});
            persist();
            current = next_cluster(session, clusters);
            show = true;
        } else if (cmd == "all" || cmd == "none") {
            auto ids = session.ids_with(Decision::undecided);
            cmd == "all" ? session.accept_all_remaining() : session.reject_all_remaining();
            undo_stack.push_back(std::move(ids));
            persist();
            current = next_cluster(session, clusters);
            show = true;
        } else if (cmd == "u") {
            if (undo_stack.empty()) {
                out << " Nothing to undo\n";
                continue;
            }
            const auto ids = std::move(undo_stack.back());
            undo_stack.pop_back();
            for (int id : ids) session.undo(id);
            persist();
            if (!ids.empty()) current = ids.front();
            show = true;
        } else if (cmd == "x") {
            if (!session.any_accepted()) {
                out << " No groups selected yet\n";
                continue;
            }
            const auto before = session.ids_with(Decision::undecided);
            const std::size_t n = session.auto_reject_beyond_cutoff(clusters);
            std::vector<int> rejected;
            for (int id : before) {
                if (session.decision(id) == Decision::rejected) rejected.push_back(id);
            }
            undo_stack.push_back(std::move(rejected));
            persist();
            out << printf_string(" Rejected%*zu groups farther than %.2f\n", L::kFoundGroups, n, session.cutoff());
            current = next_cluster(session, clusters);
            show = true;
        } else if (cmd == "p") {
            const std::size_t total = group.member_ids.size();
            if (total == 1) {
                out << " This group has no other papers\n";
                continue;
            }
            std::size_t shown = 0;
            for (std::size_t rid : group.member_ids) {
                if (rid == group.representative_id) continue;
                out << printf_string(" Paper%*zu of%*zu\n", L::kTablePapers, ++shown, L::kTablePapers, total - 1);
                out << format_paper(analysis.corpus.records.at(rid), false);
            }
        } else if (cmd == "c") {
            const auto next = static_cast<PresentationMode>((static_cast<int>(session.mode()) + 1) % 3);
            session.set_mode(next);
            persist();
            out << " Ordering by " << mode_label(next) << "\n";
            current = next_cluster(session, clusters);
            show = true;
        } else if (cmd == "d") {
            for (const auto& other : clusters.clusters) {
                if (other.id == *current) continue;
                out << printf_string("group, distance =%*d%*.2f  %s\n", L::kTableGroup, other.id, L::kTableCitations,
                                     clusters.distance(*current, other.id),
                                     std::string(to_string(session.decision(other.id))).c_str());
            }
        } else if (cmd == "help" || cmd == "h" || cmd == "?") {
            out << dialog_help();
        } else if (cmd.empty()) {
            continue;
        } else if (std::all_of(cmd.begin(), cmd.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            int id = 0;
            std::from_chars(cmd.data(), cmd.data() + cmd.size(), id);
            if (!clusters.contains(id)) {
                out << " No group " << cmd << "\n";
                continue;
            }
            current = id;
            show = true;
        } else {
            out << " Unknown option '" << cmd << "', type help for the list\n";
        }
    }
}

} // namespace homonym
