#pragma once
// Terminal selection dialog: group table, per-group prompt and the
// single-letter command set.

#include <functional>
#include <iosfwd>
#include <string>

#include "homonym/pipeline.hpp"
#include "homonym/session.hpp"
#include "homonym/tokenize.hpp"

namespace homonym {

// Output layout, fixed to the widths of the classic filter dialog.
namespace dialog_layout {
inline constexpr int kFoundPapers = 6;     // "Found   142 papers in   18 groups"
inline constexpr int kFoundGroups = 5;
inline constexpr int kTableGroup = 4;      // "group, papers, citations =   1    99    4364"
inline constexpr int kTablePapers = 6;
inline constexpr int kTableCitations = 8;
inline constexpr int kBlockGroup = 5;      // "Group    1 has    99 papers and   4364 citations ..."
inline constexpr int kBlockPapers = 6;
inline constexpr int kBlockCitations = 7;
inline constexpr int kDistance = 6;        // "Distance to selected groups is ******"
inline constexpr std::size_t kAddressLineWidth = 72;
inline constexpr std::string_view kPrompt = " Select this group? (y|n|u|all|none|p|c|d|(number)|help):";
} // namespace dialog_layout

std::string format_cluster_table(const Analysis& analysis);
std::string format_paper(const PublicationRecord& record, bool with_address);
std::string format_group_block(const Analysis& analysis, const SelectionSession& session, int id);
std::string format_distance(std::optional<double> distance);
std::string dialog_help();

using SessionSink = std::function<void(const SessionFile&)>;

// Prints the cluster table, then prompts group by group until every group
// is decided or input ends. `save` runs after every state change.
int run_filter_dialog(const Analysis& analysis, SessionFile& file, std::istream& in, std::ostream& out,
                      const SessionSink& save = {});

} // namespace homonym
