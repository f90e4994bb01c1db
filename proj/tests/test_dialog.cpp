#include <sstream>

#include "doctest.h"

#include "homonym/dialog.hpp"
#include "oracles.hpp"

using namespace homonym;

namespace {

Analysis soler() {
    const Settings s;
    return analyze(load_corpus({oracle::data_path("soler.txt")}, s), s);
}

SessionFile new_file(const Analysis& a) {
    SessionFile f{SelectionSession(a.hash, a.clusters.size()), {}, {}};
    f.session.set_clock([] { return std::string("2026-01-01T00:00:00Z"); });
    return f;
}

std::string run(const Analysis& a, SessionFile& f, const std::string& script, int* saves = nullptr) {
    std::istringstream in(script);
    std::ostringstream out;
    run_filter_dialog(a, f, in, out, [saves](const SessionFile&) {
        if (saves) ++*saves;
    });
    return out.str();
}

} // namespace

TEST_SUITE("dialog") {

TEST_CASE("header lines use the fixed widths") {
    const Analysis a = soler();
    const std::string table = format_cluster_table(a);
    CHECK(table.rfind("Found     8 papers in    5 groups\n", 0) == 0);
    CHECK(table.find("group, papers, citations =   1     3    3375\n") != std::string::npos);
    CHECK(table.find("group, papers, citations =   5     1       0\n") != std::string::npos);
}

TEST_CASE("distance field") {
    CHECK(format_distance(std::nullopt) == "******");
    CHECK(format_distance(5.3595) == "  5.36");
    CHECK(format_distance(0.0) == "  0.00");
    CHECK(format_distance(12.5) == " 12.50");
}

TEST_CASE("scripted session reproduces the golden transcript") {
    const Analysis a = soler();
    SessionFile f = new_file(a);
    int saves = 0;
    const std::string got = run(a, f, oracle::read_file(oracle::data_path("soler_answers.txt")), &saves);
    CHECK(got == oracle::read_file(oracle::data_path("soler_transcript.txt")));
    CHECK(f.session.ids_with(Decision::accepted) == std::vector<int>{1, 4});
    CHECK(saves == 7);
}

TEST_CASE("help leaves the session unchanged") {
    const Analysis a = soler();
    SessionFile f = new_file(a);
    int saves = 0;
    const std::string out = run(a, f, "help\n", &saves);
    CHECK(out.find(dialog_help()) != std::string::npos);
    CHECK(f.session.log().empty());
    CHECK(saves == 0);
    CHECK(out.find("Input ended with    5 groups undecided") != std::string::npos);
}

TEST_CASE("cutoff rejection needs a selection") {
    const Analysis a = soler();
    SessionFile f = new_file(a);
    const std::string out = run(a, f, "x\ny\nx\n");
    CHECK(out.find(" No groups selected yet\n") != std::string::npos);
    CHECK(out.find(" Rejected    4 groups farther than 3.00\n") != std::string::npos);
    CHECK(out.find("Selected     3 papers in    1 groups\n") != std::string::npos);
    CHECK(f.session.ids_with(Decision::rejected) == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("undo of a cutoff rejection restores every group it decided") {
    const Analysis a = soler();
    SessionFile f{SelectionSession(a.hash, a.clusters.size(), 7.0), {}, {}};
    const std::string out = run(a, f, "y\nx\nu\n");
    CHECK(out.find(" Rejected    3 groups farther than 7.00\n") != std::string::npos);
    CHECK(f.session.ids_with(Decision::undecided) == std::vector<int>{2, 3, 4, 5});
    CHECK(f.session.ids_with(Decision::accepted) == std::vector<int>{1});
}

TEST_CASE("deciding the last group ends the dialog") {
    const Analysis a = soler();
    SessionFile f = new_file(a);
    const std::string out = run(a, f, "y\nnone\nu\n");
    CHECK(out.ends_with("\nSelected     3 papers in    1 groups\n"));
    CHECK(f.session.ids_with(Decision::rejected) == std::vector<int>{2, 3, 4, 5});
}

TEST_CASE("odd input") {
    const Analysis a = soler();
    SessionFile f = new_file(a);
    const std::string out = run(a, f, "u\n\nmaybe\n42\n5\n");
    CHECK(out.find(" Nothing to undo\n") != std::string::npos);
    CHECK(out.find(" Unknown option 'maybe', type help for the list\n") != std::string::npos);
    CHECK(out.find(" No group 42\n") != std::string::npos);
    CHECK(out.find("Group    5 has") != std::string::npos);
    CHECK(f.session.log().empty());
}

TEST_CASE("paper listing for a singleton") {
    const Analysis a = soler();
    SessionFile f = new_file(a);
    CHECK(run(a, f, "5\np\n").find(" This group has no other papers\n") != std::string::npos);
}

TEST_CASE("group block layout") {
    const Analysis a = soler();
    SessionFile f = new_file(a);
    const std::string block = format_group_block(a, f.session, 1);
    CHECK(block ==
          "\n"
          "Group    1 has     3 papers and   3375 citations in period 1988-2002\n"
          "Distance to selected groups is ******   A sample paper is\n"
          " Title: The SIESTA method for ab initio order-N materials simulation\n"
          " Authors:  Soler, JM; Artacho, E; Gale, JD; Garcia, A; Junquera, J; Ordejon, P; Sanchez-Portal, D;\n"
          " Source:  J. Phys.-Condes. Matter (2002) 14, 2745:2779\n"
          " Address words: UNIV AUTONOMA MADRID DEPT FIS MAT CONDENSADA C-III \n"
          "   E-28049 SPAIN \n");
}

} // TEST_SUITE
