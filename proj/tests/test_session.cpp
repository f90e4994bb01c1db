#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

#include "homonym/ingest.hpp"
#include "homonym/session.hpp"
#include "oracles.hpp"

using namespace homonym;
namespace fs = std::filesystem;

namespace {

// One record per cluster unless `sizes` says otherwise; cluster k holds the
// next sizes[k] records. Linkage is given directly.
struct Fixture {
    Corpus corpus;
    ClusterSet clusters;
};

Fixture make_fixture(const std::vector<std::size_t>& sizes, const std::vector<std::uint32_t>& cites,
                     const SquareMatrix& linkage, int first_year = 1990) {
    Fixture f;
    std::size_t next = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        Cluster c;
        c.id = static_cast<int>(k + 1);
        for (std::size_t m = 0; m < sizes[k]; ++m) {
            RecordText t;
            t.authors = {"Soler, JM"};
            t.title = "Paper " + std::to_string(next);
            t.year = std::to_string(first_year + int(next));
            t.citations = m == 0 ? cites[k] : 0;
            auto r = index_record(t);
            r.id = next;
            f.corpus.records.push_back(std::move(r));
            c.member_ids.push_back(next++);
        }
        c.paper_count = c.member_ids.size();
        c.total_citations = cites[k];
        c.year_min = first_year + int(c.member_ids.front());
        c.year_max = first_year + int(c.member_ids.back());
        c.representative_id = c.member_ids.front();
        f.clusters.clusters.push_back(c);
    }
    f.corpus.query_name = "soler_jm";
    f.clusters.linkage = linkage;
    return f;
}

SquareMatrix linkage_from(std::size_t k, std::initializer_list<std::tuple<int, int, double>> entries,
                          double fill = 8.0) {
    SquareMatrix m(k, fill);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 0.0;
    for (auto [a, b, v] : entries) m(std::size_t(a - 1), std::size_t(b - 1)) = m(std::size_t(b - 1), std::size_t(a - 1)) = v;
    return m;
}

Clock fixed_clock() {
    return [] { return std::string("2026-01-01T00:00:00Z"); };
}

SelectionSession fresh(const Fixture& f, double cutoff = kDefaultCutoff) {
    SelectionSession s("hash", f.clusters.size(), cutoff);
    s.set_clock(fixed_clock());
    return s;
}

} // namespace

TEST_SUITE("session") {

TEST_CASE("fresh session starts at cluster 1 with no reference distance") {
    const auto f = make_fixture({3, 2, 1}, {50, 20, 5}, linkage_from(3, {}));
    const auto s = fresh(f);
    CHECK(s.ids_with(Decision::undecided) == std::vector<int>{1, 2, 3});
    CHECK(next_cluster(s, f.clusters) == 1);
    CHECK(!distance_to_selected(s, f.clusters, 2).has_value());
    CHECK(!s.any_accepted());
}

TEST_CASE("distance ordering picks the closest undecided cluster") {
    const auto f = make_fixture({1, 1, 1, 1, 1}, {50, 40, 30, 20, 10},
                                linkage_from(5, {{1, 2, 0.0}, {1, 5, 4.1}, {1, 3, 6.0}, {1, 4, 7.0}}));
    auto s = fresh(f);
    s.decide(1, Verdict::accept);
    s.set_mode(PresentationMode::by_distance_to_selected);
    CHECK(next_cluster(s, f.clusters) == 2);
    CHECK(presentation_order(s, f.clusters) == std::vector<int>{1, 2, 5, 3, 4});
    s.decide(2, Verdict::reject);
    CHECK(next_cluster(s, f.clusters) == 5);
}

TEST_CASE("size ordering is stable on ties") {
    const auto f = make_fixture({1, 3, 2, 3}, {50, 40, 30, 20}, linkage_from(4, {}));
    auto s = fresh(f);
    s.set_mode(PresentationMode::by_size);
    CHECK(presentation_order(s, f.clusters) == std::vector<int>{2, 4, 3, 1});
}

TEST_CASE("decisions, bulk verbs and exhaustion") {
    const auto f = make_fixture({1, 1, 1, 1}, {4, 3, 2, 1}, linkage_from(4, {}));
    auto s = fresh(f);
    s.decide(1, Verdict::accept);
    CHECK(s.decision(1) == Decision::accepted);
    s.decide(2, Verdict::reject);
    s.decide(2, Verdict::accept);
    CHECK(s.decision(2) == Decision::accepted);
    REQUIRE(s.log().size() == 3);
    CHECK(s.log()[1].action == "reject");
    CHECK(s.log()[2].action == "accept");
    CHECK(s.log()[2].seq == 3);

    CHECK(s.reject_all_remaining() == 2);
    CHECK(!next_cluster(s, f.clusters).has_value());
    CHECK(s.accept_all_remaining() == 0);
    s.undo(3);
    CHECK(s.decision(3) == Decision::undecided);
    CHECK(s.accept_all_remaining() == 1);
    CHECK(s.ids_with(Decision::accepted) == std::vector<int>{1, 2, 3});

    CHECK_THROWS_AS(s.decide(0, Verdict::accept), std::out_of_range);
    CHECK_THROWS_AS(s.decide(5, Verdict::accept), std::out_of_range);
    CHECK_THROWS_AS(s.decision(9), std::out_of_range);
}

TEST_CASE("auto-reject beyond the cutoff") {
    const auto f = make_fixture({1, 1, 1, 1}, {40, 30, 20, 10}, linkage_from(4, {{1, 2, 2.9}, {1, 3, 3.1}, {1, 4, 7.0}}));
    {
        auto s = fresh(f);
        CHECK_THROWS_AS(s.auto_reject_beyond_cutoff(f.clusters), SessionError);
        s.decide(1, Verdict::accept);
        CHECK(count_beyond_cutoff(s, f.clusters, 3.0) == 2);
        CHECK(s.auto_reject_beyond_cutoff(f.clusters) == 2);
        CHECK(s.decision(2) == Decision::undecided);
        CHECK(s.decision(3) == Decision::rejected);
        CHECK(s.decision(4) == Decision::rejected);
        s.decide(2, Verdict::accept);
        CHECK(s.auto_reject_beyond_cutoff(f.clusters) == 0);
    }
    {
        auto s = fresh(f, 8.0);
        s.decide(1, Verdict::accept);
        CHECK(count_beyond_cutoff(s, f.clusters, 8.0) == 0);
        CHECK(s.auto_reject_beyond_cutoff(f.clusters) == 0);
    }
    {
        auto s = fresh(f);
        CHECK_THROWS_AS(s.set_cutoff(0.0), SessionError);
        CHECK_THROWS_AS(SelectionSession("h", 2, -1.0), SessionError);
        s.set_cutoff(3.05);
        s.decide(1, Verdict::accept);
        CHECK(s.auto_reject_beyond_cutoff(f.clusters) == 2);
    }
}

TEST_CASE("accepting never pushes an undecided cluster farther away") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t k = 3 + rng() % 8;
        SquareMatrix link = oracle::random_clamped(rng, k, 0.0);
        const auto f = make_fixture(std::vector<std::size_t>(k, 1), std::vector<std::uint32_t>(k, 1), link);
        auto s = fresh(f);
        for (int step = 0; step < int(k); ++step) {
            const auto undecided = s.ids_with(Decision::undecided);
            if (undecided.empty()) break;
            std::vector<double> before;
            for (int id : undecided) before.push_back(distance_to_selected(s, f.clusters, id).value_or(1e300));
            s.decide(undecided[rng() % undecided.size()], (rng() % 3) ? Verdict::accept : Verdict::reject);
            for (std::size_t i = 0; i < undecided.size(); ++i) {
                CHECK(distance_to_selected(s, f.clusters, undecided[i]).value_or(1e300) <= before[i]);
            }
        }
    }
}

TEST_CASE("replay reproduces state") {
    const auto f = make_fixture({2, 1, 1, 1, 3}, {40, 30, 20, 10, 5},
                                linkage_from(5, {{1, 2, 1.0}, {1, 3, 2.5}, {2, 4, 6.0}, {1, 5, 0.5}}));
    auto s = fresh(f);
    s.decide(1, Verdict::accept);
    s.set_mode(PresentationMode::by_distance_to_selected);
    s.decide(5, Verdict::reject);
    s.undo(5);
    s.set_cutoff(2.0);
    s.auto_reject_beyond_cutoff(f.clusters);
    s.decide(2, Verdict::accept);
    const auto r = replay("hash", 5, kDefaultCutoff, s.log(), f.clusters);
    CHECK(r == s);
    CHECK(r.log() == s.log());
    CHECK(export_selection(r, f.corpus, f.clusters).record_ids == export_selection(s, f.corpus, f.clusters).record_ids);
}

TEST_CASE("selection export and merit summary") {
    const auto f = make_fixture({3, 1, 2}, {60, 0, 7}, linkage_from(3, {}), 1981);
    auto s = fresh(f);
    CHECK_THROWS_AS(export_selection(s, f.corpus, f.clusters), SessionError);

    s.decide(3, Verdict::accept);
    s.decide(1, Verdict::accept);
    s.decide(2, Verdict::reject);
    const Selection sel = export_selection(s, f.corpus, f.clusters);
    CHECK(sel.record_ids == std::vector<std::size_t>{0, 1, 2, 4, 5});
    CHECK(sel.summary.papers == 5);
    CHECK(sel.summary.citations == 67);
    CHECK(sel.summary.citations_per_paper == doctest::Approx(13.4));
    CHECK(sel.summary.year_min == 1981);
    CHECK(sel.summary.year_max == 1986);
    CHECK(sel.summary.h_index == 2);

    auto single = fresh(f);
    single.decide(2, Verdict::accept);
    const Selection one = export_selection(single, f.corpus, f.clusters);
    CHECK(one.summary.papers == 1);
    CHECK(one.summary.citations == 0);
    CHECK(one.summary.h_index == 0);

    const std::string text = format_merit(sel.summary);
    CHECK(text.find("67") != std::string::npos);
    CHECK(text.find("1981-1986") != std::string::npos);
}

TEST_CASE("selection holds every accepted record once and no rejected one") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 2 + rng() % 6;
        std::vector<std::size_t> sizes;
        for (std::size_t i = 0; i < k; ++i) sizes.push_back(1 + rng() % 4);
        const auto f = make_fixture(sizes, std::vector<std::uint32_t>(k, 3), linkage_from(k, {}));
        auto s = fresh(f);
        for (int id = 1; id <= int(k); ++id) s.decide(id, rng() % 2 ? Verdict::accept : Verdict::reject);
        if (!s.any_accepted()) s.decide(1, Verdict::accept);
        const auto sel = export_selection(s, f.corpus, f.clusters);
        std::vector<int> seen(f.corpus.size(), 0);
        for (auto r : sel.record_ids) ++seen[r];
        for (const auto& c : f.clusters.clusters)
            for (auto r : c.member_ids) CHECK(seen[r] == (s.decision(c.id) == Decision::accepted ? 1 : 0));
        CHECK(std::is_sorted(sel.record_ids.begin(), sel.record_ids.end()));
    }
}

TEST_CASE("h-index") {
    CHECK(h_index({10, 5, 3, 3, 1}) == 3);
    CHECK(h_index({}) == 0);
    CHECK(h_index({0, 0}) == 0);
    CHECK(h_index({100}) == 1);
    CHECK(h_index({4, 4, 4, 4}) == 4);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint32_t> c(rng() % 30);
        for (auto& x : c) x = std::uint32_t(rng() % 40);
        auto sorted = c;
        std::sort(sorted.rbegin(), sorted.rend());
        std::uint32_t h = 0;
        while (h < sorted.size() && sorted[h] >= h + 1) ++h;
        CHECK(h_index(c) == h);
    }
}

TEST_CASE("session file round trip and validation") {
    const auto f = make_fixture({1, 1, 1}, {3, 2, 1}, linkage_from(3, {{1, 2, 1.5}}));
    SessionFile file{fresh(f), {"/data/a.txt"}, nlohmann::json{{"documents", 8.0}}};
    file.session.decide(1, Verdict::accept);
    file.session.set_mode(PresentationMode::by_size);
    file.session.decide(3, Verdict::reject);

    const nlohmann::json doc = session_to_json(file);
    CHECK(doc["format"] == "homonym-session");
    CHECK(doc["version"] == 1);
    CHECK(doc["corpus_hash"] == "hash");
    const SessionFile back = session_from_json(doc, f.clusters);
    CHECK(back.session == file.session);
    CHECK(back.sources == file.sources);
    CHECK(back.settings == file.settings);
    CHECK(session_to_json(back) == doc);

    auto tampered = doc;
    tampered["decisions"][1]["decision"] = "accepted";
    CHECK_THROWS_AS(session_from_json(tampered, f.clusters), SessionError);
    auto wrong_version = doc;
    wrong_version["version"] = 2;
    CHECK_THROWS_AS(session_from_json(wrong_version, f.clusters), SessionError);
    auto wrong_format = doc;
    wrong_format["format"] = "other";
    CHECK_THROWS_AS(session_from_json(wrong_format, f.clusters), SessionError);
    auto wrong_count = doc;
    wrong_count["clusters"] = 4;
    CHECK_THROWS_AS(session_from_json(wrong_count, f.clusters), SessionError);

    const fs::path dir = fs::temp_directory_path() / "homonym_session_test";
    fs::create_directories(dir);
    const fs::path path = dir / "s.json";
    save_session(path, file);
    CHECK(load_session(path, "hash", f.clusters).session == file.session);
    CHECK_THROWS_AS(load_session(path, "other", f.clusters), SessionError);
    const SessionHeader h = read_session_header(path);
    CHECK(h.corpus_hash == "hash");
    CHECK(h.sources == file.sources);
    {
        std::ofstream(path) << "{ not json";
    }
    CHECK_THROWS(load_session(path, "hash", f.clusters));
    fs::remove_all(dir);
}

TEST_CASE("enum names") {
    for (auto d : {Decision::undecided, Decision::accepted, Decision::rejected}) CHECK(parse_decision(to_string(d)) == d);
    for (auto m : {PresentationMode::by_citations, PresentationMode::by_size, PresentationMode::by_distance_to_selected})
        CHECK(parse_mode(to_string(m)) == m);
    CHECK(!parse_mode("sideways").has_value());
    CHECK(utc_timestamp().size() == 20);
}

} // TEST_SUITE
