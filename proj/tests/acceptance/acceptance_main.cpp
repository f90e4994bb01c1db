// Acceptance checks: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "homonym/coincidence.hpp"
#include "homonym/dialog.hpp"
#include "homonym/ingest.hpp"
#include "homonym/pipeline.hpp"
#include "homonym/session.hpp"
#include "homonym/synth.hpp"
#include "oracles.hpp"

using namespace homonym;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome normalization() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    std::size_t cases = 0;
    for (std::uint64_t n = 8; n <= 40; ++n)
        for (std::uint64_t a = 0; a <= 8; ++a)
            for (std::uint64_t b = 0; b <= 8; ++b) {
                const std::uint64_t lo = a + b > n ? a + b - n : 0;
                double sum = 0;
                for (std::uint64_t k = lo; k <= std::min(a, b); ++k) sum += std::pow(10.0, log_p_exact(k, a, b, n));
                worst = std::max(worst, std::abs(sum - 1.0));
                ++cases;
            }
    const double dt = seconds_since(t0);
    return {worst <= 1e-9 && dt < 5.0, fmt("%zu grid cases, max |sum-1| = %.3g, %.3f s", cases, worst, dt)};
}

Outcome monte_carlo() {
    std::mt19937_64 rng(20070424);
    const int draws = 100000;
    int ok = 0;
    double worst_z = 0;
    std::string detail;
    for (int t = 0; t < 20; ++t) {
        const unsigned n = 1 + unsigned(rng() % 30);
        const unsigned a = unsigned(rng() % (n + 1));
        const unsigned b = unsigned(rng() % (n + 1));
        const unsigned k = unsigned(rng() % (std::min(a, b) + 1));
        const double p = std::pow(10.0, log_p_tail(k, a, b, n));
        int hits = 0;
        for (int i = 0; i < draws; ++i) hits += oracle::sample_overlap(rng, a, b, n) >= k;
        const double est = double(hits) / draws;
        const double se = std::sqrt(p * (1 - p) / draws);
        const double diff = std::abs(est - p);
        const bool pass = se > 0 ? diff <= 3 * se : diff <= 1e-12;
        if (se > 0) worst_z = std::max(worst_z, diff / se);
        ok += pass;
        if (!pass) detail += fmt(" (k=%u,a=%u,b=%u,N=%u: %.5f vs %.5f)", k, a, b, n, est, p);
    }
    return {ok == 20, fmt("%d/20 triples within 3 SE, worst %.2f SE", ok, worst_z) + detail};
}

Outcome distance_extremes() {
    const FieldModel model;
    RecordText x, y;
    x.authors = {"Soler, JM", "Garcia, N"};
    x.title = "Liquid gold clusters";
    x.source = "Phys. Rev. B";
    x.year = "1988";
    y.authors = {"Soler, JM", "Puig, R"};
    y.title = "Copper kinetics";
    y.source = "Polyhedron";
    y.year = "1985";
    const double none = pair_distance(index_record(x), index_record(y), model, "soler_jm");
    y.source = x.source;
    const double journal = pair_distance(index_record(x), index_record(y), model, "soler_jm");
    return {none == 8.0 && journal == 6.0, fmt("no coincidence %.17g, journal only %.17g", none, journal)};
}

Outcome closure() {
    std::mt19937_64 rng(8);
    double worst = 0, worst_triangle = 0;
    for (int t = 0; t < 100; ++t) {
        const SquareMatrix w = oracle::random_clamped(rng, 8);
        const SquareMatrix want = oracle::enumerate_paths(w, 7);
        const SquareMatrix got = close_distances(oracle::as_distance_matrix(w)).closed;
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) {
                worst = std::max(worst, std::abs(got(i, j) - want(i, j)));
                for (std::size_t k = 0; k < 8; ++k)
                    worst_triangle = std::max(worst_triangle, got(i, j) - got(i, k) - got(k, j));
            }
    }
    return {worst <= 1e-12 && worst_triangle <= 1e-12,
            fmt("100 matrices, max deviation %.3g, max triangle excess %.3g", worst, worst_triangle)};
}

bool transitive(const Analysis& a, double& worst_in, double& best_out) {
    std::vector<int> owner(a.corpus.size(), 0);
    for (const auto& c : a.clusters.clusters)
        for (auto r : c.member_ids) owner[r] = c.id;
    bool ok = true;
    for (std::size_t i = 0; i < a.corpus.size(); ++i)
        for (std::size_t j = 0; j < a.corpus.size(); ++j) {
            if (i == j) continue;
            const double d = a.matrix.closed(i, j);
            if (owner[i] == owner[j]) {
                worst_in = std::max(worst_in, d);
                ok = ok && d <= a.settings.tolerance;
            } else {
                best_out = std::min(best_out, d);
                ok = ok && d > a.settings.tolerance;
            }
        }
    return ok;
}

Outcome cluster_transitivity() {
    const Settings s;
    std::vector<Analysis> corpora;
    corpora.push_back(analyze(load_corpus({oracle::data_path("soler.txt")}, s), s));
    for (std::uint64_t seed : {20070424ULL, 1ULL, 2ULL, 3ULL}) {
        GeneratorParams p;
        p.seed = seed;
        corpora.push_back(analyze(generate(p).corpus, s));
    }
    GeneratorParams big;
    big.n_authors = 12;
    big.papers_min = 3;
    big.papers_max = 40;
    corpora.push_back(analyze(generate(big).corpus, s));

    double worst_in = 0, best_out = 1e300;
    bool ok = true;
    for (const auto& a : corpora) ok = transitive(a, worst_in, best_out) && ok;
    return {ok, fmt("%zu corpora, max intra-cluster %.3g, min inter-cluster %.3g", corpora.size(), worst_in, best_out)};
}

Outcome synthetic_quality() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto synth = generate(GeneratorParams{});
    const Analysis a = analyze(synth.corpus, Settings{});
    const QualityMetrics m = evaluate(a.clusters.clusters, synth.truth);
    const double dt = seconds_since(t0);
    return {m.false_positive_pairs == 0 && m.purity == 1.0 && dt < 10.0,
            fmt("records %zu, authors %zu, clusters %zu, purity %.3f, false positives %llu, false negatives %llu, "
                "split rate %.3f, %.3f s",
                m.records, m.authors, m.clusters, m.purity, (unsigned long long)m.false_positive_pairs,
                (unsigned long long)m.false_negative_pairs, m.split_rate, dt)};
}

Outcome gap_property() {
    const auto synth = generate(GeneratorParams{});
    const Analysis a = analyze(synth.corpus, Settings{});
    std::size_t diff = 0, diff_far = 0, same = 0, same_zero = 0;
    for (std::size_t i = 0; i < a.corpus.size(); ++i)
        for (std::size_t j = i + 1; j < a.corpus.size(); ++j) {
            if (synth.truth[i] != synth.truth[j]) {
                ++diff;
                diff_far += a.matrix.raw(i, j) > 2.0;
            } else {
                ++same;
                same_zero += a.matrix.closed(i, j) <= a.settings.tolerance;
            }
        }
    const double frac = double(diff_far) / double(diff);
    return {frac >= 0.99, fmt("%zu/%zu different-author pairs with raw distance > 2 (%.4f); "
                              "same-author pairs at closed distance 0: %zu/%zu",
                              diff_far, diff, frac, same_zero, same)};
}

Outcome golden_dialog() {
    const Settings s;
    const Analysis a = analyze(load_corpus({oracle::data_path("soler.txt")}, s), s);
    SessionFile f{SelectionSession(a.hash, a.clusters.size()), {}, {}};
    std::istringstream in(oracle::read_file(oracle::data_path("soler_answers.txt")));
    std::ostringstream out;
    run_filter_dialog(a, f, in, out);
    const std::string want = oracle::read_file(oracle::data_path("soler_transcript.txt"));
    const std::string got = out.str();
    std::size_t at = 0;
    while (at < std::min(got.size(), want.size()) && got[at] == want[at]) ++at;
    const bool ok = got == want && got.find("Distance to selected groups is ******") != std::string::npos &&
                    got.rfind("Found     8 papers in    5 groups\n", 0) == 0;
    return {ok, ok ? fmt("%zu bytes identical", got.size()) : fmt("first difference at byte %zu", at)};
}

Outcome determinism() {
    const Settings s;
    const std::string fixture = oracle::read_file(oracle::data_path("soler.txt"));
    const Analysis a = analyze(parse_export(fixture, ExportFormat::tagged), s);
    SelectionSession live(a.hash, a.clusters.size());
    live.decide(1, Verdict::accept);
    live.set_mode(PresentationMode::by_distance_to_selected);
    live.decide(2, Verdict::reject);
    live.undo(2);
    live.decide(4, Verdict::accept);
    live.set_cutoff(7.0);
    live.auto_reject_beyond_cutoff(a.clusters);
    live.accept_all_remaining();
    const std::string live_export = write_export(a.corpus, export_selection(live, a.corpus, a.clusters).record_ids);

    const SessionFile reloaded = session_from_json(session_to_json({live, {}, {}}), a.clusters);
    const std::string replay_export =
        write_export(a.corpus, export_selection(reloaded.session, a.corpus, a.clusters).record_ids);

    const bool tagged_trip = write_export(a.corpus) == fixture;
    const auto synth = generate(GeneratorParams{});
    const bool tsv_trip = write_export(parse_export(synth.tsv, ExportFormat::tsv)) == synth.tsv;
    const bool replay_same = reloaded.session == live && replay_export == live_export;
    return {replay_same && tagged_trip && tsv_trip,
            fmt("replayed export %s (%zu bytes), tagged round trip %s, TSV round trip %s",
                replay_same ? "identical" : "DIFFERENT", live_export.size(), tagged_trip ? "exact" : "DIFFERENT",
                tsv_trip ? "exact" : "DIFFERENT")};
}

} // namespace

int main() {
    report("probability normalization", normalization);
    report("Monte Carlo tail oracle", monte_carlo);
    report("zero and journal-only coincidence distances", distance_extremes);
    report("closure equals enumerated shortest paths", closure);
    report("cluster transitivity", cluster_transitivity);
    report("synthetic quality", synthetic_quality);
    report("gap property", gap_property);
    report("golden dialog transcript", golden_dialog);
    report("determinism", determinism);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
