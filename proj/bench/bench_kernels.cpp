// Times the OpenMP distance kernels against the serial reference on
// synthetic corpora and checks that both produce identical matrices.
//
//   homonym_bench [authors...]    (default: 5 10 20 40)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <omp.h>

#include "homonym/distance.hpp"
#include "homonym/synth.hpp"

using namespace homonym;

namespace {

template <class F>
double best_seconds(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::size_t> sizes{5, 10, 20, 40};
    if (argc > 1) {
        sizes.clear();
        for (int i = 1; i < argc; ++i) sizes.push_back(std::strtoul(argv[i], nullptr, 10));
    }
    const FieldModel model;
    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%8s %8s %12s %12s %12s %12s %6s\n", "authors", "records", "build_ser", "build_omp", "close_ser",
                "close_omp", "equal");
    bool all_equal = true;
    for (std::size_t authors : sizes) {
        GeneratorParams params;
        params.n_authors = authors;
        const Corpus corpus = generate(params).corpus;
        const int reps = corpus.size() > 400 ? 1 : 3;

        DistanceMatrix ser, par;
        const double b_ser = best_seconds(reps, [&] { ser = serial::build_matrix(corpus, model); });
        const double b_par = best_seconds(reps, [&] { par = build_matrix(corpus, model); });
        DistanceMatrix ser_closed, par_closed;
        const double c_ser = best_seconds(reps, [&] { ser_closed = serial::close_distances(ser); });
        const double c_par = best_seconds(reps, [&] { par_closed = close_distances(par); });

        const bool equal = ser.raw == par.raw && ser.clamped == par.clamped && ser_closed.closed == par_closed.closed;
        all_equal = all_equal && equal;
        std::printf("%8zu %8zu %12.6f %12.6f %12.6f %12.6f %6s\n", authors, corpus.size(), b_ser, b_par, c_ser, c_par,
                    equal ? "yes" : "NO");
    }
    return all_equal ? 0 : 1;
}
