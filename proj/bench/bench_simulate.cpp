// Packed simulation throughput: serial reference against the OpenMP kernel.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "CLI11.hpp"
#include "j2aig/parser.hpp"
#include "j2aig/pipeline.hpp"
#include "j2aig/simulate.hpp"

using namespace j2aig;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Packed AIG simulation benchmark"};
    std::string program = std::string(J2AIG_SOURCE_DIR) + "/programs/array_search_fixed.j";
    int width = 8;
    int array_bound = 7;
    int steps = 64;
    std::vector<size_t> words{16, 256, 2048};
    int reps = 3;
    app.add_option("program", program, "J program to compile");
    app.add_option("--width", width, "Bit width")->check(CLI::Range(1, 64));
    app.add_option("--array-bound", array_bound, "Extent of every global array")->check(CLI::PositiveNumber);
    app.add_option("--steps", steps, "Simulated steps")->check(CLI::PositiveNumber);
    app.add_option("--words", words, "Stimulus sizes in 64-lane words");
    app.add_option("--reps", reps, "Repetitions, best time is reported")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    ProveConfig cfg;
    cfg.width = width;
    cfg.array_bound = array_bound;
    cfg.check_bounds = true;
    Circuit c = compile(parse_file(program), cfg);
    const Aig& g = c.aig;
    std::printf("circuit: %zu inputs, %zu registers, %zu gates; %d steps; %d threads\n", g.inputs().size(), g.latches().size(),
                g.num_ands(), steps, omp_get_max_threads());
    std::printf("%8s %12s %12s %8s %14s %s\n", "words", "serial_s", "openmp_s", "speedup", "Mgate-evals/s", "match");

    std::mt19937_64 rng(1);
    int mismatches = 0;
    for (size_t w : words) {
        PackedStimulus stim(steps, g.inputs().size(), w);
        for (auto& x : stim.bits) x = rng();
        PackedOutputs a;
        PackedOutputs b;
        double ts = best_of(reps, [&] { a = simulate_packed_serial(g, stim); });
        double tp = best_of(reps, [&] { b = simulate_packed(g, stim); });
        const bool match = a == b;
        mismatches += !match;
        const double evals = static_cast<double>(g.num_ands()) * steps * static_cast<double>(w) * 64.0;
        std::printf("%8zu %12.4f %12.4f %8.2f %14.1f %s\n", w, ts, tp, ts / tp, evals / tp / 1e6, match ? "yes" : "NO");
    }
    return mismatches ? 1 : 0;
}
