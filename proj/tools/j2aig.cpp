// Command-line driver: read, olp, prove, emit-aiger, simulate, debug.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "j2aig/aiger.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/oneloop.hpp"
#include "j2aig/parser.hpp"
#include "j2aig/pipeline.hpp"
#include "j2aig/preprocess.hpp"
#include "j2aig/printer.hpp"
#include "j2aig/sweep.hpp"

using namespace j2aig;

namespace {

constexpr int kExitProved = 0;
constexpr int kExitError = 1;
constexpr int kExitViolated = 2;
constexpr int kExitUnknown = 3;

struct Options {
    std::string file;
    std::string out;
    std::string vcd;
    std::string tsv;
    int theta = 0;
    int steps = 64;
    bool timings = false;
    bool swept = false;
    ProveConfig cfg;
};

void add_config_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--width", o.cfg.width, "Bit width of int variables")->check(CLI::Range(1, 64));
    cmd->add_option("--array-bound", o.cfg.array_bound, "Extent of every global array")->check(CLI::PositiveNumber);
    cmd->add_option("--recursion-depth", o.cfg.recursion_depth, "Frames per recursive function")->check(CLI::PositiveNumber);
    cmd->add_flag("--check-overflow", o.cfg.check_overflow, "Report arithmetic overflow");
    cmd->add_flag("--check-bounds", o.cfg.check_bounds, "Report out-of-bounds array accesses");
    cmd->add_flag("--unroll-quantifiers", o.cfg.unroll_quantifiers, "Unroll constant-range quantifiers");
    cmd->add_flag("--abstract-nonlinear", o.cfg.abstract_nonlinear, "Replace *, / and % by free inputs");
}

ProveConfig config_of(const Options& o) {
    ProveConfig cfg = o.cfg;
    if (o.theta > 0) cfg.theta = o.theta;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LabeledProgram jcore(const Options& o) {
    Program p = parse_file(o.file);
    apply_array_bound(p, o.cfg.array_bound);
    PreprocessConfig pc;
    pc.max_depth = o.cfg.recursion_depth;
    pc.unroll_quantifiers = o.cfg.unroll_quantifiers;
    return preprocess(p, pc);
}

int cmd_read(const Options& o) {
    std::cout << label_table(jcore(o));
    return 0;
}

int cmd_olp(const Options& o) {
    std::cout << print_olp(generate_one_loop_program(jcore(o)));
    return 0;
}

int cmd_prove(const Options& o) {
    ProveResult r = prove(parse_file(o.file), config_of(o));
    std::cout << r.verdict_line() << '\n';
    std::cout << "registers=" << r.registers << " swept=" << r.registers_swept;
    if (r.theta > 0) std::cout << " theta=" << r.theta;
    std::cout << '\n';
    if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
    if (r.status == Status::Violated) {
        std::cout << "counterexample at step " << r.depth << ":";
        for (const auto& [name, vals] : r.inputs) {
            std::cout << ' ' << name << '=';
            if (vals.size() == 1) {
                std::cout << vals[0];
            } else {
                std::cout << '[';
                for (size_t k = 0; k < vals.size(); ++k) std::cout << (k ? "," : "") << vals[k];
                std::cout << ']';
            }
        }
        std::cout << '\n';
        r.trace.program = "program";
        if (!o.vcd.empty()) write_vcd_file(r.trace, o.vcd);
        if (!o.tsv.empty()) write_tsv_file(r.trace, o.tsv);
    } else if (!o.tsv.empty()) {
        std::ofstream out(o.tsv);
        if (!out) throw IoError("cannot write " + o.tsv);
        out << kNoCounterexample << '\n';
    }
    if (o.timings)
        for (const auto& [stage, secs] : r.timings) std::cerr << "time " << stage << ' ' << secs << "s\n";
    switch (r.status) {
    case Status::Proved: return kExitProved;
    case Status::Violated: return kExitViolated;
    default: return kExitUnknown;
    }
}

int cmd_emit_aiger(const Options& o) {
    Circuit c = compile(parse_file(o.file), config_of(o));
    Aig g = c.aig;
    if (o.swept) g = sweep_stuck_registers(g).aig;
    write_aiger_file(g, o.out);
    std::cout << "registers=" << g.latches().size() << " gates=" << g.num_ands() << " levels=" << g.levels() << '\n';
    return 0;
}

int cmd_simulate(const Options& o) {
    Circuit c = compile(parse_file(o.file), config_of(o));
    uint64_t seed = 1;
    if (const char* s = std::getenv("J2AIG_SEED")) seed = std::strtoull(s, nullptr, 10);
    std::mt19937_64 rng(seed);
    InputFrames frames(static_cast<size_t>(o.steps), std::vector<bool>(c.aig.inputs().size()));
    for (auto& row : frames)
        for (size_t k = 0; k < row.size(); ++k) row[k] = (rng() & 1U) != 0;
    CexTrace t = back_translate(c, simulate(c.aig, frames, o.steps));
    write_tsv(t, std::cout);
    if (!o.vcd.empty()) write_vcd_file(t, o.vcd);
    return 0;
}

int cmd_debug(const Options& o) {
    const std::string text = slurp(o.file);
    const bool vcd = o.file.size() >= 4 && o.file.compare(o.file.size() - 4, 4, ".vcd") == 0;
    if (vcd) {
        VcdData d = read_vcd(text);
        if (d.rows.empty()) throw FormatError(0, "empty trace file");
        std::cout << "step";
        for (const auto& n : d.names) std::cout << '\t' << n;
        std::cout << '\n';
        for (size_t s = 0; s < d.rows.size(); ++s) {
            std::cout << s;
            for (size_t k = 0; k < d.names.size(); ++k) {
                uint64_t u = d.rows[s][k];
                int w = d.widths[k];
                // Integer signals are two's complement.
                int64_t v = (w > 1 && w < 64 && ((u >> (w - 1)) & 1U)) ? static_cast<int64_t>(u) - (int64_t{1} << w) : static_cast<int64_t>(u);
                std::cout << '\t' << v;
            }
            std::cout << '\n';
        }
        return 0;
    }
    TsvData d = read_tsv(text);
    if (d.columns.empty()) {
        std::cout << "no counterexample\n";
        return 0;
    }
    for (size_t k = 0; k < d.columns.size(); ++k) std::cout << (k ? "\t" : "") << d.columns[k];
    std::cout << '\n';
    for (const auto& row : d.rows) {
        for (size_t k = 0; k < row.size(); ++k) std::cout << (k ? "\t" : "") << row[k];
        std::cout << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded verification of J programs through sequential circuits"};
    app.require_subcommand(1);
    Options o;

    auto* read = app.add_subcommand("read", "Parse and label a program; print the label table");
    read->add_option("file", o.file)->required();
    add_config_flags(read, o);

    auto* olp = app.add_subcommand("olp", "Print the one-loop program");
    olp->add_option("file", o.file)->required();
    add_config_flags(olp, o);

    auto* prove_cmd = app.add_subcommand("prove", "Verify a program against its specification");
    prove_cmd->add_option("file", o.file)->required();
    add_config_flags(prove_cmd, o);
    prove_cmd->add_option("--theta", o.theta, "Termination bound in steps")->check(CLI::PositiveNumber);
    prove_cmd->add_option("--frames", o.cfg.max_frames, "Frame budget for bounded model checking")->check(CLI::PositiveNumber);
    prove_cmd->add_option("--induction-k", o.cfg.induction_k, "Induction depth")->check(CLI::PositiveNumber);
    prove_cmd->add_option("--emit-vcd", o.vcd, "Write the counterexample as VCD");
    prove_cmd->add_option("--emit-tsv", o.tsv, "Write the counterexample as TSV");
    prove_cmd->add_flag("--timings", o.timings, "Print stage timings to stderr");

    auto* emit = app.add_subcommand("emit-aiger", "Write the circuit as ASCII AIGER");
    emit->add_option("file", o.file)->required();
    emit->add_option("-o,--output", o.out, "Output .aag path")->required();
    emit->add_flag("--swept", o.swept, "Sweep stuck registers first");
    add_config_flags(emit, o);

    auto* sim = app.add_subcommand("simulate", "Simulate the circuit with random inputs (seed from J2AIG_SEED)");
    sim->add_option("file", o.file)->required();
    sim->add_option("--steps", o.steps, "Number of steps")->check(CLI::PositiveNumber);
    sim->add_option("--emit-vcd", o.vcd, "Also write the trace as VCD");
    add_config_flags(sim, o);

    auto* debug = app.add_subcommand("debug", "Print a counterexample trace file (TSV or VCD)");
    debug->add_option("file", o.file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }

    try {
        if (*read) return cmd_read(o);
        if (*olp) return cmd_olp(o);
        if (*prove_cmd) return cmd_prove(o);
        if (*emit) return cmd_emit_aiger(o);
        if (*sim) return cmd_simulate(o);
        if (*debug) return cmd_debug(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
