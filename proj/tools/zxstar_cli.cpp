#include <CLI11.hpp>

#include "zxstar/bench.hpp"
#include "zxstar/catalog.hpp"
#include "zxstar/circuits.hpp"
#include "zxstar/discovery.hpp"
#include "zxstar/serialize.hpp"
#include "zxstar/strategy.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace zxstar;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitFailure = 1;

std::string bitstring(std::size_t idx, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if ((idx >> (n - 1 - i)) & 1)
            s[i] = '1';
    return s;
}

void ascii_histogram(std::ostream& os, const std::vector<double>& probs,
                     double threshold, int n) {
    double mx = *std::max_element(probs.begin(), probs.end());
    if (mx <= 0 || probs.size() > 4096)
        return;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        int bars = static_cast<int>(probs[i] / mx * 40 + 0.5);
        os << bitstring(i, n) << ' ' << std::string(bars, '#')
           << (probs[i] > threshold ? "  *" : "") << "\n";
    }
}

int cmd_run(const std::string& circuit_arg, const std::string& strategy_arg,
            const std::string& diffusion_arg, const std::string& out_dir,
            const std::string& emit, bool histogram) {
    TopologyFixture fixture;
    try {
        fixture = load_fixture(circuit_arg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    Strategy strat =
        strategy_arg == "greedy" ? Strategy::Greedy : Strategy::Weighted;
    DiffusionMode diff =
        diffusion_arg == "none" ? DiffusionMode::None : DiffusionMode::Auto;
    RunResult res;
    try {
        res = run_pipeline(fixture.circuit, strat, diff);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    const int n = fixture.circuit.qubits;
    fs::create_directories(out_dir);
    bool want_statevector = emit.find("statevector") != std::string::npos;
    bool want_peaks = emit.find("peaks") != std::string::npos;
    bool want_terms = emit.find("terms") != std::string::npos;
    if (want_statevector) {
        std::ofstream os(fs::path(out_dir) / "statevector.csv");
        os << "index,bitstring,re,im,prob\n" << std::setprecision(12);
        for (std::size_t i = 0; i < res.statevector.size(); ++i) {
            auto z = res.statevector[i].to_complex();
            os << i << ',' << bitstring(i, n) << ',' << z.real() << ',' << z.imag()
               << ',' << res.probabilities[i] << '\n';
        }
    }
    if (want_peaks) {
        json j;
        j["threshold"] = res.threshold;
        j["peaks"] = json::array();
        for (std::size_t idx : res.peaks)
            j["peaks"].push_back({{"bitstring", bitstring(idx, n)},
                                  {"prob", res.probabilities[idx]}});
        std::ofstream os(fs::path(out_dir) / "peaks.json");
        os << j.dump(2) << "\n";
    }
    if (want_terms) {
        std::ofstream os(fs::path(out_dir) / "terms.txt");
        os << "terminal_terms " << res.terminal_terms << "\n";
        os << "stage1_ms " << res.timings.stage1_ms << "\n";
        os << "stage2_ms " << res.timings.stage2_ms << "\n";
        os << "sum_ms " << res.timings.sum_ms << "\n";
    }
    std::cout << "terms " << res.terminal_terms << ", peaks " << res.peaks.size()
              << ", threshold " << std::setprecision(12) << res.threshold << "\n";
    if (histogram)
        ascii_histogram(std::cout, res.probabilities, res.threshold, n);
    return 0;
}

int cmd_verify_catalog() {
    bool all_pass = true;
    auto reports = catalog_verify_all();
    for (const auto& r : reports) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "  branches "
                  << r.branch_count << "  scaling " << std::setprecision(4)
                  << r.scaling << "\n";
        all_pass &= r.pass;
    }
    std::cout << (all_pass ? "catalog ok" : "catalog BROKEN") << " ("
              << reports.size() << " rules)\n";
    return all_pass ? 0 : kExitFailure;
}

int cmd_gen(int qubits, int nots, int cnots, int mcts, std::uint64_t seed,
            const std::string& out) {
    Circuit c;
    try {
        c = random_mct_dense(qubits, nots, cnots, mcts, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    std::string text = circuit_to_json(c);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream os(out);
        os << text;
    }
    return 0;
}

int cmd_bench(const std::string& config_file, int jobs, const std::string& out_dir) {
    BenchConfig cfg;
    try {
        std::ifstream is(config_file);
        if (!is)
            throw std::runtime_error("cannot open " + config_file);
        std::stringstream ss;
        ss << is.rdbuf();
        cfg = bench_config_from_json(ss.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    BenchReport report = bench_run(cfg, jobs);
    fs::create_directories(out_dir);
    {
        std::ofstream os(fs::path(out_dir) / "bench.csv");
        write_bench_csv(os, report.rows);
    }
    {
        std::ofstream os(fs::path(out_dir) / "aggregate.json");
        write_aggregate_json(os, report, cfg);
    }
    std::cout << "bench: " << report.rows.size() << " rows, "
              << report.aggregates.size() << " cells -> " << out_dir << "\n";
    return 0;
}

int cmd_discover(const std::string& target, int terms, std::uint64_t seed,
                 const std::string& schedule_file, const std::string& out) {
    int legs = 0, phase_eighths = 0;
    if (std::sscanf(target.c_str(), "star%d:%d", &legs, &phase_eighths) != 2) {
        std::cerr << "error: target must look like star3:0 (legs, phase eighths)\n";
        return kExitUsage;
    }
    if (legs < 1 || legs > 3) {
        std::cerr << "error: discovery targets up to 3 legs\n";
        return kExitBadInput;
    }
    AnnealSchedule sched;
    sched.seed = seed;
    if (!schedule_file.empty()) {
        try {
            std::ifstream is(schedule_file);
            if (!is)
                throw std::runtime_error("cannot open " + schedule_file);
            json j;
            is >> j;
            sched.initial_temperature = j.value("initial_temperature", 1.0);
            sched.cooling_factor = j.value("cooling_factor", 0.999);
            sched.steps = j.value("steps", 2000);
            sched.moves_per_step = j.value("moves_per_step", 20);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitBadInput;
        }
    }
    StabilizerLibrary lib = enumerate_stabilizers(legs);
    auto hit = anneal(star_state_vector(legs, Phase(phase_eighths)), terms, sched, lib);
    if (!hit) {
        std::cout << "none\n";
        return 0;
    }
    std::ostringstream id;
    id << "discovered_star_state_" << legs << "_phase_" << phase_eighths << "_k"
       << terms;
    auto rule = certify(id.str(), legs, Phase(phase_eighths), hit->indices, lib);
    if (!rule) {
        std::cout << "none (certification failed)\n";
        return 0;
    }
    if (!out.empty()) {
        save_rule(*rule, out);
        std::cout << "certificate written to " << out << "\n";
    }
    std::cout << "found " << rule->branches.size() << "-term decomposition, residual "
              << hit->residual << ", accepted " << hit->accepted << " moves\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizer-decomposition engine for star-edge ZX diagrams"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "decompose a circuit and emit results");
    std::string circuit, strategy = "weighted", diffusion = "auto", out_dir = "out";
    std::string emit = "statevector,peaks,terms";
    bool histogram = false;
    run->add_option("--circuit", circuit, "fixture name or circuit json path")
        ->required();
    run->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"weighted", "greedy"}));
    run->add_option("--diffusion", diffusion)->check(CLI::IsMember({"auto", "none"}));
    run->add_option("--out", out_dir);
    run->add_option("--emit", emit, "comma list of statevector,peaks,terms");
    run->add_flag("--histogram", histogram, "print an ascii histogram");

    auto* verify = app.add_subcommand("verify-catalog", "oracle-check every rule");

    auto* gen = app.add_subcommand("gen", "generate a random MCT-dense circuit");
    int qubits = 5, nots = 0, cnots = 0, mcts = 1;
    std::uint64_t seed = 0;
    std::string gen_out;
    gen->add_option("--qubits", qubits)->required();
    gen->add_option("--nots", nots);
    gen->add_option("--cnots", cnots);
    gen->add_option("--mcts", mcts);
    gen->add_option("--seed", seed);
    gen->add_option("--out", gen_out);

    auto* bench = app.add_subcommand("bench", "random-circuit benchmark harness");
    std::string bench_config, bench_out = "bench_out";
    int jobs = 1;
    bench->add_option("--config", bench_config)->required();
    bench->add_option("--jobs", jobs);
    bench->add_option("--out", bench_out);

    auto* discover = app.add_subcommand("discover", "simulated-annealing search");
    std::string target, schedule_file, discover_out;
    int terms = 2;
    std::uint64_t dseed = 0;
    discover->add_option("--target", target, "e.g. star3:0")->required();
    discover->add_option("--terms", terms)->required();
    discover->add_option("--seed", dseed);
    discover->add_option("--schedule", schedule_file);
    discover->add_option("--out", discover_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (run->parsed())
            return cmd_run(circuit, strategy, diffusion, out_dir, emit, histogram);
        if (verify->parsed())
            return cmd_verify_catalog();
        if (gen->parsed())
            return cmd_gen(qubits, nots, cnots, mcts, seed, gen_out);
        if (bench->parsed())
            return cmd_bench(bench_config, jobs, bench_out);
        if (discover->parsed())
            return cmd_discover(target, terms, dseed, schedule_file, discover_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
