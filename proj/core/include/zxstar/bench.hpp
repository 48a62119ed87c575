#pragma once

#include "zxstar/strategy.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zxstar {

struct BenchConfig {
    std::vector<int> qubits;
    std::vector<int> nots;
    std::vector<int> cnots;
    std::vector<int> mcts;
    int samples = 50;
    double timeout_s = 180;
    std::uint64_t seed_base = 0;
    std::vector<Strategy> strategies = {Strategy::Weighted, Strategy::Greedy};
};

struct BenchRow {
    int qubits, nots, cnots, mcts;
    std::uint64_t seed;
    Strategy strategy;
    bool timed_out = false;
    std::size_t terms = 0;
    double wall_ms = 0;
};

struct CellAggregate {
    int qubits, nots, cnots, mcts;
    int finished = 0;        // seeds where every strategy finished
    double mean_ratio = 0;   // greedy terms / weighted terms over finished seeds
    double improvement_frac = 0;
    std::string relevance;   // high / medium / low / none
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<CellAggregate> aggregates;
};

/// Runs every (cell, seed, strategy) attempt, fanning out over `jobs`
/// workers; each attempt has its own deadline and a timeout is recorded as
/// data. The row set is independent of the worker count.
BenchReport bench_run(const BenchConfig& cfg, int jobs = 1);

std::string relevance_class(int finished);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
void write_aggregate_json(std::ostream& os, const BenchReport& report,
                          const BenchConfig& cfg);
BenchConfig bench_config_from_json(const std::string& text);

} // namespace zxstar
