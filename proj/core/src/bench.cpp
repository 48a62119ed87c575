#include "zxstar/bench.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <iomanip>
#include <map>
#include <ostream>
#include <thread>

namespace zxstar {

using nlohmann::json;

std::string relevance_class(int finished) {
    if (finished >= 40)
        return "high";
    if (finished >= 20)
        return "medium";
    if (finished >= 1)
        return "low";
    return "none";
}

namespace {

const char* strategy_name(Strategy s) {
    return s == Strategy::Weighted ? "weighted" : "greedy";
}

BenchRow run_attempt(int qubits, int nots, int cnots, int mcts, std::uint64_t seed,
                     Strategy strategy, double timeout_s) {
    BenchRow row{qubits, nots, cnots, mcts, seed, strategy};
    Circuit c = random_mct_dense(qubits, nots, cnots, mcts, seed);
    PipelineOptions opts;
    opts.plug_outputs = true; // scalar diagrams, as the protocol prescribes
    opts.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(timeout_s));
    auto t0 = std::chrono::steady_clock::now();
    try {
        RunResult r = run_pipeline(c, strategy, DiffusionMode::None, opts);
        row.terms = r.terminal_terms;
    } catch (const PipelineTimeout&) {
        row.timed_out = true;
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return row;
}

} // namespace

BenchReport bench_run(const BenchConfig& cfg, int jobs) {
    struct Attempt {
        int qubits, nots, cnots, mcts, sample;
        Strategy strategy;
    };
    std::vector<Attempt> attempts;
    for (int q : cfg.qubits)
        for (int nn : cfg.nots)
            for (int nc : cfg.cnots)
                for (int nm : cfg.mcts)
                    for (int s = 0; s < cfg.samples; ++s)
                        for (Strategy st : cfg.strategies)
                            attempts.push_back({q, nn, nc, nm, s, st});

    std::vector<BenchRow> rows(attempts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= attempts.size())
                return;
            const Attempt& a = attempts[i];
            std::uint64_t seed =
                cfg.seed_base +
                static_cast<std::uint64_t>(a.sample) * 0x9e3779b9ULL +
                a.qubits * 1315423911ULL + a.nots * 2654435761ULL +
                a.cnots * 334214467ULL + a.mcts * 2246822519ULL;
            rows[i] = run_attempt(a.qubits, a.nots, a.cnots, a.mcts, seed,
                                  a.strategy, cfg.timeout_s);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    BenchReport report;
    report.rows = rows;
    // aggregate per cell
    std::map<std::tuple<int, int, int, int>,
             std::map<std::uint64_t, std::map<std::string, BenchRow>>>
        cells;
    for (const BenchRow& r : rows)
        cells[{r.qubits, r.nots, r.cnots, r.mcts}][r.seed][strategy_name(r.strategy)] =
            r;
    for (const auto& [key, seeds] : cells) {
        CellAggregate agg;
        std::tie(agg.qubits, agg.nots, agg.cnots, agg.mcts) = key;
        double ratio_sum = 0;
        int improved = 0;
        for (const auto& [seed, by_strat] : seeds) {
            auto wi = by_strat.find("weighted");
            auto gi = by_strat.find("greedy");
            if (wi == by_strat.end() || gi == by_strat.end())
                continue;
            if (wi->second.timed_out || gi->second.timed_out)
                continue;
            ++agg.finished;
            ratio_sum += static_cast<double>(gi->second.terms) /
                         static_cast<double>(wi->second.terms);
            if (wi->second.terms < gi->second.terms)
                ++improved;
        }
        agg.mean_ratio = agg.finished ? ratio_sum / agg.finished : 0;
        agg.improvement_frac =
            agg.finished ? static_cast<double>(improved) / agg.finished : 0;
        agg.relevance = relevance_class(agg.finished);
        report.aggregates.push_back(agg);
    }
    return report;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "qubits,nots,cnots,mcts,seed,strategy,timeout,terms,wall_ms\n";
    for (const BenchRow& r : rows) {
        os << r.qubits << ',' << r.nots << ',' << r.cnots << ',' << r.mcts << ','
           << r.seed << ',' << strategy_name(r.strategy) << ','
           << (r.timed_out ? 1 : 0) << ',' << r.terms << ',' << std::setprecision(12)
           << r.wall_ms << '\n';
    }
}

void write_aggregate_json(std::ostream& os, const BenchReport& report,
                          const BenchConfig& cfg) {
    json j;
    j["samples"] = cfg.samples;
    j["timeout_s"] = cfg.timeout_s;
    j["seed_base"] = cfg.seed_base;
    j["cells"] = json::array();
    for (const CellAggregate& a : report.aggregates) {
        j["cells"].push_back({{"qubits", a.qubits},
                              {"nots", a.nots},
                              {"cnots", a.cnots},
                              {"mcts", a.mcts},
                              {"finished", a.finished},
                              {"mean_ratio", a.mean_ratio},
                              {"improvement_frac", a.improvement_frac},
                              {"relevance", a.relevance}});
    }
    os << j.dump(2) << "\n";
}

BenchConfig bench_config_from_json(const std::string& text) {
    json j = json::parse(text);
    BenchConfig cfg;
    cfg.qubits = j.at("qubits").get<std::vector<int>>();
    cfg.nots = j.at("nots").get<std::vector<int>>();
    cfg.cnots = j.at("cnots").get<std::vector<int>>();
    cfg.mcts = j.at("mcts").get<std::vector<int>>();
    cfg.samples = j.value("samples", 50);
    cfg.timeout_s = j.value("timeout_s", 180.0);
    cfg.seed_base = j.value("seed_base", 0ULL);
    if (j.contains("strategies")) {
        cfg.strategies.clear();
        for (const auto& s : j.at("strategies"))
            cfg.strategies.push_back(s.get<std::string>() == "greedy"
                                         ? Strategy::Greedy
                                         : Strategy::Weighted);
    }
    return cfg;
}

} // namespace zxstar
