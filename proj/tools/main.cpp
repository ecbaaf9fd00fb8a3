// grmq: batch range-minimum-query workbench.
//
// Subcommands: gen, build, query, verify, sweep, bench.
// Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 I/O error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grmq/io.hpp"
#include "grmq/oracle.hpp"
#include "grmq/query_engine.hpp"
#include "grmq/workload.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace grmq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

// Config flags shared by build/query/verify/sweep/bench. Unset flags fall back
// to the size-dependent defaults (or a loaded sidecar).
struct ConfigFlags {
    std::optional<std::uint64_t> chunk_size;
    std::optional<std::uint64_t> group_size;
    std::optional<std::uint64_t> cutoff;
    std::optional<std::string> strategy;
    bool track_index = true;

    void attach(CLI::App* cmd) {
        cmd->add_option("--chunk-size", chunk_size, "Chunk size c (power of two >= 2)");
        cmd->add_option("--group-size", group_size, "Lane group size g (power of two <= 32)");
        cmd->add_option("--cutoff", cutoff, "Topmost-level cutoff t in elements");
        cmd->add_option("--strategy", strategy, "Scan strategy: vector | lane");
        cmd->add_flag("--track-index,!--no-track-index", track_index,
                      "Store argmin positions (default on)");
    }

    HierarchyConfig resolve(std::uint64_t n, std::optional<HierarchyConfig> base = {}) const {
        HierarchyConfig cfg = base.value_or(HierarchyConfig::defaults_for(n, track_index));
        if (strategy) {
            if (*strategy == "vector") cfg.strategy = ScanStrategy::VectorBlock;
            else if (*strategy == "lane") cfg.strategy = ScanStrategy::LaneGroup;
            else throw ConfigError("unknown strategy: " + *strategy);
            if (!base && !chunk_size) {
                // strategy switch without explicit c keeps that strategy's tuned default
                cfg.chunk_size = cfg.strategy == ScanStrategy::VectorBlock ? 8 : 32;
                cfg.group_size = cfg.strategy == ScanStrategy::VectorBlock ? 4 : 16;
            }
            cfg.cutoff = HierarchyConfig::minimal_cutoff(cfg.strategy, cfg.chunk_size);
        }
        if (chunk_size) {
            cfg.chunk_size = static_cast<std::uint32_t>(*chunk_size);
            if (!cutoff)
                cfg.cutoff = HierarchyConfig::minimal_cutoff(cfg.strategy, cfg.chunk_size);
        }
        if (group_size) cfg.group_size = static_cast<std::uint32_t>(*group_size);
        if (cutoff) cfg.cutoff = static_cast<std::uint32_t>(*cutoff);
        cfg.track_index = track_index;
        cfg.validate();
        return cfg;
    }
};

std::string strategy_name(ScanStrategy s) {
    return s == ScanStrategy::VectorBlock ? "vector" : "lane";
}

std::string scheduling_name(Scheduling s) {
    return s == Scheduling::MultiLoad ? "multiload" : "wlq";
}

Scheduling scheduling_from_name(const std::string& name) {
    if (name == "multiload") return Scheduling::MultiLoad;
    if (name == "wlq") return Scheduling::WarpLocalQueue;
    throw ConfigError("unknown scheduling: " + name);
}

json config_json(const HierarchyConfig& cfg) {
    return {{"strategy", strategy_name(cfg.strategy)},
            {"chunk_size", cfg.chunk_size},
            {"group_size", cfg.group_size},
            {"cutoff", cfg.cutoff},
            {"track_index", cfg.track_index}};
}

HierarchyConfig config_from_json(const json& j) {
    HierarchyConfig cfg;
    cfg.strategy = j.at("strategy").get<std::string>() == "vector" ? ScanStrategy::VectorBlock
                                                                   : ScanStrategy::LaneGroup;
    cfg.chunk_size = j.at("chunk_size").get<std::uint32_t>();
    cfg.group_size = j.at("group_size").get<std::uint32_t>();
    cfg.cutoff = j.at("cutoff").get<std::uint32_t>();
    cfg.track_index = j.at("track_index").get<bool>();
    return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::optional<json> try_read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json j;
    in >> j;
    return j;
}

std::uint64_t result_checksum(std::span<const ResultRecord> results) {
    std::uint64_t sum = 0;
    for (const auto& r : results) {
        sum = sum * 1000003 + std::bit_cast<std::uint32_t>(r.value);
        sum = sum * 1000003 + r.index;
    }
    return sum;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
    std::uint64_t n = 0, m = 0, seed = 0;
    std::string range_class = "mixed";
    std::string out = "workload";
};

int cmd_gen(const GenArgs& args) {
    if (args.n < 1 || args.m < 1) throw ConfigError("--n and --m must be >= 1");
    WorkloadSpec spec{args.n, args.m, range_class_from_string(args.range_class), args.seed};

    auto values = gen_array(spec.n, spec.seed);
    auto batch = gen_queries(spec);

    const fs::path array_path = args.out + ".array";
    const fs::path query_path = args.out + ".queries";
    io::write_array_file(array_path, values);
    io::write_query_file(query_path, batch, spec.n);

    std::vector<std::uint64_t> sizes;
    sizes.reserve(batch.size());
    double mean = 0;
    for (const Query& q : batch.queries) {
        sizes.push_back(q.r - q.l + 1);
        mean += static_cast<double>(q.r - q.l + 1);
    }
    mean /= static_cast<double>(sizes.size());
    std::nth_element(sizes.begin(), sizes.begin() + sizes.size() / 2, sizes.end());

    json sidecar = {{"n", spec.n},
                    {"m", spec.m},
                    {"class", to_string(spec.range_class)},
                    {"seed", spec.seed},
                    {"generator", kGeneratorName},
                    {"files", {{"array", array_path.string()}, {"queries", query_path.string()}}},
                    {"empirical",
                     {{"mean_range_size", mean}, {"median_range_size", sizes[sizes.size() / 2]}}}};
    write_text(args.out + ".json", sidecar.dump(2) + "\n");
    std::cout << "gen: wrote " << array_path.string() << ", " << query_path.string() << ", "
              << args.out << ".json\n";
    return kExitOk;
}

// --- build -----------------------------------------------------------------

struct BuildArgs {
    std::string array;
    std::string out = "hierarchy.grmq";
    ConfigFlags cfg;
    unsigned workers = 0;
};

int cmd_build(const BuildArgs& args) {
    auto values = io::read_array_file(args.array);
    const std::uint64_t n = values.size();
    HierarchyConfig cfg = args.cfg.resolve(n);

    const auto start = std::chrono::steady_clock::now();
    auto h = MinHierarchy::build(std::move(values), cfg, args.workers);
    const double build_ms = elapsed_ms(start);

    io::write_hierarchy_file(args.out, h);
    const auto mem = h.memory_report();
    json sidecar = {{"n", n},
                    {"config", config_json(cfg)},
                    {"num_levels", h.layout().num_levels()},
                    {"aux_elements", h.auxiliary_elements()},
                    {"build_ms", build_ms},
                    {"memory",
                     {{"base_bytes", mem.base_bytes},
                      {"aux_min_bytes", mem.aux_min_bytes},
                      {"aux_argmin_bytes", mem.aux_argmin_bytes},
                      {"metadata_bytes", mem.metadata_bytes},
                      {"aux_ratio", mem.aux_ratio()}}}};
    write_text(args.out + ".json", sidecar.dump(2) + "\n");

    std::cout << "build: n=" << n << " strategy=" << strategy_name(cfg.strategy)
              << " c=" << cfg.chunk_size << " g=" << cfg.group_size << " t=" << cfg.cutoff
              << " levels=" << h.layout().num_levels() << " aux_elements="
              << h.auxiliary_elements() << " aux_ratio=" << mem.aux_ratio() << "\n";
    return kExitOk;
}

// --- query -----------------------------------------------------------------

struct QueryArgs {
    std::string hierarchy;
    std::string queries;
    std::string out = "results.csv";
    std::string stats_out;
    std::string scheduling = "wlq";
    ConfigFlags cfg;
    unsigned workers = 0;
};

MinHierarchy load_hierarchy(const std::string& path, const ConfigFlags& flags) {
    std::optional<HierarchyConfig> base;
    if (auto sidecar = try_read_json(path + ".json"))
        base = config_from_json(sidecar->at("config"));
    // read first (sidecar config or defaults), then apply flag overrides
    auto h = io::read_hierarchy_file(path, base);
    HierarchyConfig cfg = flags.resolve(h.n(), h.config());
    cfg.track_index = h.tracks_index();  // file contents decide
    cfg.validate_structure();
    if (cfg.chunk_size != h.config().chunk_size)
        throw ConfigError("--chunk-size conflicts with the stored hierarchy");
    return MinHierarchy::from_parts(std::vector<float>(h.base()), h.layout(),
                                    std::vector<float>(h.upper_mins()),
                                    std::vector<Position>(h.upper_argmins()), cfg);
}

int cmd_query(const QueryArgs& args) {
    auto h = load_hierarchy(args.hierarchy, args.cfg);
    auto batch = io::read_query_file(args.queries);
    const Scheduling sched = scheduling_from_name(args.scheduling);

    const auto start = std::chrono::steady_clock::now();
    auto out = execute_batch(h, batch, sched, args.workers);
    const double wall = elapsed_ms(start);

    io::write_results_csv(args.out, batch, out.results, h.tracks_index());
    json stats = {{"m", batch.size()},
                  {"scheduling", scheduling_name(sched)},
                  {"config", config_json(h.config())},
                  {"wall_ms", wall},
                  {"entries_scanned",
                   {{"total", out.stats.entries_scanned_total()},
                    {"mean", out.stats.entries_scanned_mean()},
                    {"max", out.stats.entries_scanned_max()}}},
                  {"bound_load_transactions", out.stats.bound_load_transactions},
                  {"scan_transactions", out.stats.scan_transactions_total()},
                  {"lane_steps", out.stats.lane_steps_total()},
                  {"idle_lanes", out.stats.idle_lanes_total()},
                  {"result_checksum", result_checksum(out.results)}};
    if (!args.stats_out.empty()) write_text(args.stats_out, stats.dump(2) + "\n");
    std::cout << "query: m=" << batch.size() << " wall_ms=" << wall
              << " entries_mean=" << out.stats.entries_scanned_mean() << "\n";
    return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string array;
    std::string hierarchy;
    std::string queries;
    std::string out;
    ConfigFlags cfg;
    unsigned workers = 0;
};

int cmd_verify(const VerifyArgs& args) {
    if (args.hierarchy.empty() && args.array.empty())
        throw ConfigError("verify needs --array or --hierarchy");
    MinHierarchy h = [&] {
        if (!args.hierarchy.empty()) return load_hierarchy(args.hierarchy, args.cfg);
        auto values = io::read_array_file(args.array);
        HierarchyConfig cfg = args.cfg.resolve(values.size());
        return MinHierarchy::build(std::move(values), cfg, args.workers);
    }();
    auto batch = io::read_query_file(args.queries);
    auto mismatches = cross_check(h, batch, Scheduling::WarpLocalQueue, args.workers);
    if (!args.out.empty()) write_text(args.out, io::mismatch_report_json(mismatches) + "\n");
    std::cout << "verify: " << batch.size() << " queries, " << mismatches.size()
              << " mismatches\n";
    return mismatches.empty() ? kExitOk : kExitMismatch;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
    std::vector<std::uint64_t> n_list;
    std::vector<std::uint64_t> c_list = {4, 8, 16, 32};
    std::vector<std::uint64_t> g_list = {4, 8, 16};
    std::vector<std::string> strategies = {"vector", "lane"};
    std::string range_class = "mixed";
    std::uint64_t m = 1 << 14;
    std::uint64_t seed = 1;
    std::string out = "sweep.csv";
    unsigned workers = 0;
};

int cmd_sweep(const SweepArgs& args) {
    if (args.n_list.empty() || args.c_list.empty() || args.strategies.empty())
        throw ConfigError("sweep grid must be non-empty");

    struct Row {
        std::uint64_t n, c, g, t;
        std::string strategy;
        double entries_mean, wall_ms;
    };

    std::ofstream out(args.out, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + args.out);
    out << "n,strategy,c,g,t,class,m,seed,entries_mean,entries_norm,wall_ms,time_norm\n";

    for (std::uint64_t n : args.n_list) {
        auto values = gen_array(n, args.seed);
        WorkloadSpec spec{n, args.m, range_class_from_string(args.range_class), args.seed};
        auto batch = gen_queries(spec);

        std::vector<Row> rows;
        for (const std::string& strat_name : args.strategies) {
            const ScanStrategy strat =
                strat_name == "vector" ? ScanStrategy::VectorBlock : ScanStrategy::LaneGroup;
            for (std::uint64_t c : args.c_list) {
                // VectorBlock only supports 4-aligned chunks and a fixed group of 4
                if (strat == ScanStrategy::VectorBlock && c % 4 != 0) continue;
                const auto groups = strat == ScanStrategy::VectorBlock
                                        ? std::vector<std::uint64_t>{4}
                                        : args.g_list;
                for (std::uint64_t g : groups) {
                    HierarchyConfig cfg;
                    cfg.strategy = strat;
                    cfg.chunk_size = static_cast<std::uint32_t>(c);
                    cfg.group_size = static_cast<std::uint32_t>(g);
                    cfg.cutoff = HierarchyConfig::minimal_cutoff(strat, cfg.chunk_size);
                    cfg.validate();

                    auto h = MinHierarchy::build(values, cfg, args.workers);
                    const auto start = std::chrono::steady_clock::now();
                    auto res = execute_batch(h, batch, Scheduling::WarpLocalQueue, args.workers);
                    rows.push_back({n, c, g, cfg.cutoff, strat_name,
                                    res.stats.entries_scanned_mean(), elapsed_ms(start)});
                }
            }
        }

        double best_entries = rows.front().entries_mean;
        double best_time = rows.front().wall_ms;
        for (const Row& r : rows) {
            best_entries = std::min(best_entries, r.entries_mean);
            best_time = std::min(best_time, r.wall_ms);
        }
        for (const Row& r : rows) {
            out << r.n << ',' << r.strategy << ',' << r.c << ',' << r.g << ',' << r.t << ','
                << args.range_class << ',' << args.m << ',' << args.seed << ',' << r.entries_mean
                << ',' << r.entries_mean / best_entries << ',' << r.wall_ms << ','
                << r.wall_ms / best_time << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + args.out);
    std::cout << "sweep: wrote " << args.out << "\n";
    return kExitOk;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string array;
    std::string queries;
    std::uint64_t n = 1 << 20;
    std::uint64_t m = 1 << 16;
    std::string range_class = "mixed";
    std::uint64_t seed = 1;
    std::string scheduling = "both";
    bool with_baseline = false;
    std::uint64_t baseline_sample = 1024;
    std::string out = "bench.csv";
    ConfigFlags cfg;
    unsigned workers = 0;
};

int cmd_bench(const BenchArgs& args) {
    std::vector<float> values;
    QueryBatch batch;
    std::string cls = args.range_class;
    std::uint64_t seed = args.seed;
    if (!args.array.empty()) {
        values = io::read_array_file(args.array);
        batch = io::read_query_file(args.queries);
    } else {
        values = gen_array(args.n, args.seed);
        batch = gen_queries({args.n, args.m, range_class_from_string(args.range_class),
                             args.seed});
    }
    const std::uint64_t n = values.size();
    const std::uint64_t m = batch.size();
    HierarchyConfig cfg = args.cfg.resolve(n);
    auto h = MinHierarchy::build(values, cfg, args.workers);
    const auto mem = h.memory_report();

    const bool append = fs::exists(args.out) && fs::file_size(args.out) > 0;
    std::ofstream out(args.out, append ? std::ios::app : std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + args.out);
    if (!append)
        out << "n,m,class,strategy,scheduling,c,g,t,wall_ms,ns_per_query,entries_mean,"
               "entries_max,bound_load_transactions,scan_transactions,aux_ratio,"
               "result_checksum,seed\n";

    auto emit = [&](const std::string& strategy, const std::string& sched, double wall_ms,
                    double entries_mean, std::uint64_t entries_max, std::uint64_t bound_loads,
                    std::uint64_t scan_tx, std::uint64_t checksum) {
        out << n << ',' << m << ',' << cls << ',' << strategy << ',' << sched << ','
            << cfg.chunk_size << ',' << cfg.group_size << ',' << cfg.cutoff << ',' << wall_ms
            << ',' << wall_ms * 1e6 / static_cast<double>(m) << ',' << entries_mean << ','
            << entries_max << ',' << bound_loads << ',' << scan_tx << ',' << mem.aux_ratio()
            << ',' << checksum << ',' << seed << '\n';
    };

    std::vector<Scheduling> scheds;
    if (args.scheduling == "both")
        scheds = {Scheduling::MultiLoad, Scheduling::WarpLocalQueue};
    else
        scheds = {scheduling_from_name(args.scheduling)};

    for (Scheduling sched : scheds) {
        const auto start = std::chrono::steady_clock::now();
        auto res = execute_batch(h, batch, sched, args.workers);
        const double wall = elapsed_ms(start);
        emit(strategy_name(cfg.strategy), scheduling_name(sched), wall,
             res.stats.entries_scanned_mean(), res.stats.entries_scanned_max(),
             res.stats.bound_load_transactions, res.stats.scan_transactions_total(),
             result_checksum(res.results));
    }

    if (args.with_baseline) {
        // time the full scan on a sample and report its exact entry counts
        const std::uint64_t sample = std::min<std::uint64_t>(args.baseline_sample, m);
        double entries_mean = 0;
        std::uint64_t entries_max = 0;
        for (const Query& q : batch.queries) {
            entries_mean += static_cast<double>(q.r - q.l + 1);
            entries_max = std::max(entries_max, q.r - q.l + 1);
        }
        entries_mean /= static_cast<double>(m);

        std::vector<ResultRecord> sampled(sample);
        const auto start = std::chrono::steady_clock::now();
        for (std::uint64_t j = 0; j < sample; ++j)
            sampled[j] = full_scan_rmq(values, batch.queries[j].l, batch.queries[j].r);
        const double wall = elapsed_ms(start) * static_cast<double>(m) /
                            static_cast<double>(sample);  // extrapolated
        emit("full-scan", "multiload", wall, entries_mean, entries_max, m, 0,
             result_checksum(sampled));
    }
    if (!out) throw IoError("write failed: " + args.out);
    std::cout << "bench: appended " << scheds.size() + (args.with_baseline ? 1 : 0)
              << " row(s) to " << args.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch range-minimum-query workbench"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate an array and query batch");
    gen->add_option("--n", gen_args.n, "Array size")->required();
    gen->add_option("--m", gen_args.m, "Query count")->required();
    gen->add_option("--class", gen_args.range_class, "large | medium | small | mixed");
    gen->add_option("--seed", gen_args.seed, "RNG seed");
    gen->add_option("--out", gen_args.out, "Output file prefix");

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "Build a minima hierarchy from an array file");
    build->add_option("--array", build_args.array, "Input array file")->required();
    build->add_option("--out", build_args.out, "Output hierarchy file");
    build->add_option("--workers", build_args.workers, "Worker threads (0 = all cores)");
    build_args.cfg.attach(build);

    QueryArgs query_args;
    auto* query = app.add_subcommand("query", "Answer a query batch from files");
    query->add_option("--hierarchy", query_args.hierarchy, "Hierarchy file")->required();
    query->add_option("--queries", query_args.queries, "Query file")->required();
    query->add_option("--out", query_args.out, "Results CSV");
    query->add_option("--stats", query_args.stats_out, "Stats JSON");
    query->add_option("--scheduling", query_args.scheduling, "multiload | wlq");
    query->add_option("--workers", query_args.workers, "Worker threads (0 = all cores)");
    query_args.cfg.attach(query);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Cross-check answers against the full-scan oracle");
    verify->add_option("--array", verify_args.array, "Array file (hierarchy built on the fly)");
    verify->add_option("--hierarchy", verify_args.hierarchy, "Prebuilt hierarchy file");
    verify->add_option("--queries", verify_args.queries, "Query file")->required();
    verify->add_option("--out", verify_args.out, "Mismatch report JSON");
    verify->add_option("--workers", verify_args.workers, "Worker threads (0 = all cores)");
    verify_args.cfg.attach(verify);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Grid-sweep configurations, normalized per n");
    sweep->add_option("--n", sweep_args.n_list, "Array sizes")->required();
    sweep->add_option("--c", sweep_args.c_list, "Chunk sizes");
    sweep->add_option("--g", sweep_args.g_list, "Group sizes");
    sweep->add_option("--strategy", sweep_args.strategies, "Strategies: vector lane");
    sweep->add_option("--class", sweep_args.range_class, "Range class");
    sweep->add_option("--m", sweep_args.m, "Queries per grid point");
    sweep->add_option("--seed", sweep_args.seed, "RNG seed");
    sweep->add_option("--out", sweep_args.out, "Output CSV");
    sweep->add_option("--workers", sweep_args.workers, "Worker threads (0 = all cores)");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run a benchmark and append report rows");
    bench->add_option("--array", bench_args.array, "Array file (otherwise generated)");
    bench->add_option("--queries", bench_args.queries, "Query file (with --array)");
    bench->add_option("--n", bench_args.n, "Array size when generating");
    bench->add_option("--m", bench_args.m, "Query count when generating");
    bench->add_option("--class", bench_args.range_class, "Range class when generating");
    bench->add_option("--seed", bench_args.seed, "RNG seed");
    bench->add_option("--scheduling", bench_args.scheduling, "multiload | wlq | both");
    bench->add_flag("--with-baseline", bench_args.with_baseline, "Add a full-scan baseline row");
    bench->add_option("--baseline-sample", bench_args.baseline_sample,
                      "Queries to time for the baseline");
    bench->add_option("--out", bench_args.out, "Report CSV (appended)");
    bench->add_option("--workers", bench_args.workers, "Worker threads (0 = all cores)");
    bench_args.cfg.attach(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_args);
        if (build->parsed()) return cmd_build(build_args);
        if (query->parsed()) return cmd_query(query_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
