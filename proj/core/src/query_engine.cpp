#include "grmq/query_engine.hpp"

#include <algorithm>
#include <string>

#include "grmq/parallel.hpp"

namespace grmq {

std::uint64_t ExecutionStats::entries_scanned_total() const {
    std::uint64_t total = 0;
    for (const auto& s : per_query) total += s.entries_scanned;
    return total;
}

std::uint64_t ExecutionStats::entries_scanned_max() const {
    std::uint64_t best = 0;
    for (const auto& s : per_query) best = std::max(best, s.entries_scanned);
    return best;
}

double ExecutionStats::entries_scanned_mean() const {
    if (per_query.empty()) return 0.0;
    return static_cast<double>(entries_scanned_total()) / static_cast<double>(per_query.size());
}

std::uint64_t ExecutionStats::scan_transactions_total() const {
    std::uint64_t total = 0;
    for (const auto& s : per_query) total += s.scan_transactions;
    return total;
}

std::uint64_t ExecutionStats::lane_steps_total() const {
    std::uint64_t total = 0;
    for (const auto& s : per_query) total += s.lane_steps;
    return total;
}

std::uint64_t ExecutionStats::idle_lanes_total() const {
    std::uint64_t total = 0;
    for (const auto& s : per_query) total += s.idle_lanes;
    return total;
}

namespace {

Position entry_index(std::span<const Position> argmins, IndexMode mode, std::uint64_t pos) {
    switch (mode) {
        case IndexMode::SelfPosition: return pos;
        case IndexMode::Mapped: return argmins[pos];
        case IndexMode::None: break;
    }
    return kNoPosition;
}

}  // namespace

RunningMin scan_segment(std::span<const float> values, std::span<const Position> argmins,
                        IndexMode mode, std::uint64_t lo, std::uint64_t hi, RunningMin running,
                        const HierarchyConfig& config, std::uint64_t address_base,
                        const CoalescingModel& model, QueryStats* stats) {
    if (hi > values.size()) throw RangeError("scan_segment: hi exceeds level length");
    if (lo >= hi) return running;

    const std::uint32_t step = config.effective_group();
    std::uint64_t addresses[32];
    for (std::uint64_t offset = lo - lo % step; offset < hi; offset += step) {
        std::uint32_t active = 0;
        for (std::uint32_t lane = 0; lane < step; ++lane) {
            const std::uint64_t pos = offset + lane;
            if (pos < lo || pos >= hi) continue;
            running.merge(values[pos], entry_index(argmins, mode, pos));
            addresses[active++] = (address_base + pos) * model.entry_bytes;
        }
        if (config.strategy == ScanStrategy::VectorBlock && active == 0)
            continue;  // vector load skipped outright
        if (stats != nullptr) {
            stats->entries_scanned += active;
            stats->lane_steps += 1;
            stats->idle_lanes += step - active;
            if (config.strategy == ScanStrategy::VectorBlock) {
                // one vector load fetches the whole aligned block
                stats->scan_transactions += 1;
            } else {
                stats->scan_transactions += coalesce_count({addresses, active}, model);
            }
        }
    }
    return running;
}

ResultRecord rmq(const MinHierarchy& h, Query q, QueryStats* stats,
                 const CoalescingModel& model) {
    if (q.r >= h.n()) throw RangeError("rmq: r out of bounds");
    if (q.l > q.r) throw RangeError("rmq: inverted range");

    const HierarchyConfig& cfg = h.config();
    const std::uint64_t c = cfg.chunk_size;
    const std::size_t num_levels = h.layout().num_levels();

    std::uint64_t l = q.l;
    std::uint64_t r = q.r + 1;  // exclusive
    std::size_t level = 0;
    RunningMin running;

    auto scan_level = [&](std::size_t lvl, std::uint64_t lo, std::uint64_t hi) {
        const IndexMode mode = lvl == 0 ? IndexMode::SelfPosition
                               : h.tracks_index() ? IndexMode::Mapped
                                                  : IndexMode::None;
        running = scan_segment(h.level_values(lvl), h.level_argmins(lvl), mode, lo, hi, running,
                               cfg, h.level_address_base(lvl), model, stats);
    };

    for (; level + 1 < num_levels; ++level) {
        if (r - l <= 2 * c) break;
        const std::uint64_t next_l = (l + c - 1) - (l + c - 1) % c;
        const std::uint64_t prev_r = r - r % c;
        scan_level(level, l, next_l);
        scan_level(level, prev_r, r);
        l = next_l / c;
        r = prev_r / c;
    }
    scan_level(level, l, r);

    if (stats != nullptr) stats->levels_touched = level + 1;
    return {running.value, h.tracks_index() ? running.index : kNoPosition};
}

float rmq_value(const MinHierarchy& h, Query q) { return rmq(h, q).value; }

Position rmq_index(const MinHierarchy& h, Query q) {
    if (!h.tracks_index())
        throw StateError("rmq_index: hierarchy was built without index tracking");
    return rmq(h, q).index;
}

BatchResult execute_batch(const MinHierarchy& h, const QueryBatch& batch, Scheduling scheduling,
                          unsigned workers, const CoalescingModel& model) {
    const std::uint64_t m = batch.size();
    if (m == 0) throw ConfigError("batch must contain at least one query");
    for (std::uint64_t j = 0; j < m; ++j) {
        const Query& q = batch.queries[j];
        if (q.r >= h.n())
            throw RangeError("query " + std::to_string(j) + ": r out of bounds");
        if (q.l > q.r)
            throw RangeError("query " + std::to_string(j) + ": inverted range");
    }

    const std::uint32_t g = h.config().effective_group();
    BatchResult out;
    out.results.resize(m);
    out.stats.per_query.resize(m);
    out.stats.bound_load_transactions = assignment_transactions(m, g, scheduling);

    // One group owns g consecutive queries. Under warp-local queuing the group
    // answers them one at a time in rank order; MultiLoad walks the same order
    // with per-query lane groups. Either way results land at the input index.
    const std::uint64_t num_groups = (m + g - 1) / g;
    parallel_for(num_groups, workers, [&](std::uint64_t gbegin, std::uint64_t gend) {
        for (std::uint64_t grp = gbegin; grp < gend; ++grp) {
            const std::uint64_t qbegin = grp * g;
            const std::uint64_t qend = std::min<std::uint64_t>(qbegin + g, m);
            for (std::uint64_t j = qbegin; j < qend; ++j)
                out.results[j] = rmq(h, batch.queries[j], &out.stats.per_query[j], model);
        }
    });
    return out;
}

std::uint64_t scan_bound(std::uint64_t n, const HierarchyConfig& config) {
    const std::uint64_t c = config.chunk_size;
    std::uint64_t levels = 0;
    std::uint64_t x = std::max<std::uint64_t>(n, c);
    std::uint64_t power = 1;
    while (power < x) {  // ceil(log_c(x))
        power *= c;
        ++levels;
    }
    return config.cutoff + 2 * c * levels;
}

}  // namespace grmq
