#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "grmq/cost_model.hpp"
#include "grmq/hierarchy.hpp"
#include "grmq/types.hpp"

namespace grmq {

// Instrumentation for a single query traversal.
struct QueryStats {
    std::uint64_t entries_scanned = 0;   // qualifying entries merged into the minimum
    std::uint64_t levels_touched = 0;
    std::uint64_t lane_steps = 0;        // group-wide access steps (vector loads for VectorBlock)
    std::uint64_t idle_lanes = 0;        // lanes assigned to non-qualifying entries
    std::uint64_t scan_transactions = 0; // modeled memory transactions during scans
};

struct ExecutionStats {
    std::vector<QueryStats> per_query;
    std::uint64_t bound_load_transactions = 0;  // modeled transfers for loading (l, r) pairs

    std::uint64_t entries_scanned_total() const;
    std::uint64_t entries_scanned_max() const;
    double entries_scanned_mean() const;
    std::uint64_t scan_transactions_total() const;
    std::uint64_t lane_steps_total() const;
    std::uint64_t idle_lanes_total() const;
};

// Reduction identity: +infinity with an invalid sentinel index.
struct RunningMin {
    float value = std::numeric_limits<float>::infinity();
    Position index = kNoPosition;

    // Leftmost tie-break: a strictly smaller value wins, an equal value wins
    // only with a smaller original-array position.
    void merge(float v, Position idx) {
        if (v < value || (v == value && idx < index)) {
            value = v;
            index = idx;
        }
    }
};

// How scanned entries map to original-array positions.
enum class IndexMode {
    None,          // value-only hierarchy
    SelfPosition,  // level 0: the position is the index
    Mapped,        // auxiliary level: argmins[pos] is the index
};

// Scans [lo, hi) of one level and merges into running. LaneGroup proceeds in
// steps of g lanes from the largest multiple of g <= lo; lanes outside the
// range skip their load. VectorBlock proceeds in aligned 4-entry blocks and
// skips blocks with no qualifying entries. address_base is the level's element
// offset in its buffer, used for transaction modeling.
RunningMin scan_segment(std::span<const float> values, std::span<const Position> argmins,
                        IndexMode mode, std::uint64_t lo, std::uint64_t hi, RunningMin running,
                        const HierarchyConfig& config, std::uint64_t address_base = 0,
                        const CoalescingModel& model = {}, QueryStats* stats = nullptr);

// Answers one query by scanning partial chunks on each level and ascending
// until the remaining span fits in two chunks or the top level is reached.
ResultRecord rmq(const MinHierarchy& h, Query q, QueryStats* stats = nullptr,
                 const CoalescingModel& model = {});

float rmq_value(const MinHierarchy& h, Query q);
// Throws StateError when the hierarchy was built without index tracking.
Position rmq_index(const MinHierarchy& h, Query q);

struct BatchResult {
    std::vector<ResultRecord> results;  // in input order
    ExecutionStats stats;
};

// Runs a batch under the given assignment strategy. Results are identical for
// MultiLoad and WarpLocalQueue; only the modeled bound-load transfers differ.
// Groups of queries are partitioned across workers (0 = machine parallelism).
BatchResult execute_batch(const MinHierarchy& h, const QueryBatch& batch, Scheduling scheduling,
                          unsigned workers = 0, const CoalescingModel& model = {});

// Upper bound on entries scanned per query: t + 2 * c * ceil(log_c(max(n, c))).
std::uint64_t scan_bound(std::uint64_t n, const HierarchyConfig& config);

}  // namespace grmq
