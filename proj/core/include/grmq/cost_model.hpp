#pragma once

#include <cstdint>
#include <span>

#include "grmq/types.hpp"

namespace grmq {

// Segment-granular coalescing rules: a group of simultaneous loads costs one
// transaction per distinct segment_bytes-aligned segment it touches.
struct CoalescingModel {
    std::uint32_t segment_bytes = 128;
    std::uint32_t entry_bytes = 4;
    std::uint32_t max_group = 32;

    void validate() const {
        if (!is_pow2(segment_bytes) || !is_pow2(entry_bytes) || entry_bytes > segment_bytes)
            throw ConfigError("segment/entry bytes must be powers of two with entry <= segment");
    }
};

// Number of distinct segments touched by one simultaneous access step.
// Invariant under permutation and duplication of addresses.
std::uint64_t coalesce_count(std::span<const std::uint64_t> byte_addresses,
                             const CoalescingModel& model = {});

// Replays the grouped-lookup micro-benchmark as transaction arithmetic: each
// group of group_size lanes picks a random index p per iteration and lane i
// reads entry p + i. With aligned = true, p is rounded down to a multiple of
// the group size, which makes doubling the group size halve the total exactly
// up to 32 lanes.
std::uint64_t simulate_coalescing_benchmark(std::uint64_t total_lanes, std::uint32_t group_size,
                                            std::uint32_t iterations, std::uint64_t array_len,
                                            std::uint64_t seed, bool aligned = true,
                                            const CoalescingModel& model = {});

// Transfers needed to load m (l, r) bound pairs: MultiLoad issues g redundant
// loads per query that coalesce back to m; warp-local queuing issues one load
// per query, coalescing to ceil(m / g) for g <= 16. Beyond 16 lanes a group's
// pairs span several segments and we fall back to counting them.
std::uint64_t assignment_transactions(std::uint64_t m, std::uint32_t g, Scheduling strategy);

}  // namespace grmq
