#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grmq/errors.hpp"

namespace grmq {

// Positions are kept as 64-bit integers in memory; files and memory
// accounting narrow them to 32 bits while the array size stays below 2^31.
using Position = std::uint64_t;
inline constexpr Position kNoPosition = static_cast<Position>(-1);
inline constexpr std::uint64_t kWidePositionThreshold = std::uint64_t{1} << 31;

inline unsigned position_width_bytes(std::uint64_t n) {
    return n >= kWidePositionThreshold ? 8u : 4u;
}

enum class ScanStrategy { VectorBlock, LaneGroup };
enum class Scheduling { MultiLoad, WarpLocalQueue };

// Inclusive range [l, r].
struct Query {
    Position l{};
    Position r{};

    friend bool operator==(const Query&, const Query&) = default;
};

struct QueryBatch {
    std::vector<Query> queries;

    std::size_t size() const { return queries.size(); }
};

struct ResultRecord {
    float value{};
    Position index = kNoPosition;  // leftmost argmin; kNoPosition when untracked
};

constexpr bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

struct HierarchyConfig {
    std::uint32_t chunk_size = 8;   // c
    std::uint32_t cutoff = 8;      // t, in elements on the topmost layer
    std::uint32_t group_size = 4;  // g
    ScanStrategy strategy = ScanStrategy::VectorBlock;
    bool track_index = true;

    // VectorBlock always scans in 4-wide vector loads regardless of group_size.
    std::uint32_t effective_group() const {
        return strategy == ScanStrategy::VectorBlock ? 4u : group_size;
    }

    static std::uint32_t minimal_cutoff(ScanStrategy s, std::uint32_t c) {
        return s == ScanStrategy::VectorBlock ? c : 2 * c;
    }

    // What building and scanning require: the cutoff constraints specific to a
    // strategy only matter for its tuning, not for structural correctness.
    void validate_structure() const {
        if (!is_pow2(chunk_size) || chunk_size < 2)
            throw ConfigError("chunk_size must be a power of two >= 2");
        if (!is_pow2(group_size) || group_size < 1 || group_size > 32)
            throw ConfigError("group_size must be a power of two in [1, 32]");
        if (cutoff < chunk_size) throw ConfigError("cutoff must be >= chunk_size");
    }

    void validate() const {
        validate_structure();
        if (strategy == ScanStrategy::VectorBlock) {
            if (chunk_size % 4 != 0)
                throw ConfigError("VectorBlock requires chunk_size to be a multiple of 4");
            if (cutoff < chunk_size)
                throw ConfigError("VectorBlock requires cutoff >= chunk_size");
        } else {
            if (cutoff < 2 * chunk_size)
                throw ConfigError("LaneGroup requires cutoff >= 2 * chunk_size");
        }
    }

    // Tuned defaults: VectorBlock with c = 8 below 2^25 elements, LaneGroup
    // with g = 16, c = 32 from 2^25 on. Cutoff is the minimum the strategy allows.
    static HierarchyConfig defaults_for(std::uint64_t n, bool track_index = true) {
        HierarchyConfig cfg;
        if (n < (std::uint64_t{1} << 25)) {
            cfg.strategy = ScanStrategy::VectorBlock;
            cfg.chunk_size = 8;
            cfg.group_size = 4;
        } else {
            cfg.strategy = ScanStrategy::LaneGroup;
            cfg.chunk_size = 32;
            cfg.group_size = 16;
        }
        cfg.cutoff = minimal_cutoff(cfg.strategy, cfg.chunk_size);
        cfg.track_index = track_index;
        return cfg;
    }
};

}  // namespace grmq
