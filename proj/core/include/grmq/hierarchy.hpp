#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grmq/types.hpp"

namespace grmq {

// Sizes and offsets of the auxiliary minima levels, bottom-up. Level 0 is the
// input array itself and is not part of the contiguous upper buffer.
struct LevelLayout {
    std::vector<std::uint64_t> level_sizes;    // auxiliary levels only
    std::vector<std::uint64_t> level_offsets;  // prefix sums of level_sizes

    std::size_t num_levels() const { return level_sizes.size() + 1; }
    std::uint64_t upper_size() const;

    friend bool operator==(const LevelLayout&, const LevelLayout&) = default;
};

// Applies ceil(size / c) reductions until the level fits within t elements.
// Returns zero auxiliary levels when n <= t.
LevelLayout plan_levels(std::uint64_t n, std::uint32_t chunk_size, std::uint32_t cutoff);

struct MemoryReport {
    std::uint64_t base_bytes = 0;
    std::uint64_t aux_min_bytes = 0;
    std::uint64_t aux_argmin_bytes = 0;
    std::uint64_t metadata_bytes = 0;

    std::uint64_t aux_total() const { return aux_min_bytes + aux_argmin_bytes + metadata_bytes; }
    double aux_ratio() const {
        return base_bytes == 0 ? 0.0 : static_cast<double>(aux_total()) / static_cast<double>(base_bytes);
    }
};

// The input array plus its multi-level minima hierarchy, stored as one
// contiguous values buffer and (optionally) a parallel buffer of leftmost
// argmin positions into the original array. Immutable after construction.
class MinHierarchy {
public:
    // Builds all auxiliary levels bottom-up. Chunks within a level may be
    // reduced by concurrent workers; workers = 0 uses machine parallelism.
    static MinHierarchy build(std::vector<float> values, const HierarchyConfig& config,
                              unsigned workers = 0);

    // Reassembles a hierarchy from deserialized parts; buffers must already be
    // consistent (used by the file loader, which validates the layout).
    static MinHierarchy from_parts(std::vector<float> base, LevelLayout layout,
                                   std::vector<float> upper_mins,
                                   std::vector<Position> upper_argmins, HierarchyConfig config);

    std::uint64_t n() const { return base_.size(); }
    const std::vector<float>& base() const { return base_; }
    const LevelLayout& layout() const { return layout_; }
    const std::vector<float>& upper_mins() const { return upper_mins_; }
    const std::vector<Position>& upper_argmins() const { return upper_argmins_; }
    const HierarchyConfig& config() const { return config_; }
    bool tracks_index() const { return config_.track_index; }

    // Values of one level; level 0 is the input array.
    std::span<const float> level_values(std::size_t level) const;
    // Argmin payloads of an auxiliary level (level >= 1); empty when untracked.
    std::span<const Position> level_argmins(std::size_t level) const;
    // Element offset of a level inside the address space used for transaction
    // modeling (0 for the base array, level_offsets[i-1] for level i).
    std::uint64_t level_address_base(std::size_t level) const;

    // E in the size bound E <= floor(n / (c - 1)) + num_levels.
    std::uint64_t auxiliary_elements() const { return upper_mins_.size(); }

    MemoryReport memory_report() const;

private:
    MinHierarchy() = default;

    std::vector<float> base_;
    LevelLayout layout_;
    std::vector<float> upper_mins_;
    std::vector<Position> upper_argmins_;
    HierarchyConfig config_;
};

}  // namespace grmq
