#include "grmq/hierarchy.hpp"

#include <algorithm>
#include <cmath>

#include "grmq/parallel.hpp"

namespace grmq {

std::uint64_t LevelLayout::upper_size() const {
    std::uint64_t total = 0;
    for (auto s : level_sizes) total += s;
    return total;
}

LevelLayout plan_levels(std::uint64_t n, std::uint32_t chunk_size, std::uint32_t cutoff) {
    if (n < 1) throw ConfigError("array size must be >= 1");
    if (!is_pow2(chunk_size) || chunk_size < 2)
        throw ConfigError("chunk_size must be a power of two >= 2");
    if (cutoff < chunk_size) throw ConfigError("cutoff must be >= chunk_size");

    LevelLayout layout;
    std::uint64_t size = n;
    std::uint64_t offset = 0;
    while (size > cutoff) {
        std::uint64_t next = (size + chunk_size - 1) / chunk_size;
        if (next >= size) break;  // no further reduction possible
        layout.level_sizes.push_back(next);
        layout.level_offsets.push_back(offset);
        offset += next;
        size = next;
    }
    return layout;
}

namespace {

// Reduces one auxiliary level from the level below. Argmin positions always
// point into the original array; ties keep the smaller position, which is the
// leftmost one because chunk entries appear in original-array order.
void reduce_level(std::span<const float> src_vals, std::span<const Position> src_idx,
                  std::span<float> dst_vals, std::span<Position> dst_idx, std::uint32_t c,
                  unsigned workers) {
    const std::uint64_t chunks = dst_vals.size();
    parallel_for(chunks, workers, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t j = begin; j < end; ++j) {
            const std::uint64_t lo = j * c;
            const std::uint64_t hi = std::min<std::uint64_t>(lo + c, src_vals.size());
            float best = src_vals[lo];
            Position best_idx = src_idx.empty() ? lo : src_idx[lo];
            for (std::uint64_t k = lo + 1; k < hi; ++k) {
                if (src_vals[k] < best) {
                    best = src_vals[k];
                    best_idx = src_idx.empty() ? k : src_idx[k];
                }
            }
            dst_vals[j] = best;
            if (!dst_idx.empty()) dst_idx[j] = best_idx;
        }
    });
}

}  // namespace

MinHierarchy MinHierarchy::build(std::vector<float> values, const HierarchyConfig& config,
                                 unsigned workers) {
    config.validate_structure();
    if (values.empty()) throw ConfigError("array size must be >= 1");
    for (float v : values)
        if (std::isnan(v)) throw InputError("input array contains NaN");

    MinHierarchy h;
    h.config_ = config;
    h.layout_ = plan_levels(values.size(), config.chunk_size, config.cutoff);
    h.base_ = std::move(values);
    h.upper_mins_.resize(h.layout_.upper_size());
    if (config.track_index) h.upper_argmins_.resize(h.upper_mins_.size());

    // Strict bottom-up order; each level is complete before the next starts.
    std::span<const float> src_vals = h.base_;
    std::span<const Position> src_idx;
    for (std::size_t i = 0; i < h.layout_.level_sizes.size(); ++i) {
        const std::uint64_t off = h.layout_.level_offsets[i];
        const std::uint64_t sz = h.layout_.level_sizes[i];
        std::span<float> dst_vals(h.upper_mins_.data() + off, sz);
        std::span<Position> dst_idx;
        if (config.track_index) dst_idx = {h.upper_argmins_.data() + off, sz};
        reduce_level(src_vals, src_idx, dst_vals, dst_idx, config.chunk_size, workers);
        src_vals = dst_vals;
        src_idx = dst_idx;
    }
    return h;
}

MinHierarchy MinHierarchy::from_parts(std::vector<float> base, LevelLayout layout,
                                      std::vector<float> upper_mins,
                                      std::vector<Position> upper_argmins,
                                      HierarchyConfig config) {
    MinHierarchy h;
    h.base_ = std::move(base);
    h.layout_ = std::move(layout);
    h.upper_mins_ = std::move(upper_mins);
    h.upper_argmins_ = std::move(upper_argmins);
    h.config_ = config;
    return h;
}

std::span<const float> MinHierarchy::level_values(std::size_t level) const {
    if (level == 0) return base_;
    const std::uint64_t off = layout_.level_offsets[level - 1];
    return {upper_mins_.data() + off, layout_.level_sizes[level - 1]};
}

std::span<const Position> MinHierarchy::level_argmins(std::size_t level) const {
    if (level == 0 || upper_argmins_.empty()) return {};
    const std::uint64_t off = layout_.level_offsets[level - 1];
    return {upper_argmins_.data() + off, layout_.level_sizes[level - 1]};
}

std::uint64_t MinHierarchy::level_address_base(std::size_t level) const {
    return level == 0 ? 0 : layout_.level_offsets[level - 1];
}

MemoryReport MinHierarchy::memory_report() const {
    MemoryReport r;
    r.base_bytes = n() * sizeof(float);
    r.aux_min_bytes = upper_mins_.size() * sizeof(float);
    // Accounted at the serialized width: 32-bit positions below 2^31 elements.
    if (!upper_argmins_.empty())
        r.aux_argmin_bytes = upper_argmins_.size() * position_width_bytes(n());
    r.metadata_bytes = layout_.level_sizes.size() * 2 * sizeof(std::uint64_t);
    return r;
}

}  // namespace grmq
