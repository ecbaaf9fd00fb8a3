#include "grmq/cost_model.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace grmq {

std::uint64_t coalesce_count(std::span<const std::uint64_t> byte_addresses,
                             const CoalescingModel& model) {
    model.validate();
    if (byte_addresses.empty()) return 0;
    std::vector<std::uint64_t> segments;
    segments.reserve(byte_addresses.size());
    for (auto addr : byte_addresses) segments.push_back(addr / model.segment_bytes);
    std::sort(segments.begin(), segments.end());
    segments.erase(std::unique(segments.begin(), segments.end()), segments.end());
    return segments.size();
}

std::uint64_t simulate_coalescing_benchmark(std::uint64_t total_lanes, std::uint32_t group_size,
                                            std::uint32_t iterations, std::uint64_t array_len,
                                            std::uint64_t seed, bool aligned,
                                            const CoalescingModel& model) {
    model.validate();
    if (!is_pow2(group_size)) throw ConfigError("group_size must be a power of two");
    if (total_lanes % group_size != 0)
        throw ConfigError("group_size must divide total_lanes");
    if (array_len < group_size) throw ConfigError("array_len must be >= group_size");

    const std::uint64_t groups = total_lanes / group_size;
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> addresses(group_size);
    std::uint64_t total = 0;
    for (std::uint32_t it = 0; it < iterations; ++it) {
        for (std::uint64_t grp = 0; grp < groups; ++grp) {
            std::uint64_t p = rng() % (array_len - group_size + 1);
            if (aligned) p -= p % group_size;
            for (std::uint32_t i = 0; i < group_size; ++i)
                addresses[i] = (p + i) * model.entry_bytes;
            total += coalesce_count(addresses, model);
        }
    }
    return total;
}

std::uint64_t assignment_transactions(std::uint64_t m, std::uint32_t g, Scheduling strategy) {
    if (m == 0 || g == 0) throw ConfigError("m and g must be >= 1");
    if (strategy == Scheduling::MultiLoad) return m;
    if (g <= 16) return (m + g - 1) / g;
    // pairs of two 32-bit bounds: 8 bytes each, 16 per 128-byte segment
    const std::uint64_t full_groups = m / g;
    const std::uint64_t rem = m % g;
    const std::uint64_t per_group = (std::uint64_t{g} * 8 + 127) / 128;
    std::uint64_t total = full_groups * per_group;
    if (rem != 0) total += (rem * 8 + 127) / 128;
    return total;
}

}  // namespace grmq
