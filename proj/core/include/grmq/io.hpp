#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grmq/hierarchy.hpp"
#include "grmq/oracle.hpp"
#include "grmq/types.hpp"

namespace grmq::io {

// All files are little-endian.
//
// Array file:     "GRMQ1", 1 byte position width (4 or 8), u64 n, n f32 values.
// Query file:     "GRMQQ", 1 byte position width, u64 m, m (l, r) pairs.
// Hierarchy file: the array file, then u64 auxiliary level count, per-level
//                 u64 sizes, the mins buffer (f32), and, when the hierarchy
//                 tracks indices, the argmins buffer at the position width.

void write_array_file(const std::filesystem::path& path, std::span<const float> values);
std::vector<float> read_array_file(const std::filesystem::path& path);

void write_query_file(const std::filesystem::path& path, const QueryBatch& batch,
                      std::uint64_t n);
QueryBatch read_query_file(const std::filesystem::path& path);

void write_hierarchy_file(const std::filesystem::path& path, const MinHierarchy& h);
// The file does not carry scan parameters; config supplies them (defaults for
// n when absent). Stored level sizes are validated against chunk-wise
// reduction and argmin presence is inferred from the file length.
MinHierarchy read_hierarchy_file(const std::filesystem::path& path,
                                 std::optional<HierarchyConfig> config = std::nullopt);

// CSV with header query_id,l,r,value,index; index left blank when untracked.
void write_results_csv(const std::filesystem::path& path, const QueryBatch& batch,
                       std::span<const ResultRecord> results, bool track_index);

std::string mismatch_report_json(std::span<const Mismatch> mismatches);

}  // namespace grmq::io
