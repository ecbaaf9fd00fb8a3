#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grmq/types.hpp"

namespace grmq {

enum class RangeClass { Large, Medium, Small, Mixed };

std::string to_string(RangeClass cls);
RangeClass range_class_from_string(const std::string& name);

struct WorkloadSpec {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    RangeClass range_class = RangeClass::Mixed;
    std::uint64_t seed = 0;
};

// Generator identity recorded in sidecar files. All sampling is hand-rolled on
// top of mt19937_64 so that generated files are stable across standard library
// implementations: uniform floats take the top 24 bits of one draw, integers
// reduce one draw modulo the range, normals use Box-Muller on two draws. The
// array stream uses the seed directly; the query stream uses seed xor
// 0x9e3779b97f4a7c15 so one user seed drives both without overlap.
inline constexpr const char* kGeneratorName = "mt19937_64/top24-uniform/box-muller";

// n uniform floats in [0, 1), deterministic per seed.
std::vector<float> gen_array(std::uint64_t n, std::uint64_t seed);

// Range sizes per class: Large uniform on [1, n]; Medium log-normal with
// mu = 0.6 ln n, sigma = 0.3; Small the same with mu = 0.3 ln n; Mixed picks
// one of the three per query with equal probability. Log-normal sizes round
// to the nearest integer and clamp to [1, n]. The left border is uniform on
// [0, n - s] and r = l + s - 1.
QueryBatch gen_queries(const WorkloadSpec& spec);

}  // namespace grmq
