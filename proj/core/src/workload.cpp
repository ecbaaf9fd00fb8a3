#include "grmq/workload.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace grmq {

std::string to_string(RangeClass cls) {
    switch (cls) {
        case RangeClass::Large: return "large";
        case RangeClass::Medium: return "medium";
        case RangeClass::Small: return "small";
        case RangeClass::Mixed: return "mixed";
    }
    return "?";
}

RangeClass range_class_from_string(const std::string& name) {
    if (name == "large") return RangeClass::Large;
    if (name == "medium") return RangeClass::Medium;
    if (name == "small") return RangeClass::Small;
    if (name == "mixed") return RangeClass::Mixed;
    throw ConfigError("unknown range class: " + name);
}

namespace {

constexpr std::uint64_t kQueryStreamSalt = 0x9e3779b97f4a7c15ull;

float uniform_float01(std::mt19937_64& rng) {
    return static_cast<float>(rng() >> 40) * 0x1p-24f;
}

// inclusive [0, bound]
std::uint64_t uniform_u64(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == static_cast<std::uint64_t>(-1) ? rng() : rng() % (bound + 1);
}

double standard_normal(std::mt19937_64& rng) {
    // Box-Muller; u1 in (0, 1] keeps the log finite
    const double u1 = 1.0 - static_cast<double>(rng() >> 11) * 0x1p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t sample_size(std::mt19937_64& rng, RangeClass cls, std::uint64_t n) {
    if (cls == RangeClass::Mixed) {
        static constexpr RangeClass kSources[3] = {RangeClass::Large, RangeClass::Medium,
                                                   RangeClass::Small};
        cls = kSources[rng() % 3];
    }
    if (cls == RangeClass::Large) return 1 + uniform_u64(rng, n - 1);
    const double exponent = cls == RangeClass::Medium ? 0.6 : 0.3;
    const double mu = exponent * std::log(static_cast<double>(n));
    const double s = std::exp(mu + 0.3 * standard_normal(rng));
    const double rounded = std::round(s);
    if (rounded < 1.0) return 1;
    if (rounded >= static_cast<double>(n)) return n;
    return static_cast<std::uint64_t>(rounded);
}

}  // namespace

std::vector<float> gen_array(std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<float> values(n);
    for (auto& v : values) v = uniform_float01(rng);
    return values;
}

QueryBatch gen_queries(const WorkloadSpec& spec) {
    if (spec.n < 1 || spec.m < 1) throw ConfigError("n and m must be >= 1");
    std::mt19937_64 rng(spec.seed ^ kQueryStreamSalt);
    QueryBatch batch;
    batch.queries.reserve(spec.m);
    for (std::uint64_t j = 0; j < spec.m; ++j) {
        const std::uint64_t s = sample_size(rng, spec.range_class, spec.n);
        const std::uint64_t l = uniform_u64(rng, spec.n - s);
        batch.queries.push_back({l, l + s - 1});
    }
    return batch;
}

}  // namespace grmq
