#include "grmq/oracle.hpp"

#include <bit>

#include "grmq/query_engine.hpp"

namespace grmq {

ResultRecord full_scan_rmq(std::span<const float> values, Position l, Position r) {
    if (r >= values.size()) throw RangeError("full_scan_rmq: r out of bounds");
    if (l > r) throw RangeError("full_scan_rmq: inverted range");
    float best = values[l];
    Position best_idx = l;
    for (Position k = l + 1; k <= r; ++k) {
        if (values[k] < best) {
            best = values[k];
            best_idx = k;
        }
    }
    return {best, best_idx};
}

FullTable FullTable::build(std::span<const float> values, std::uint64_t cap) {
    const std::uint64_t n = values.size();
    if (n == 0) throw ConfigError("array size must be >= 1");
    if (n > cap) throw StateError("FullTable: array exceeds the size cap");

    FullTable t;
    t.n_ = n;
    t.answers_.resize(n * (n + 1) / 2);
    std::uint64_t pos = 0;
    for (Position l = 0; l < n; ++l) {
        ResultRecord run{values[l], l};
        t.answers_[pos++] = run;
        for (Position r = l + 1; r < n; ++r) {
            if (values[r] < run.value) run = {values[r], r};
            t.answers_[pos++] = run;
        }
    }
    return t;
}

ResultRecord FullTable::lookup(Position l, Position r) const {
    if (r >= n_) throw RangeError("FullTable: r out of bounds");
    if (l > r) throw RangeError("FullTable: inverted range");
    const std::uint64_t row_start = l * n_ - l * (l - 1) / 2;
    return answers_[row_start + (r - l)];
}

std::vector<Mismatch> cross_check(const MinHierarchy& h, const QueryBatch& batch,
                                  Scheduling scheduling, unsigned workers) {
    BatchResult got = execute_batch(h, batch, scheduling, workers);
    std::vector<Mismatch> mismatches;
    for (std::uint64_t j = 0; j < batch.size(); ++j) {
        const Query& q = batch.queries[j];
        const ResultRecord expected = full_scan_rmq(h.base(), q.l, q.r);
        const ResultRecord& actual = got.results[j];
        const bool value_ok =
            std::bit_cast<std::uint32_t>(expected.value) == std::bit_cast<std::uint32_t>(actual.value);
        const bool index_ok = !h.tracks_index() || expected.index == actual.index;
        if (!value_ok || !index_ok) mismatches.push_back({j, q, expected, actual});
    }
    return mismatches;
}

}  // namespace grmq
