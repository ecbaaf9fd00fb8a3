#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grmq/hierarchy.hpp"
#include "grmq/types.hpp"

namespace grmq {

// No-preprocessing baseline: linear scan of [l, r] with leftmost argmin.
// Every other answer path in this project must match it exactly.
ResultRecord full_scan_rmq(std::span<const float> values, Position l, Position r);

// Precompute-everything baseline: a triangular table of answers for all
// (l, r) pairs, Theta(n^2) entries, constant-time lookup.
class FullTable {
public:
    static constexpr std::uint64_t kDefaultCap = 4096;

    static FullTable build(std::span<const float> values, std::uint64_t cap = kDefaultCap);

    ResultRecord lookup(Position l, Position r) const;
    std::uint64_t n() const { return n_; }

private:
    std::uint64_t n_ = 0;
    std::vector<ResultRecord> answers_;  // row l starts at l*n - l*(l-1)/2
};

struct Mismatch {
    std::uint64_t query_id;
    Query query;
    ResultRecord expected;  // full-scan answer
    ResultRecord actual;    // hierarchy answer
};

// Runs the batch through the query engine and compares every answer against
// full_scan_rmq (bit-equal value, equal index). Empty result means agreement.
std::vector<Mismatch> cross_check(const MinHierarchy& h, const QueryBatch& batch,
                                  Scheduling scheduling = Scheduling::WarpLocalQueue,
                                  unsigned workers = 0);

}  // namespace grmq
