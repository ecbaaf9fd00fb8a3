#include <doctest.h>

#include <bit>
#include <random>
#include <vector>

#include "grmq/oracle.hpp"
#include "grmq/query_engine.hpp"

using namespace grmq;

namespace {

HierarchyConfig make_cfg(ScanStrategy s, std::uint32_t c, std::uint32_t t, std::uint32_t g,
                         bool track = true) {
    HierarchyConfig cfg;
    cfg.strategy = s;
    cfg.chunk_size = c;
    cfg.cutoff = t;
    cfg.group_size = g;
    cfg.track_index = track;
    return cfg;
}

std::vector<float> random_array(std::uint64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<float> x(n);
    for (auto& v : x) v = static_cast<float>(rng() % 1024) / 128.0f;  // plenty of ties
    return x;
}

const std::vector<float> kFig4 = {2, 6, 7, 4, 1, 3};

}  // namespace

TEST_CASE("scan_segment merges the leftmost minimum of [lo, hi)") {
    auto cfg = make_cfg(ScanStrategy::LaneGroup, 2, 4, 4);
    auto res = scan_segment(kFig4, {}, IndexMode::SelfPosition, 1, 4, {}, cfg);
    CHECK(res.value == 4.0f);
    CHECK(res.index == 3);
}

TEST_CASE("scan_segment leaves the running minimum untouched on an empty range") {
    auto cfg = make_cfg(ScanStrategy::LaneGroup, 2, 4, 4);
    QueryStats stats;
    RunningMin running{0.5f, 7};
    auto res = scan_segment(kFig4, {}, IndexMode::SelfPosition, 3, 3, running, cfg, 0, {}, &stats);
    CHECK(res.value == 0.5f);
    CHECK(res.index == 7);
    CHECK(stats.entries_scanned == 0);
    CHECK(stats.lane_steps == 0);
}

TEST_CASE("scan_segment rejects out-of-bounds hi") {
    auto cfg = make_cfg(ScanStrategy::LaneGroup, 2, 4, 4);
    CHECK_THROWS_AS(scan_segment(kFig4, {}, IndexMode::SelfPosition, 0, 7, {}, cfg), RangeError);
}

TEST_CASE("group size trades lane steps against idle lanes on a 6-entry range") {
    // chunk of 8 with entries 2..7 qualifying
    auto chunk = random_array(8, 17);

    QueryStats wide, narrow;
    auto cfg8 = make_cfg(ScanStrategy::LaneGroup, 8, 16, 8);
    auto cfg4 = make_cfg(ScanStrategy::LaneGroup, 8, 16, 4);
    auto res8 = scan_segment(chunk, {}, IndexMode::SelfPosition, 2, 8, {}, cfg8, 0, {}, &wide);
    auto res4 = scan_segment(chunk, {}, IndexMode::SelfPosition, 2, 8, {}, cfg4, 0, {}, &narrow);

    CHECK(res8.value == res4.value);
    CHECK(res8.index == res4.index);
    CHECK(wide.lane_steps == 1);
    CHECK(narrow.lane_steps == 2);
    CHECK(wide.idle_lanes == 2);
    CHECK(narrow.idle_lanes == 2);
    CHECK(wide.entries_scanned == 6);
    CHECK(narrow.entries_scanned == 6);
}

TEST_CASE("VectorBlock skips blocks with no qualifying entries") {
    auto chunk = random_array(8, 23);
    auto cfg = make_cfg(ScanStrategy::VectorBlock, 8, 8, 4);
    QueryStats stats;
    // entries 5..7 qualify; the first 4-block holds none of them
    auto res = scan_segment(chunk, {}, IndexMode::SelfPosition, 5, 8, {}, cfg, 0, {}, &stats);
    CHECK(res.value == full_scan_rmq(chunk, 5, 7).value);
    CHECK(stats.lane_steps == 1);
    CHECK(stats.idle_lanes == 1);
    CHECK(stats.scan_transactions == 1);
}

TEST_CASE("rmq answers the running example") {
    auto h = MinHierarchy::build(kFig4, make_cfg(ScanStrategy::LaneGroup, 2, 2, 2));
    auto res = rmq(h, {0, 5});
    CHECK(res.value == 1.0f);
    CHECK(res.index == 4);

    CHECK(rmq_value(h, {1, 3}) == 4.0f);
    CHECK(rmq_index(h, {1, 3}) == 3);

    for (Position k = 0; k < 6; ++k) {
        auto single = rmq(h, {k, k});
        CHECK(single.value == kFig4[k]);
        CHECK(single.index == k);
    }
}

TEST_CASE("rmq validates query bounds") {
    auto h = MinHierarchy::build(kFig4, make_cfg(ScanStrategy::LaneGroup, 2, 2, 2));
    CHECK_THROWS_AS(rmq(h, {0, 6}), RangeError);
    CHECK_THROWS_AS(rmq(h, {4, 2}), RangeError);
}

TEST_CASE("traversal follows the chunk-boundary arithmetic") {
    // n = 16, c = 2, t = 2: levels of 8, 4, 2. Query (3, 14) scans one entry
    // left and one right on level 0, ascends to (2, 7), scans one entry on
    // level 1, ascends to (1, 3), and finishes with two entries on level 2.
    auto x = random_array(16, 31);
    auto h = MinHierarchy::build(x, make_cfg(ScanStrategy::LaneGroup, 2, 2, 1));
    REQUIRE(h.layout().level_sizes == std::vector<std::uint64_t>{8, 4, 2});

    QueryStats stats;
    auto res = rmq(h, {3, 14}, &stats);
    auto expect = full_scan_rmq(x, 3, 14);
    CHECK(res.value == expect.value);
    CHECK(res.index == expect.index);
    CHECK(stats.levels_touched == 3);
    CHECK(stats.entries_scanned == 5);
}

TEST_CASE("rmq_index on constant arrays returns the left border") {
    std::vector<float> flat(512, 2.5f);
    auto h = MinHierarchy::build(flat, make_cfg(ScanStrategy::VectorBlock, 8, 8, 4));
    std::mt19937_64 rng(5);
    for (int round = 0; round < 64; ++round) {
        Position l = rng() % 512;
        Position r = l + rng() % (512 - l);
        CHECK(rmq_index(h, {l, r}) == l);
    }
}

TEST_CASE("rmq_index requires a tracked hierarchy") {
    auto h = MinHierarchy::build(kFig4, make_cfg(ScanStrategy::LaneGroup, 2, 4, 2, false));
    CHECK(rmq_value(h, {0, 5}) == 1.0f);
    CHECK_THROWS_AS(rmq_index(h, {0, 5}), StateError);
}

TEST_CASE("full-range queries return the global minimum") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto x = random_array(1 + seed * 97, seed);
        auto h = MinHierarchy::build(x, HierarchyConfig::defaults_for(x.size()));
        auto expect = full_scan_rmq(x, 0, x.size() - 1);
        CHECK(rmq_value(h, {0, x.size() - 1}) == expect.value);
        CHECK(rmq_index(h, {0, x.size() - 1}) == expect.index);
    }
}

TEST_CASE("batch scheduling strategies agree element-wise") {
    auto x = random_array(4096, 77);
    auto h = MinHierarchy::build(x, make_cfg(ScanStrategy::LaneGroup, 32, 64, 16));

    std::mt19937_64 rng(78);
    QueryBatch batch;
    for (int j = 0; j < 1024; ++j) {
        Position l = rng() % 4096;
        Position r = l + rng() % (4096 - l);
        batch.queries.push_back({l, r});
    }

    auto multi = execute_batch(h, batch, Scheduling::MultiLoad, 1);
    auto wlq = execute_batch(h, batch, Scheduling::WarpLocalQueue, 4);
    REQUIRE(multi.results.size() == wlq.results.size());
    for (std::size_t j = 0; j < multi.results.size(); ++j) {
        CHECK(std::bit_cast<std::uint32_t>(multi.results[j].value) ==
              std::bit_cast<std::uint32_t>(wlq.results[j].value));
        CHECK(multi.results[j].index == wlq.results[j].index);
    }

    CHECK(multi.stats.bound_load_transactions == 1024);
    CHECK(wlq.stats.bound_load_transactions == 64);

    // both agree with the full-scan oracle
    for (std::size_t j = 0; j < batch.size(); ++j) {
        auto expect = full_scan_rmq(x, batch.queries[j].l, batch.queries[j].r);
        CHECK(multi.results[j].value == expect.value);
        CHECK(multi.results[j].index == expect.index);
    }
}

TEST_CASE("batch errors carry the offending query index") {
    auto x = random_array(64, 1);
    auto h = MinHierarchy::build(x, HierarchyConfig::defaults_for(64));
    QueryBatch batch;
    batch.queries = {{0, 5}, {3, 2}, {1, 1}};
    CHECK_THROWS_WITH_AS(execute_batch(h, batch, Scheduling::MultiLoad),
                         "query 1: inverted range", RangeError);
}

TEST_CASE("scan strategies return identical results with different stats") {
    auto x = random_array(2048, 13);
    auto vb = MinHierarchy::build(x, make_cfg(ScanStrategy::VectorBlock, 8, 8, 4));
    auto lg = MinHierarchy::build(x, make_cfg(ScanStrategy::LaneGroup, 8, 16, 8));

    std::mt19937_64 rng(14);
    for (int round = 0; round < 512; ++round) {
        Position l = rng() % 2048;
        Position r = l + rng() % (2048 - l);
        auto a = rmq(vb, {l, r});
        auto b = rmq(lg, {l, r});
        auto expect = full_scan_rmq(x, l, r);
        CHECK(a.value == expect.value);
        CHECK(a.index == expect.index);
        CHECK(b.value == expect.value);
        CHECK(b.index == expect.index);
    }
}

TEST_CASE("alignment origin never changes the minimum") {
    auto x = random_array(1024, 3);
    for (std::uint32_t g : {1u, 2u, 4u, 8u, 16u, 32u}) {
        auto h = MinHierarchy::build(x, make_cfg(ScanStrategy::LaneGroup, 8, 16, g));
        auto res = rmq(h, {37, 911});
        auto expect = full_scan_rmq(x, 37, 911);
        CHECK(res.value == expect.value);
        CHECK(res.index == expect.index);
    }
}

TEST_CASE("entries scanned stay within the bound and levels ascend monotonically") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t n = 1 + rng() % 4096;
        auto x = random_array(n, rng());
        const std::uint32_t c = std::uint32_t{4} << (rng() % 3);
        auto cfg = make_cfg(ScanStrategy::LaneGroup, c, 2 * c, 8);
        auto h = MinHierarchy::build(x, cfg);
        const std::uint64_t bound = scan_bound(n, cfg);
        for (int q = 0; q < 100; ++q) {
            Position l = rng() % n;
            Position r = l + rng() % (n - l);
            QueryStats stats;
            rmq(h, {l, r}, &stats);
            CHECK(stats.entries_scanned <= bound);
            CHECK(stats.levels_touched <= h.layout().num_levels());
        }
    }
}
