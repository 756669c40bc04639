#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ipc/boxforest.hpp"
#include "ipc/kernel.hpp"
#include "ipc/pointset.hpp"

using namespace ipc;

TEST_CASE("forest on the frozen fixture") {
    std::vector<Box> boxes{{0, 0.5}, {0, 0.8}};
    IntervalSpec iv{0, 2};
    BoxForest forest = build_box_forest(boxes, iv);
    CHECK(forest.next_of(1) == 2);
    CHECK(forest.next_of(2) == kUndetermined);
    CHECK(box_forest_parent_oracle(boxes, iv, 1) == 2);
    CHECK(box_forest_parent_oracle(boxes, iv, 2) == kUndetermined);
}

TEST_CASE("monotone stack matches the containment oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GeneratorSpec spec{GeneratorKind::PoissonUnitRate, seed, 0.0};
        PointSet ps = PointSet::generate(spec, {0, 40}, 4.0);
        IpcTree tree;
        try {
            tree = run_ipc_sequential(ps);
        } catch (const ExhaustionError&) {
            continue;
        }
        std::vector<Box> boxes = boxes_from_tree(tree);
        BoxForest forest = build_box_forest(boxes, tree.interval);
        for (std::int64_t n = 1; n <= 40; ++n) {
            std::int64_t a = forest.next_of(n);
            CHECK(a == box_forest_parent_oracle(boxes, tree.interval, n));
            if (a != kUndetermined) CHECK(a > n);
        }
    }
}

TEST_CASE("pond decomposition invariants") {
    int certified_seen = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GeneratorSpec spec{GeneratorKind::PoissonUnitRate, seed, 0.0};
        PointSet ps = PointSet::generate(spec, {0, 400}, 8.0);
        IpcTree tree;
        try {
            tree = run_ipc_sequential(ps);
        } catch (const ExhaustionError&) {
            continue;
        }
        auto ponds = decompose_ponds(ps, tree, 50);
        std::int64_t prev_end = 0;
        double prev_h = std::numeric_limits<double>::infinity();
        for (const PondRecord& pond : ponds) {
            CHECK(pond.start == prev_end);
            CHECK(pond.start_height == prev_h);
            CHECK(pond.outlet > pond.start);
            CHECK(pond.size == pond.outlet - pond.start);
            CHECK(pond.height < pond.start_height);
            if (pond.certified) {
                ++certified_seen;
                CHECK(pond.height > 1.0);
                CHECK(pond.path_len >= 1);
                CHECK(static_cast<std::int64_t>(pond.hang_sizes.size()) == pond.path_len);
                std::int64_t total = std::accumulate(pond.hang_sizes.begin(),
                                                     pond.hang_sizes.end(), std::int64_t{0});
                CHECK(total == pond.size);
                for (std::int64_t h : pond.hang_sizes) CHECK(h >= 1);
            }
            prev_end = pond.outlet;
            prev_h = pond.height;
        }
    }
    CHECK(certified_seen > 0);
}

TEST_CASE("adaptive harvest agrees with the fixed-window decomposition") {
    HarvestOptions opt;
    opt.seed = 12345;
    opt.stop_below = 1.0;
    opt.min_outlets = 2;
    opt.horizon = 50;
    opt.max_width = 50000;
    HarvestResult res = harvest_ponds(opt);
    REQUIRE(res.complete);
    REQUIRE(res.width > 0);

    // rebuild the same realization as a fixed window and compare the chains
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, opt.seed, 0.0};
    InvasionRun run(spec, 0, 1.0, opt.max_cap);
    while (run.last_vertex() < res.width) run.step();
    PointSet ps = PointSet::generate(spec, {0, res.width}, run.cap());
    IpcTree tree = run_ipc_sequential(ps);
    auto ref = decompose_ponds(ps, tree, opt.horizon);
    REQUIRE(ref.size() == res.ponds.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(ref[i].start == res.ponds[i].start);
        CHECK(ref[i].outlet == res.ponds[i].outlet);
        CHECK(ref[i].height == doctest::Approx(res.ponds[i].height).epsilon(1e-12));
        CHECK(ref[i].certified == res.ponds[i].certified);
    }

    // certified prefix, then the forward-max record is non-increasing
    std::vector<double> fmax = forward_max_process(res.ponds);
    std::int64_t backbone_edges = 0;
    for (const PondRecord& pond : res.ponds) {
        if (!pond.certified || pond.path_len < 0) break;
        backbone_edges += pond.path_len;
    }
    CHECK(static_cast<std::int64_t>(fmax.size()) == backbone_edges);
    for (std::size_t i = 1; i < fmax.size(); ++i) CHECK(fmax[i] <= fmax[i - 1]);
    CHECK(fmax.size() >= 2);
}

TEST_CASE("harvest respects the width budget") {
    HarvestOptions opt;
    opt.seed = 9;
    opt.stop_below = 1.0;
    opt.min_outlets = 1;
    opt.horizon = 100;
    opt.max_width = 60;  // shorter than the lookahead: nothing can certify
    HarvestResult res = harvest_ponds(opt);
    CHECK_FALSE(res.complete);
    CHECK(res.width >= 60);
}
