#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ipc/stationary.hpp"

using namespace ipc;

TEST_CASE("window run basics") {
    WindowRun run = run_window(1, -10, 10);
    CHECK(run.window.lo == -10);
    CHECK(run.window.hi == 10);
    for (std::int64_t n = -9; n <= 10; ++n) {
        CHECK(run.tree.parent_of(n) >= -10);
        CHECK(run.tree.parent_of(n) < n);
        CHECK(run.box_of(n).height == run.tree.weight_of(n));
        CHECK(run.box_of(n).left >= -10);
        CHECK(run.box_of(n).left < n);
    }
}

TEST_CASE("constant harvests certify after the required streak") {
    StabilizeOptions opt;
    opt.seed = 2;
    opt.target = {0, 0};
    HarvestStabilization hs = stabilize_harvest(opt, [](const WindowRun&) { return "x"; });
    CHECK(hs.certified);
    CHECK(hs.doublings_used == opt.consecutive - 1);
    CHECK(hs.harvest == "x");

    StabilizeOptions two = opt;
    two.consecutive = 2;
    HarvestStabilization hs2 = stabilize_harvest(two, [](const WindowRun&) { return "x"; });
    CHECK(hs2.certified);
    CHECK(hs2.doublings_used == 1);

    HarvestStabilization never =
        stabilize_harvest(opt, [](const WindowRun&) { return std::string{}; });
    CHECK_FALSE(never.certified);
}

TEST_CASE("stabilization is window-independent") {
    int agreements = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        StabilizeOptions a;
        a.seed = seed;
        a.target = {0, 0};
        a.max_doublings = 14;
        StabilizedWindow sa = stabilize(a);

        StabilizeOptions b = a;
        b.target = {-2, 2};
        b.initial_margin_factor = 16;
        StabilizedWindow sb = stabilize(b);

        if (!sa.certified || !sb.certified) continue;
        ++agreements;
        CHECK(sa.run.tree.parent_of(0) == sb.run.tree.parent_of(0));
        CHECK(sa.run.tree.weight_of(0) == sb.run.tree.weight_of(0));
        CHECK(sa.run.box_of(0).left == sb.run.box_of(0).left);
        CHECK(sa.run.box_of(0).height == sb.run.box_of(0).height);
    }
    CHECK(agreements >= 8);
}

TEST_CASE("certified weights sit below one") {
    int certified = 0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        StabilizeOptions opt;
        opt.seed = seed;
        opt.target = {-1, 1};
        opt.max_doublings = 14;
        StabilizedWindow s = stabilize(opt);
        if (!s.certified) continue;
        ++certified;
        CHECK(s.weights_below_one);
    }
    CHECK(certified >= 7);
}

TEST_CASE("backward trace climbs the record ladder") {
    int nonempty = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        WindowRun run = run_window(seed, -20000, 0);
        auto trace = backward_trace(run, 0, 0.35);
        if (trace.empty()) continue;
        ++nonempty;
        CHECK(trace.front().first == 0);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            CHECK(trace[i].first < trace[i - 1].first);
            CHECK(trace[i].second > trace[i - 1].second);
        }
        for (std::size_t i = 0; i + 1 < trace.size(); ++i) CHECK(trace[i].second <= 0.35);
        CHECK(trace.back().second > 0.35);
    }
    CHECK(nonempty >= 8);
}

TEST_CASE("tree neighborhoods are symmetric") {
    WindowRun run = run_window(3, -60, 60);
    NeighborFn nb = ipc_neighbors(run);
    for (std::int64_t v = -40; v <= 40; ++v) {
        for (std::int64_t u : nb(v)) {
            if (u == run.window.lo) continue;
            auto back = nb(u);
            CHECK(std::find(back.begin(), back.end(), v) != back.end());
        }
    }
    CHECK_THROWS_AS(nb(run.window.lo), Error);
}

TEST_CASE("restricted neighborhoods stay non-positive") {
    WindowRun run = run_window(4, -60, 60);
    NeighborFn nb = ipcminus_neighbors(run);
    CHECK_THROWS_AS(nb(1), Error);
    for (std::int64_t v = -40; v <= 0; ++v) {
        auto out = nb(v);
        // the final entry is the parent; everything else is a retained child
        REQUIRE(!out.empty());
        CHECK(out.back() == run.tree.parent_of(v));
        for (std::size_t i = 0; i + 1 < out.size(); ++i) CHECK(out[i] <= 0);
    }
}

TEST_CASE("forest neighborhoods follow the enclosing-box relation") {
    WindowRun run = run_window(5, -200, 200);
    NeighborFn nb = boxes_neighbors(run);
    BoxForest forest = build_box_forest(run.boxes, run.window);
    int checked = 0;
    for (std::int64_t v = -50; v <= 50; ++v) {
        std::vector<std::int64_t> out;
        try {
            out = nb(v);
        } catch (const Error&) {
            continue;  // undetermined near the window edge
        }
        ++checked;
        REQUIRE(!out.empty());
        CHECK(out.back() == forest.next_of(v));
        for (std::size_t i = 0; i + 1 < out.size(); ++i) CHECK(forest.next_of(out[i]) == v);
    }
    CHECK(checked >= 50);
}

TEST_CASE("census shapes report failure as empty strings") {
    WindowRun run = run_window(6, -60, 60);
    NeighborFn nb = ipc_neighbors(run);
    CHECK(!neighborhood_census_shape(nb, 0, 2).empty());
    // a ball hugging the window edge cannot be resolved
    CHECK(neighborhood_census_shape(nb, -59, 80).empty());
}
