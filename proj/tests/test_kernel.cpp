#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ipc/kernel.hpp"
#include "ipc/pointset.hpp"
#include "ipc/rng.hpp"

using namespace ipc;

namespace {

PointSet frozen_instance() {
    return PointSet::from_points({{0.2, 0.5}, {0.7, 0.8}, {1.3, 0.9}}, {0, 2}, 1.0);
}

} // namespace

TEST_CASE("hand-checked invasion on the frozen instance") {
    PointSet ps = frozen_instance();
    IpcTree tree = run_ipc_sequential(ps);
    // step 1: lowest point with x < 1 is (0.2, 0.5)
    CHECK(tree.parent_of(1) == 0);
    CHECK(tree.weight_of(1) == doctest::Approx(0.5));
    CHECK(tree.claimed_x_of(1) == doctest::Approx(0.2));
    // step 2: lowest unclaimed with x < 2 is (0.7, 0.8)
    CHECK(tree.parent_of(2) == 0);
    CHECK(tree.weight_of(2) == doctest::Approx(0.8));
    CHECK(tree.claimed_x_of(2) == doctest::Approx(0.7));
}

TEST_CASE("hand-checked boxes on the frozen instance") {
    PointSet ps = frozen_instance();
    std::vector<Box> boxes = compute_boxes(ps);
    REQUIRE(boxes.size() == 2);
    CHECK(boxes[0].left == 0);
    CHECK(boxes[0].height == doctest::Approx(0.5));
    CHECK(boxes[1].left == 0);
    CHECK(boxes[1].height == doctest::Approx(0.8));

    IpcTree tree = run_ipc_sequential(ps);
    std::vector<Box> fast = boxes_from_tree(tree);
    REQUIRE(fast.size() == 2);
    CHECK(fast[0].left == boxes[0].left);
    CHECK(fast[0].height == doctest::Approx(boxes[0].height));
    CHECK(fast[1].left == boxes[1].left);
    CHECK(fast[1].height == doctest::Approx(boxes[1].height));
}

TEST_CASE("sequential equals brute force on random windows") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GeneratorSpec spec{GeneratorKind::PoissonUnitRate, seed, 0.0};
        PointSet ps = PointSet::generate(spec, {0, 20}, 4.0);
        IpcTree a, b;
        bool ea = false, eb = false;
        try {
            a = run_ipc_sequential(ps);
        } catch (const ExhaustionError&) {
            ea = true;
        }
        try {
            b = brute_force_oracle(ps);
        } catch (const ExhaustionError&) {
            eb = true;
        }
        REQUIRE(ea == eb);
        if (ea) continue;
        for (std::int64_t n = 1; n <= 20; ++n) {
            CHECK(a.parent_of(n) == b.parent_of(n));
            CHECK(a.weight_of(n) == b.weight_of(n));
            CHECK(a.claimed_x_of(n) == b.claimed_x_of(n));
        }
    }
}

TEST_CASE("box recurrence matches the definitional scan") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        GeneratorSpec spec{GeneratorKind::PoissonUnitRate, seed, 0.0};
        PointSet ps = PointSet::generate(spec, {0, 25}, 5.0);
        IpcTree tree;
        try {
            tree = run_ipc_sequential(ps);
        } catch (const ExhaustionError&) {
            continue;
        }
        std::vector<Box> def = compute_boxes(ps);
        std::vector<Box> fast = boxes_from_tree(tree);
        REQUIRE(def.size() == fast.size());
        for (std::size_t i = 0; i < def.size(); ++i) {
            CHECK(def[i].left == fast[i].left);
            CHECK(def[i].height == fast[i].height);
            // the top point of box n is the claimed point of n
            std::int64_t n = static_cast<std::int64_t>(i) + 1;
            CHECK(tree.weight_of(n) == def[i].height);
            CHECK(tree.claimed_x_of(n) >= static_cast<double>(def[i].left));
            CHECK(tree.claimed_x_of(n) < static_cast<double>(n));
        }
    }
}

TEST_CASE("exhaustion reports the starving vertex") {
    PointSet empty = PointSet::from_points({}, {0, 3}, 1.0);
    CHECK_THROWS_AS(run_ipc_sequential(empty), ExhaustionError);
    try {
        run_ipc_sequential(empty);
    } catch (const ExhaustionError& e) {
        CHECK(e.vertex == 1);
    }
}

TEST_CASE("window conditions on the frozen instance") {
    PointSet ps = frozen_instance();
    EfgResult r = evaluate_EFG(ps, 2, 2, 0.8);
    CHECK(r.e);
    CHECK(r.f);
    // nothing to the left of the window: vacuous truth
    CHECK(r.g);
    CHECK(r.g_minus);
    EfgResult r2 = evaluate_EFG(ps, 2, 2, 0.4);
    CHECK_FALSE(r2.e);
}

TEST_CASE("incremental run agrees with the one-shot kernel") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 777, 0.0};
    InvasionRun run(spec, 0, 1.5);
    while (run.last_vertex() < 30) run.step();
    PointSet ps = PointSet::generate(spec, {0, 30}, run.cap());
    IpcTree tree = brute_force_oracle(ps);
    std::vector<Box> boxes = boxes_from_tree(tree);
    for (std::int64_t n = 1; n <= 30; ++n) {
        CHECK(run.parent_of(n) == tree.parent_of(n));
        CHECK(run.weight_of(n) == tree.weight_of(n));
        CHECK(run.claimed_x_of(n) == tree.claimed_x_of(n));
        CHECK(run.box_left_of(n) == boxes[static_cast<std::size_t>(n - 1)].left);
    }
}

TEST_CASE("tree serialization round trips") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 5, 0.0};
    PointSet ps = PointSet::generate(spec, {0, 15}, 4.0);
    IpcTree tree = run_ipc_sequential(ps);
    auto tmp = std::filesystem::temp_directory_path();
    std::string jpath = (tmp / "tree_roundtrip.json").string();
    save_tree_json(tree, jpath);
    IpcTree back = load_tree_json(jpath);
    CHECK(back.interval.lo == tree.interval.lo);
    CHECK(back.interval.hi == tree.interval.hi);
    for (std::int64_t n = 1; n <= 15; ++n) {
        CHECK(back.parent_of(n) == tree.parent_of(n));
        CHECK(back.weight_of(n) == tree.weight_of(n));
    }
    std::string epath = (tmp / "tree_roundtrip.edges").string();
    save_tree_edgelist(tree, epath);
    std::ifstream f(epath);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(f, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 15);
    std::remove(jpath.c_str());
    std::remove(epath.c_str());
}
