#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ipc/pointset.hpp"

using namespace ipc;

namespace {

PointSet frozen_instance() {
    // three points, two vertices to attach; used throughout the tests as a
    // hand-checked fixture
    return PointSet::from_points({{0.2, 0.5}, {0.7, 0.8}, {1.3, 0.9}}, {0, 2}, 1.0);
}

} // namespace

TEST_CASE("from_points fixture basics") {
    PointSet ps = frozen_instance();
    CHECK(ps.interval().lo == 0);
    CHECK(ps.interval().hi == 2);
    CHECK(ps.total_points() == 3);
    CHECK(ps.column(0).size() == 2);
    CHECK(ps.column(1).size() == 1);
    CHECK(ps.column(2).empty());
    // columns sorted by height
    CHECK(ps.column(0)[0].y == doctest::Approx(0.5));
    CHECK(ps.column(0)[1].y == doctest::Approx(0.8));
}

TEST_CASE("counting operators") {
    PointSet ps = frozen_instance();
    CHECK(ps.count_below(0.0, 2.0, 0.8) == 2);
    CHECK(ps.count_strictly_below(0.0, 2.0, 0.8) == 1);
    CHECK(ps.count_below(1.0, 2.0, 1.0) == 1);
    CHECK(ps.count_below(0.0, 0.5, 1.0) == 1);
    CHECK(ps.count_below(0.0, 2.0, 0.1) == 0);
}

TEST_CASE("duplicate heights are rejected") {
    CHECK_THROWS_AS(PointSet::from_points({{0.2, 0.5}, {1.1, 0.5}}, {0, 2}, 1.0), Error);
}

TEST_CASE("poisson generation is deterministic") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 42, 0.0};
    PointSet a = PointSet::generate(spec, {-5, 5}, 2.0);
    PointSet b = PointSet::generate(spec, {-5, 5}, 2.0);
    REQUIRE(a.total_points() == b.total_points());
    for (std::int64_t n = -5; n <= 5; ++n) {
        const auto& ca = a.column(n);
        const auto& cb = b.column(n);
        REQUIRE(ca.size() == cb.size());
        for (std::size_t i = 0; i < ca.size(); ++i) {
            CHECK(ca[i].x == cb[i].x);
            CHECK(ca[i].y == cb[i].y);
        }
    }
}

TEST_CASE("left extension is a pure refinement") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 7, 0.0};
    PointSet small = PointSet::generate(spec, {0, 6}, 2.0);
    PointSet wide = PointSet::generate(spec, {-10, 6}, 2.0);
    for (std::int64_t n = 0; n <= 6; ++n) {
        const auto& cs = small.column(n);
        const auto& cw = wide.column(n);
        REQUIRE(cs.size() == cw.size());
        for (std::size_t i = 0; i < cs.size(); ++i) {
            CHECK(cs[i].x == cw[i].x);
            CHECK(cs[i].y == cw[i].y);
        }
    }
    PointSet ext = small.extend_left(-10);
    for (std::int64_t n = -10; n <= 6; ++n)
        CHECK(ext.column(n).size() == wide.column(n).size());
}

TEST_CASE("cap raising is a pure refinement") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 11, 0.0};
    PointSet low = PointSet::generate(spec, {0, 8}, 1.0);
    PointSet high = PointSet::generate(spec, {0, 8}, 3.0);
    for (std::int64_t n = 0; n <= 8; ++n) {
        const auto& cl = low.column(n);
        const auto& ch = high.column(n);
        // every low point appears unchanged in the high realization
        std::size_t j = 0;
        for (const Point& p : cl) {
            while (j < ch.size() && ch[j].y < p.y) ++j;
            REQUIRE(j < ch.size());
            CHECK(ch[j].x == p.x);
            CHECK(ch[j].y == p.y);
        }
    }
    PointSet raised = low.raise_cap(3.0);
    for (std::int64_t n = 0; n <= 8; ++n)
        CHECK(raised.column(n).size() == high.column(n).size());
}

TEST_CASE("generate_column matches PointSet::generate") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 99, 0.0};
    PointSet ps = PointSet::generate(spec, {-3, 3}, 2.5);
    for (std::int64_t n = -3; n <= 3; ++n) {
        auto col = generate_column(spec, n, 2.5);
        const auto& ref = ps.column(n);
        REQUIRE(col.size() == ref.size());
        for (std::size_t i = 0; i < col.size(); ++i) {
            CHECK(col[i].x == ref[i].x);
            CHECK(col[i].y == ref[i].y);
        }
    }
}

TEST_CASE("poisson_column_slice partitions the column") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 123, 0.0};
    auto full = generate_column(spec, 4, 3.0);
    auto lowc = generate_column(spec, 4, 1.2);
    auto slice = poisson_column_slice(123, 4, 1.2, 3.0);
    CHECK(lowc.size() + slice.size() == full.size());
    for (const Point& p : slice) {
        CHECK(p.y > 1.2);
        CHECK(p.y <= 3.0);
    }
}

TEST_CASE("regular-tree and complete-graph generators") {
    GeneratorSpec tree_spec{GeneratorKind::RegularTree, 5, 16.0};
    PointSet tree_ps = PointSet::generate(tree_spec, {0, 4}, 16.0);
    for (std::int64_t n = 0; n <= 4; ++n) CHECK(tree_ps.column(n).size() == 16);

    GeneratorSpec complete_spec{GeneratorKind::CompleteGraph, 5, 16.0};
    PointSet complete_ps = PointSet::generate(complete_spec, {0, 4}, 16.0);
    for (std::int64_t n = 0; n <= 4; ++n)
        CHECK(complete_ps.column(n).size() == static_cast<std::size_t>(16 - n));
}

TEST_CASE("save and load round trip") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 31, 0.0};
    PointSet ps = PointSet::generate(spec, {-2, 4}, 2.0);
    std::string path = (std::filesystem::temp_directory_path() / "ps_roundtrip.txt").string();
    ps.save(path);
    PointSet back = PointSet::load(path);
    CHECK(back.interval().lo == ps.interval().lo);
    CHECK(back.interval().hi == ps.interval().hi);
    REQUIRE(back.total_points() == ps.total_points());
    for (std::int64_t n = -2; n <= 4; ++n) {
        const auto& ca = ps.column(n);
        const auto& cb = back.column(n);
        REQUIRE(ca.size() == cb.size());
        for (std::size_t i = 0; i < ca.size(); ++i) {
            CHECK(cb[i].x == doctest::Approx(ca[i].x).epsilon(1e-15));
            CHECK(cb[i].y == doctest::Approx(ca[i].y).epsilon(1e-15));
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("condition reports cover ids 1..8") {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, 77, 0.0};
    PointSet ps = PointSet::generate(spec, {-20, 20}, 3.0);
    auto reports = ps.check_conditions();
    REQUIRE(reports.size() == 8);
    for (std::size_t i = 0; i < reports.size(); ++i)
        CHECK(reports[i].id == static_cast<int>(i) + 1);
    // a generated Poisson window never proves a violation of conditions 1/3
    CHECK(reports[0].verdict != ConditionReport::Verdict::Violated);
    CHECK(reports[2].verdict != ConditionReport::Verdict::Violated);
}
