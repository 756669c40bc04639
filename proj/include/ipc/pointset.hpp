#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipc/rng.hpp"

namespace ipc {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Contiguous integer interval [lo, hi], both ends included. Vertices of the
// invasion process are the integers of the interval; column n holds points
// with x in [n, n+1).
struct IntervalSpec {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    std::int64_t width() const { return hi - lo + 1; }
    bool contains(std::int64_t n) const { return n >= lo && n <= hi; }
};

enum class GeneratorKind {
    PoissonUnitRate,  // unit-rate Poisson process on [lo, hi+1) x [0, cap]
    RegularTree,      // sigma points per column, uniform in [0, sigma)
    CompleteGraph,    // sigma - n points in column n, uniform in [0, sigma)
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::PoissonUnitRate;
    std::uint64_t seed = 0;
    double sigma = 0.0;  // used by RegularTree / CompleteGraph
};

// Verdict for one of the almost-sure conditions checked on a finite window.
struct ConditionReport {
    int id = 0;  // 1..8
    enum class Verdict { HoldsOnWindow, Violated, UndecidableOnWindow } verdict;
    std::string detail;
};

// A finite realization of a half-plane point process, materialized per column.
// Extending the interval to the left or raising the height cap refines the
// realization: previously visible points are unchanged.
class PointSet {
public:
    PointSet() = default;

    static PointSet generate(const GeneratorSpec& spec, IntervalSpec interval, double cap);

    // Reveal more columns on the left (new_lo <= lo). Pure refinement.
    PointSet extend_left(std::int64_t new_lo) const;

    // Reveal points with y in (cap, new_cap]. Pure refinement.
    PointSet raise_cap(double new_cap) const;

    IntervalSpec interval() const { return interval_; }
    double cap() const { return cap_; }
    bool generated() const { return generated_; }
    const GeneratorSpec& spec() const { return spec_; }

    // Points of column n (x in [n, n+1)), sorted by y.
    const std::vector<Point>& column(std::int64_t n) const;

    std::size_t total_points() const;
    std::vector<Point> all_points() const;

    // count of points with x in [x_lo, x_hi) and y <= y_hi
    std::int64_t count_below(double x_lo, double x_hi, double y_hi) const;
    // same with strict inequality y < y_hi
    std::int64_t count_strictly_below(double x_lo, double x_hi, double y_hi) const;

    std::vector<ConditionReport> check_conditions() const;

    static PointSet load(const std::string& path);
    void save(const std::string& path) const;

    // Build directly from given points (file-backed or test fixtures).
    static PointSet from_points(std::vector<Point> points, IntervalSpec interval, double cap);

private:
    void index_of(std::int64_t n, std::size_t& out) const;
    void reject_duplicate_heights() const;

    IntervalSpec interval_{};
    double cap_ = 0.0;
    bool generated_ = false;  // false for file-backed / fixture sets
    GeneratorSpec spec_{};
    // columns_[i] holds column interval_.lo + i
    std::vector<std::vector<Point>> columns_;
};

// Generate one column of a realization without materializing a PointSet.
// Same substream scheme as PointSet::generate, so a PointSet over any window
// agrees with these columns. y_cap may be raised later via column_layer.
std::vector<Point> generate_column(const GeneratorSpec& spec, std::int64_t n, double cap);

// Points of column n with y in (cap_lo, cap_hi]; generator kind PoissonUnitRate.
std::vector<Point> poisson_column_slice(std::uint64_t seed, std::int64_t n,
                                        double cap_lo, double cap_hi);

} // namespace ipc
