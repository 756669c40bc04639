#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "ipc/pointset.hpp"

namespace ipc {

// Invasion tree over the integer interval [lo, hi]. Vertex lo is the root;
// every other vertex n has parent(n) < n and an edge weight equal to the
// height of the point claimed when n was attached.
struct IpcTree {
    IntervalSpec interval{};
    // indexed by n - lo; entry 0 is the root and unused
    std::vector<std::int64_t> parent;
    std::vector<double> weight;
    std::vector<double> claimed_x;  // x-coordinate of the claimed point

    std::int64_t parent_of(std::int64_t n) const {
        return parent[static_cast<std::size_t>(n - interval.lo)];
    }
    double weight_of(std::int64_t n) const {
        return weight[static_cast<std::size_t>(n - interval.lo)];
    }
    double claimed_x_of(std::int64_t n) const {
        return claimed_x[static_cast<std::size_t>(n - interval.lo)];
    }
};

struct ExhaustionError : Error {
    ExhaustionError(std::int64_t vertex, double cap)
        : Error("no unclaimed point available for vertex " + std::to_string(vertex) +
                " at cap " + std::to_string(cap)),
          vertex(vertex), cap(cap) {}
    std::int64_t vertex;
    double cap;
};

// Run the sequential invasion over the point set's interval. Throws
// ExhaustionError if the realization (at its cap) runs out of candidates.
IpcTree run_ipc_sequential(const PointSet& ps);

// Reference implementation: repeated full scans, no data structures.
IpcTree brute_force_oracle(const PointSet& ps);

// Box of a vertex: x-range [left, n), height range [0, height].
struct Box {
    std::int64_t left = 0;
    double height = 0.0;
};

// Boxes computed straight from the definition (quadratic scan). boxes[n - lo - 1]
// belongs to vertex n, for n in (lo, hi]. Throws if some box is not realized
// below the cap.
std::vector<Box> compute_boxes(const PointSet& ps);

// Boxes recovered from the invasion tree: the box height of n equals the
// weight of n, and the left edge follows the nesting recurrence. O(width).
std::vector<Box> boxes_from_tree(const IpcTree& tree);

struct EfgResult {
    bool e = false;
    bool f = false;
    bool g = false;
    bool g_minus = false;
};

// Window conditions characterizing the event that vertex k has box
// [k - n, k) x [0, y].
EfgResult evaluate_EFG(const PointSet& ps, std::int64_t k, std::int64_t n, double y);

// Incremental sequential run with on-demand cap raising, used by the drivers
// that grow windows adaptively. Columns come from the generator substreams,
// so two runs over nested windows agree on the shared part.
class InvasionRun {
public:
    // keep_columns = false skips materializing opened columns (column() is
    // then unavailable); large windows become much cheaper in memory.
    InvasionRun(const GeneratorSpec& spec, std::int64_t lo, double initial_cap,
                double max_cap = 1024.0, bool keep_columns = true);

    // Attach the next vertex; returns its index. Raises the cap as needed.
    std::int64_t step();

    std::int64_t lo() const { return lo_; }
    std::int64_t last_vertex() const { return lo_ + static_cast<std::int64_t>(parent_.size()); }
    double cap() const { return cap_; }

    std::int64_t parent_of(std::int64_t n) const {
        return parent_[static_cast<std::size_t>(n - lo_ - 1)];
    }
    double weight_of(std::int64_t n) const {
        return weight_[static_cast<std::size_t>(n - lo_ - 1)];
    }
    double claimed_x_of(std::int64_t n) const {
        return claimed_x_[static_cast<std::size_t>(n - lo_ - 1)];
    }
    std::int64_t box_left_of(std::int64_t n) const {
        return box_left_[static_cast<std::size_t>(n - lo_ - 1)];
    }

    // Points of an already-opened column, at the current cap. Requires
    // keep_columns (the default).
    const std::vector<Point>& column(std::int64_t n) const {
        return columns_[static_cast<std::size_t>(n - lo_)];
    }
    std::int64_t opened_columns() const { return opened_; }

    // Free the candidate heap and stored columns once stepping is finished.
    void drop_working_state();

private:
    struct HeapEntry {
        double y;
        double x;
        bool operator>(const HeapEntry& o) const { return y > o.y; }
    };

    void open_column(std::int64_t n);
    void raise_cap();

    GeneratorSpec spec_;
    std::int64_t lo_;
    double cap_;
    double max_cap_;
    bool keep_columns_;
    std::int64_t opened_ = 0;
    std::vector<std::vector<Point>> columns_;  // columns_[i] = column lo_ + i
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap_;
    std::vector<std::int64_t> parent_;
    std::vector<double> weight_;
    std::vector<double> claimed_x_;
    std::vector<std::int64_t> box_left_;
};

// Serialization of invasion trees.
void save_tree_json(const IpcTree& tree, const std::string& path);
IpcTree load_tree_json(const std::string& path);
void save_tree_edgelist(const IpcTree& tree, const std::string& path);

} // namespace ipc
