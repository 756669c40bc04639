#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ipc/boxforest.hpp"
#include "ipc/kernel.hpp"
#include "ipc/pointset.hpp"
#include "ipc/tree.hpp"

namespace ipc {

// One finite window standing in for the two-sided process: the window is
// [target.lo - margin, target.hi] and the margin doubles until the quantities
// of interest stop changing.

struct WindowRun {
    IntervalSpec window{};
    IpcTree tree;
    std::vector<Box> boxes;

    const Box& box_of(std::int64_t n) const {
        return boxes[static_cast<std::size_t>(n - window.lo - 1)];
    }
};

// Run the invasion over [lo, hi] with automatic cap raising.
WindowRun run_window(std::uint64_t seed, std::int64_t lo, std::int64_t hi,
                     double initial_cap = 1.5, double max_cap = 1024.0);

struct StabilizeOptions {
    std::uint64_t seed = 0;
    IntervalSpec target{0, 0};
    int max_doublings = 20;
    std::int64_t initial_margin_factor = 4;
    double initial_cap = 1.5;
    double max_cap = 1024.0;
    // how many consecutive doublings must harvest the same non-empty string;
    // near-critical edge weights can plateau across a single doubling, so the
    // default demands three matching windows
    int consecutive = 3;
};

// Generic stabilization: the harvest function extracts whatever must
// stabilize (as an encoded string; empty string = not yet computable on this
// window). Certified when `consecutive` successive doublings harvest the same
// non-empty string.
struct HarvestStabilization {
    bool certified = false;
    int doublings_used = 0;
    std::string harvest;
    WindowRun final_run;  // run of the last (certified) window
};

using WindowHarvest = std::function<std::string(const WindowRun&)>;

HarvestStabilization stabilize_harvest(const StabilizeOptions& opt, const WindowHarvest& harvest);

// Standard stabilization: certifies (parent, weight, box) for every target
// vertex, plus the requirement that certified edge weights are below 1.
struct StabilizedWindow {
    IntervalSpec target{};
    bool certified = false;
    bool weights_below_one = false;
    int doublings_used = 0;
    WindowRun run;
};

StabilizedWindow stabilize(const StabilizeOptions& opt);

// Iterated enclosing-box ancestry from a vertex: (vertex, box height) pairs,
// starting at `from`, following left edges while the height stays below
// stop_above. Returns an empty vector if the chain escapes the window before
// finishing.
std::vector<std::pair<std::int64_t, double>> backward_trace(const WindowRun& run,
                                                            std::int64_t from,
                                                            double stop_above);

// Neighbor oracles for neighborhood censuses.
using NeighborFn = std::function<std::vector<std::int64_t>(std::int64_t)>;

// Undirected neighbors in the invasion tree (parent and children), restricted
// to the window.
NeighborFn ipc_neighbors(const WindowRun& run);

// Same, restricted to non-positive vertices (the left restriction rooted at 0).
NeighborFn ipcminus_neighbors(const WindowRun& run);

// Undirected neighbors in the box forest (nearest enclosing box relation).
NeighborFn boxes_neighbors(const WindowRun& run);

// Canonical shape of the ball of the given radius; wraps ball extraction and
// encoding.
std::string neighborhood_census_shape(const NeighborFn& neighbors, std::int64_t center,
                                      int radius);

} // namespace ipc
