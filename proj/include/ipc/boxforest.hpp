#pragma once

#include <cstdint>
#include <vector>

#include "ipc/kernel.hpp"
#include "ipc/pointset.hpp"

namespace ipc {

constexpr std::int64_t kUndetermined = INT64_MIN;

// Forest on the vertices (lo, hi] where each vertex points to the nearest
// later vertex whose box contains its own. next[n - lo - 1] = a_n, or
// kUndetermined when no such vertex lies in the window.
struct BoxForest {
    IntervalSpec interval{};
    std::vector<std::int64_t> next;

    std::int64_t next_of(std::int64_t n) const {
        return next[static_cast<std::size_t>(n - interval.lo - 1)];
    }
};

// Monotone-stack construction (containment reduces to the next strictly
// taller box on the right).
BoxForest build_box_forest(const std::vector<Box>& boxes, IntervalSpec interval);

// Quadratic reference: scan for the smallest later box containing box n.
std::int64_t box_forest_parent_oracle(const std::vector<Box>& boxes, IntervalSpec interval,
                                      std::int64_t n);

struct PondRecord {
    std::int64_t start = 0;        // previous outlet (or window lo)
    std::int64_t outlet = 0;
    double start_height = 0.0;     // +inf for the first pond
    double height = 0.0;           // outlet height
    std::int64_t size = 0;         // outlet - start
    std::int64_t path_len = -1;    // backbone edges from start to outlet (-1: not computed)
    std::vector<std::int64_t> hang_sizes;  // per backbone vertex in [start, outlet)
    bool certified = false;
};

// Pond decomposition of a finite window: the chain of record boxes anchored
// at the window's left edge. An outlet is certified when it is taller than 1,
// the window extends at least `horizon` beyond it, and the critical rightward
// walk from it has dipped below zero inside the window.
std::vector<PondRecord> decompose_ponds(const PointSet& ps, const IpcTree& tree,
                                        std::int64_t horizon = 10000);

// Future-maximum weight along the backbone, one entry per backbone edge from
// the window's left edge (only over certified ponds).
std::vector<double> forward_max_process(const std::vector<PondRecord>& ponds);

// Fill path_len / hang_sizes for a pond from the tree's parent map.
void pond_statistics(const IpcTree& tree, PondRecord& pond);

// Adaptive half-line harvester. Grows a window [0, hi] rightward (raising the
// cap on demand) until the record chain has dropped below `stop_below` with
// `min_outlets` certified outlets, then reports the chain.
struct HarvestOptions {
    std::uint64_t seed = 0;
    double stop_below = 1.0;       // stop once the chain height is below this
    std::int64_t min_outlets = 1;  // and at least this many outlets are certified
    std::int64_t horizon = 512;    // certification lookahead
    std::int64_t max_width = 200000;
    double initial_cap = 3.0;
    double max_cap = 1024.0;
    std::int64_t stats_max_size = 20000;  // compute path/hang stats up to this pond size
};

struct HarvestResult {
    std::vector<PondRecord> ponds;
    bool complete = false;  // false when max_width was hit first
    std::int64_t width = 0;
};

HarvestResult harvest_ponds(const HarvestOptions& opt);

} // namespace ipc
