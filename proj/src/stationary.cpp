#include "ipc/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>

namespace ipc {

WindowRun run_window(std::uint64_t seed, std::int64_t lo, std::int64_t hi,
                     double initial_cap, double max_cap) {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, seed, 0.0};
    InvasionRun run(spec, lo, std::max(1.0, initial_cap), max_cap,
                    /*keep_columns=*/false);
    while (run.last_vertex() < hi) run.step();
    run.drop_working_state();

    WindowRun out;
    out.window = {lo, hi};
    out.tree.interval = out.window;
    std::size_t width = static_cast<std::size_t>(out.window.width());
    out.tree.parent.assign(width, 0);
    out.tree.weight.assign(width, 0.0);
    out.tree.claimed_x.assign(width, 0.0);
    out.boxes.resize(width - 1);
    for (std::int64_t n = lo + 1; n <= hi; ++n) {
        std::size_t idx = static_cast<std::size_t>(n - lo);
        out.tree.parent[idx] = run.parent_of(n);
        out.tree.weight[idx] = run.weight_of(n);
        out.tree.claimed_x[idx] = run.claimed_x_of(n);
        out.boxes[idx - 1] = {run.box_left_of(n), run.weight_of(n)};
    }
    return out;
}

HarvestStabilization stabilize_harvest(const StabilizeOptions& opt, const WindowHarvest& harvest) {
    HarvestStabilization result;
    std::int64_t margin = std::max<std::int64_t>(1, opt.initial_margin_factor * opt.target.width());
    const int needed = std::max(2, opt.consecutive);
    std::string prev;
    int streak = 0;  // consecutive windows harvesting the same non-empty string
    for (int k = 0; k <= opt.max_doublings; ++k) {
        WindowRun run = run_window(opt.seed, opt.target.lo - margin, opt.target.hi,
                                   opt.initial_cap, opt.max_cap);
        std::string cur = harvest(run);
        result.doublings_used = k;
        streak = (!cur.empty() && cur == prev) ? streak + 1 : (cur.empty() ? 0 : 1);
        if (streak >= needed) {
            result.certified = true;
            result.harvest = cur;
            result.final_run = std::move(run);
            return result;
        }
        prev = std::move(cur);
        if (k == opt.max_doublings) result.final_run = std::move(run);
        margin *= 2;
    }
    result.certified = false;
    result.harvest = prev;
    return result;
}

StabilizedWindow stabilize(const StabilizeOptions& opt) {
    auto harvest = [&opt](const WindowRun& run) -> std::string {
        std::string out;
        char buf[128];
        for (std::int64_t n = opt.target.lo; n <= opt.target.hi; ++n) {
            if (n == run.window.lo) continue;  // root of the window has no edge
            // an edge weight at or above 1 is a transient feature of the
            // finite window (in the limit all weights settle below 1), so the
            // window is not yet conclusive
            if (run.tree.weight_of(n) >= 1.0) return "";
            const Box& b = run.box_of(n);
            std::snprintf(buf, sizeof buf, "%lld:%lld:%.17g:%lld:%.17g;",
                          static_cast<long long>(n),
                          static_cast<long long>(run.tree.parent_of(n)),
                          run.tree.weight_of(n), static_cast<long long>(b.left), b.height);
            out += buf;
        }
        // A box's left edge is a function of exactly the column weights over
        // its own span. Two windows can agree on the integer endpoint while
        // disagreeing on the (unsettled) weights that produced it, so the
        // certificate must cover every weight the computation read.
        std::int64_t span_lo = opt.target.hi;
        for (std::int64_t n = opt.target.lo; n <= opt.target.hi; ++n) {
            if (n == run.window.lo) continue;
            std::int64_t left = run.box_of(n).left;
            if (left <= run.window.lo) return "";  // box may extend past the window
            span_lo = std::min(span_lo, left);
        }
        for (std::int64_t j = span_lo; j < opt.target.hi; ++j) {
            if (j <= run.window.lo) continue;
            std::snprintf(buf, sizeof buf, "w%lld:%.17g;", static_cast<long long>(j),
                          run.tree.weight_of(j));
            out += buf;
        }
        return out;
    };
    HarvestStabilization hs = stabilize_harvest(opt, harvest);
    StabilizedWindow out;
    out.target = opt.target;
    out.certified = hs.certified;
    out.doublings_used = hs.doublings_used;
    out.run = std::move(hs.final_run);
    out.weights_below_one = true;
    if (out.certified) {
        for (std::int64_t n = opt.target.lo; n <= opt.target.hi; ++n) {
            if (n == out.run.window.lo) continue;
            if (out.run.tree.weight_of(n) >= 1.0) out.weights_below_one = false;
        }
    }
    return out;
}

std::vector<std::pair<std::int64_t, double>> backward_trace(const WindowRun& run,
                                                            std::int64_t from,
                                                            double stop_above) {
    std::vector<std::pair<std::int64_t, double>> trace;
    std::int64_t v = from;
    while (true) {
        if (v <= run.window.lo) return {};  // escaped the window before finishing
        const Box& b = run.box_of(v);
        trace.emplace_back(v, b.height);
        if (b.height > stop_above) return trace;
        v = b.left;
    }
}

namespace {

struct ChildrenIndex {
    IntervalSpec window;
    std::vector<std::vector<std::int64_t>> children;  // indexed by v - lo

    std::vector<std::int64_t>& of(std::int64_t v) {
        return children[static_cast<std::size_t>(v - window.lo)];
    }
};

std::shared_ptr<ChildrenIndex> index_children(const WindowRun& run) {
    auto idx = std::make_shared<ChildrenIndex>();
    idx->window = run.window;
    idx->children.assign(static_cast<std::size_t>(run.window.width()), {});
    for (std::int64_t n = run.window.lo + 1; n <= run.window.hi; ++n)
        idx->of(run.tree.parent_of(n)).push_back(n);
    return idx;
}

} // namespace

NeighborFn ipc_neighbors(const WindowRun& run) {
    auto idx = index_children(run);
    const IpcTree* tree = &run.tree;
    IntervalSpec window = run.window;
    return [idx, tree, window](std::int64_t v) {
        if (v == window.lo)
            throw Error("neighborhood escapes the window on the left");
        std::vector<std::int64_t> out = idx->of(v);
        out.push_back(tree->parent_of(v));
        return out;
    };
}

NeighborFn ipcminus_neighbors(const WindowRun& run) {
    auto idx = index_children(run);
    const IpcTree* tree = &run.tree;
    IntervalSpec window = run.window;
    return [idx, tree, window](std::int64_t v) {
        if (v > 0) throw Error("vertex outside the non-positive restriction");
        if (v == window.lo)
            throw Error("neighborhood escapes the window on the left");
        std::vector<std::int64_t> out;
        for (std::int64_t c : idx->of(v))
            if (c <= 0) out.push_back(c);
        out.push_back(tree->parent_of(v));
        return out;
    };
}

NeighborFn boxes_neighbors(const WindowRun& run) {
    auto forest = std::make_shared<BoxForest>(build_box_forest(run.boxes, run.window));
    // children per vertex in the forest
    auto kids = std::make_shared<std::map<std::int64_t, std::vector<std::int64_t>>>();
    for (std::int64_t n = run.window.lo + 1; n <= run.window.hi; ++n) {
        std::int64_t a = forest->next_of(n);
        if (a != kUndetermined) (*kids)[a].push_back(n);
    }
    auto boxes = std::make_shared<std::vector<Box>>(run.boxes);
    IntervalSpec window = run.window;
    return [forest, kids, boxes, window](std::int64_t v) {
        if (v <= window.lo)
            throw Error("neighborhood escapes the window on the left");
        // a box whose left edge touches the window edge may extend past it,
        // so its child list cannot be trusted yet
        if ((*boxes)[static_cast<std::size_t>(v - window.lo - 1)].left <= window.lo)
            throw Error("box may extend past the window on the left");
        std::vector<std::int64_t> out;
        auto it = kids->find(v);
        if (it != kids->end()) out = it->second;
        std::int64_t a = forest->next_of(v);
        if (a == kUndetermined)
            throw Error("enclosing box undetermined inside the window");
        out.push_back(a);
        return out;
    };
}

std::string neighborhood_census_shape(const NeighborFn& neighbors, std::int64_t center,
                                      int radius) {
    try {
        RootedTree ball = ball_as_rooted_tree(neighbors, center, radius);
        return canonical_shape(ball);
    } catch (const Error&) {
        return "";
    }
}

} // namespace ipc
