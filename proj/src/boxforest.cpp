#include "ipc/boxforest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ipc {

BoxForest build_box_forest(const std::vector<Box>& boxes, IntervalSpec interval) {
    BoxForest forest;
    forest.interval = interval;
    std::size_t count = boxes.size();
    forest.next.assign(count, kUndetermined);
    // a_n is the next vertex to the right with a strictly taller box; taller
    // plus laminarity implies containment
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < count; ++i) {
        while (!stack.empty() && boxes[stack.back()].height < boxes[i].height) {
            forest.next[stack.back()] = interval.lo + 1 + static_cast<std::int64_t>(i);
            stack.pop_back();
        }
        stack.push_back(i);
    }
    return forest;
}

std::int64_t box_forest_parent_oracle(const std::vector<Box>& boxes, IntervalSpec interval,
                                      std::int64_t n) {
    std::size_t idx = static_cast<std::size_t>(n - interval.lo - 1);
    for (std::size_t j = idx + 1; j < boxes.size(); ++j) {
        if (boxes[j].left <= boxes[idx].left && boxes[j].height >= boxes[idx].height)
            return interval.lo + 1 + static_cast<std::int64_t>(j);
    }
    return kUndetermined;
}

namespace {

template <typename ParentFn>
void fill_pond_stats(const ParentFn& parent_of, PondRecord& pond) {
    // backbone path from outlet down to start
    std::vector<std::int64_t> backbone;
    std::int64_t v = pond.outlet;
    while (v != pond.start) {
        backbone.push_back(v);
        v = parent_of(v);
        if (v < pond.start) throw Error("pond path escaped its pond");
    }
    backbone.push_back(pond.start);
    pond.path_len = static_cast<std::int64_t>(backbone.size()) - 1;

    // attach every off-backbone vertex of the pond to its backbone vertex
    std::size_t width = static_cast<std::size_t>(pond.size);
    std::vector<std::int64_t> attach(width + 1, -1);  // index: vertex - start
    auto at = [&](std::int64_t u) -> std::int64_t& {
        return attach[static_cast<std::size_t>(u - pond.start)];
    };
    for (std::int64_t b : backbone) at(b) = b;
    std::vector<std::int64_t> hang_count(width + 1, 0);
    for (std::int64_t u = pond.start + 1; u <= pond.outlet; ++u) {
        if (at(u) == u) continue;  // backbone
        std::int64_t p = parent_of(u);
        std::int64_t root = (at(p) == p) ? p : at(p);
        at(u) = root;
        if (root != u) ++hang_count[static_cast<std::size_t>(root - pond.start)];
    }
    pond.hang_sizes.clear();
    for (auto it = backbone.rbegin(); it != backbone.rend(); ++it) {
        if (*it == pond.outlet) continue;  // the outlet's tree belongs to the next pond
        pond.hang_sizes.push_back(1 + hang_count[static_cast<std::size_t>(*it - pond.start)]);
    }
}

} // namespace

void pond_statistics(const IpcTree& tree, PondRecord& pond) {
    fill_pond_stats([&tree](std::int64_t n) { return tree.parent_of(n); }, pond);
}

std::vector<PondRecord> decompose_ponds(const PointSet& ps, const IpcTree& tree,
                                        std::int64_t horizon) {
    const IntervalSpec iv = tree.interval;
    std::vector<Box> boxes = boxes_from_tree(tree);

    // record chain anchored at the left edge, built with the revision stack
    struct Entry {
        std::int64_t pos;
        double h;
    };
    std::vector<Entry> stack{{iv.lo, std::numeric_limits<double>::infinity()}};
    for (std::int64_t n = iv.lo + 1; n <= iv.hi; ++n) {
        const Box& b = boxes[static_cast<std::size_t>(n - iv.lo - 1)];
        while (stack.back().pos > b.left) stack.pop_back();
        if (stack.back().pos == b.left) stack.push_back({n, b.height});
    }

    // critical-walk prefix for dip certification: D[m] = #points below 1 in
    // columns [lo, m) minus (m - lo)
    std::size_t width = static_cast<std::size_t>(iv.width());
    std::vector<double> D(width + 1, 0.0);
    for (std::size_t i = 1; i <= width; ++i) {
        std::int64_t col = iv.lo + static_cast<std::int64_t>(i) - 1;
        std::int64_t c1 = 0;
        for (const Point& p : ps.column(col))
            if (p.y <= 1.0) ++c1;
        D[i] = D[i - 1] + static_cast<double>(c1) - 1.0;
    }
    auto has_dip = [&](std::int64_t pos) {
        std::size_t start = static_cast<std::size_t>(pos - iv.lo);
        for (std::size_t m = start + 1; m <= width; ++m)
            if (D[m] < D[start]) return true;
        return false;
    };

    std::vector<PondRecord> ponds;
    for (std::size_t k = 1; k < stack.size(); ++k) {
        PondRecord pond;
        pond.start = stack[k - 1].pos;
        pond.outlet = stack[k].pos;
        pond.start_height = stack[k - 1].h;
        pond.height = stack[k].h;
        pond.size = pond.outlet - pond.start;
        pond.certified = pond.height > 1.0 && iv.hi - pond.outlet >= horizon &&
                         has_dip(pond.outlet);
        if (pond.certified) pond_statistics(tree, pond);
        ponds.push_back(std::move(pond));
    }
    return ponds;
}

std::vector<double> forward_max_process(const std::vector<PondRecord>& ponds) {
    std::vector<double> w;
    for (const PondRecord& pond : ponds) {
        if (!pond.certified || pond.path_len < 0) break;
        for (std::int64_t i = 0; i < pond.path_len; ++i) w.push_back(pond.height);
    }
    return w;
}

HarvestResult harvest_ponds(const HarvestOptions& opt) {
    GeneratorSpec spec{GeneratorKind::PoissonUnitRate, opt.seed, 0.0};
    InvasionRun run(spec, 0, std::max(1.0, opt.initial_cap), opt.max_cap);

    struct Entry {
        std::int64_t pos;
        double h;
        double d_at;        // critical-walk prefix value at pos
        double min_after;   // min prefix value strictly after pos
    };
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<Entry> stack{{0, inf, 0.0, inf}};

    double d_cur = 0.0;  // D[m] for m = current width
    HarvestResult result;

    auto entry_certified = [&](const Entry& e, std::int64_t width) {
        return e.h > 1.0 && width - e.pos >= opt.horizon && e.min_after < e.d_at;
    };

    while (true) {
        std::int64_t n = run.step();
        // column n-1 was just opened; update the critical-walk prefix
        std::int64_t c1 = 0;
        for (const Point& p : run.column(n - 1)) {
            if (p.y <= 1.0) ++c1;
            else break;  // column sorted by height
        }
        d_cur += static_cast<double>(c1) - 1.0;
        for (Entry& e : stack) e.min_after = std::min(e.min_after, d_cur);

        std::int64_t left = run.box_left_of(n);
        while (stack.back().pos > left) stack.pop_back();
        if (stack.back().pos == left) stack.push_back({n, run.weight_of(n), d_cur, inf});

        // stop once enough of the chain is certified and it has descended far enough
        std::int64_t width = n;
        std::int64_t certified = 0;
        double lowest_certified = inf;
        for (std::size_t k = 1; k < stack.size(); ++k) {
            if (!entry_certified(stack[k], width)) break;
            ++certified;
            lowest_certified = stack[k].h;
        }
        bool descended = opt.stop_below <= 1.0 || lowest_certified < opt.stop_below;
        if (certified >= opt.min_outlets && descended) {
            result.complete = true;
            result.width = width;
            break;
        }
        if (width >= opt.max_width) {
            result.complete = false;
            result.width = width;
            break;
        }
    }

    std::int64_t width = result.width;
    for (std::size_t k = 1; k < stack.size(); ++k) {
        PondRecord pond;
        pond.start = stack[k - 1].pos;
        pond.outlet = stack[k].pos;
        pond.start_height = stack[k - 1].h;
        pond.height = stack[k].h;
        pond.size = pond.outlet - pond.start;
        pond.certified = entry_certified(stack[k], width);
        if (pond.certified && pond.size <= opt.stats_max_size)
            fill_pond_stats([&run](std::int64_t u) { return run.parent_of(u); }, pond);
        result.ponds.push_back(std::move(pond));
    }
    return result;
}

} // namespace ipc
