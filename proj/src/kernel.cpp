#include "ipc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace ipc {

IpcTree run_ipc_sequential(const PointSet& ps) {
    const IntervalSpec iv = ps.interval();
    IpcTree tree;
    tree.interval = iv;
    std::size_t width = static_cast<std::size_t>(iv.width());
    tree.parent.assign(width, 0);
    tree.weight.assign(width, 0.0);
    tree.claimed_x.assign(width, 0.0);

    struct Entry {
        double y, x;
        bool operator>(const Entry& o) const { return y > o.y; }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;

    for (std::int64_t i = iv.lo; i < iv.hi; ++i) {
        for (const Point& p : ps.column(i)) heap.push({p.y, p.x});
        if (heap.empty()) throw ExhaustionError(i + 1, ps.cap());
        Entry e = heap.top();
        heap.pop();
        std::size_t idx = static_cast<std::size_t>(i + 1 - iv.lo);
        tree.parent[idx] = static_cast<std::int64_t>(std::floor(e.x));
        tree.weight[idx] = e.y;
        tree.claimed_x[idx] = e.x;
    }
    return tree;
}

IpcTree brute_force_oracle(const PointSet& ps) {
    const IntervalSpec iv = ps.interval();
    IpcTree tree;
    tree.interval = iv;
    std::size_t width = static_cast<std::size_t>(iv.width());
    tree.parent.assign(width, 0);
    tree.weight.assign(width, 0.0);
    tree.claimed_x.assign(width, 0.0);

    std::vector<Point> pts = ps.all_points();
    std::vector<bool> claimed(pts.size(), false);

    for (std::int64_t i = iv.lo; i < iv.hi; ++i) {
        // lowest unclaimed point with x < i + 1
        std::size_t best = pts.size();
        for (std::size_t k = 0; k < pts.size(); ++k) {
            if (claimed[k]) continue;
            if (pts[k].x >= static_cast<double>(i) + 1.0) continue;
            if (best == pts.size() || pts[k].y < pts[best].y) best = k;
        }
        if (best == pts.size()) throw ExhaustionError(i + 1, ps.cap());
        claimed[best] = true;
        std::size_t idx = static_cast<std::size_t>(i + 1 - iv.lo);
        tree.parent[idx] = static_cast<std::int64_t>(std::floor(pts[best].x));
        tree.weight[idx] = pts[best].y;
        tree.claimed_x[idx] = pts[best].x;
    }
    return tree;
}

std::vector<Box> compute_boxes(const PointSet& ps) {
    const IntervalSpec iv = ps.interval();
    std::vector<Box> boxes;
    boxes.reserve(static_cast<std::size_t>(iv.hi - iv.lo));
    for (std::int64_t n = iv.lo + 1; n <= iv.hi; ++n) {
        // smallest h such that some [j, n) holds at least n - j points below h
        double best_h = -1.0;
        std::vector<double> heights;  // heights of points with x in [j, n), sorted
        for (std::int64_t j = n - 1; j >= iv.lo; --j) {
            for (const Point& p : ps.column(j)) {
                auto it = std::lower_bound(heights.begin(), heights.end(), p.y);
                heights.insert(it, p.y);
            }
            std::size_t need = static_cast<std::size_t>(n - j);
            if (heights.size() >= need) {
                double cand = heights[need - 1];
                if (best_h < 0.0 || cand < best_h) best_h = cand;
            }
        }
        if (best_h < 0.0)
            throw Error("box not realized below the cap at vertex " + std::to_string(n));
        // smallest left edge with an exact count at that height
        std::int64_t left = -1;
        std::int64_t running = 0;
        for (std::int64_t j = n - 1; j >= iv.lo; --j) {
            running += ps.count_below(static_cast<double>(j), static_cast<double>(j) + 1.0, best_h);
            if (running == n - j) left = j;
        }
        if (left < 0)
            throw Error("box left edge not found at vertex " + std::to_string(n));
        boxes.push_back({left, best_h});
    }
    return boxes;
}

std::vector<Box> boxes_from_tree(const IpcTree& tree) {
    const IntervalSpec iv = tree.interval;
    std::size_t count = static_cast<std::size_t>(iv.hi - iv.lo);
    std::vector<Box> boxes(count);
    for (std::int64_t n = iv.lo + 1; n <= iv.hi; ++n) {
        double h = tree.weight_of(n);
        std::int64_t j = n - 1;
        while (j > iv.lo && tree.weight_of(j) < h)
            j = boxes[static_cast<std::size_t>(j - iv.lo - 1)].left;
        boxes[static_cast<std::size_t>(n - iv.lo - 1)] = {j, h};
    }
    return boxes;
}

EfgResult evaluate_EFG(const PointSet& ps, std::int64_t k, std::int64_t n, double y) {
    EfgResult r;
    double k_d = static_cast<double>(k);
    double kn_d = static_cast<double>(k - n);
    r.e = ps.count_below(kn_d, k_d, y) == n && ps.count_strictly_below(kn_d, k_d, y) == n - 1;
    r.f = true;
    for (std::int64_t m = 1; m <= n; ++m) {
        if (ps.count_strictly_below(static_cast<double>(k - m), k_d, y) >= m) {
            r.f = false;
            break;
        }
    }
    r.g = true;
    r.g_minus = true;
    for (std::int64_t m = 1; k - n - m >= ps.interval().lo; ++m) {
        double a = static_cast<double>(k - n - m);
        if (r.g && ps.count_below(a, kn_d, y) >= m) r.g = false;
        if (r.g_minus && ps.count_strictly_below(a, kn_d, y) >= m) r.g_minus = false;
        if (!r.g && !r.g_minus) break;
    }
    return r;
}

InvasionRun::InvasionRun(const GeneratorSpec& spec, std::int64_t lo, double initial_cap,
                         double max_cap, bool keep_columns)
    : spec_(spec), lo_(lo), cap_(initial_cap), max_cap_(max_cap),
      keep_columns_(keep_columns) {}

void InvasionRun::open_column(std::int64_t n) {
    ++opened_;
    std::vector<Point> col = generate_column(spec_, n, cap_);
    for (const Point& p : col) heap_.push({p.y, p.x});
    if (keep_columns_) columns_.push_back(std::move(col));
}

void InvasionRun::raise_cap() {
    double new_cap = cap_ + 1.0;
    if (new_cap > max_cap_)
        throw ExhaustionError(last_vertex() + 1, cap_);
    for (std::int64_t n = lo_; n < lo_ + opened_; ++n) {
        std::vector<Point> slice;
        if (spec_.kind == GeneratorKind::PoissonUnitRate) {
            slice = poisson_column_slice(spec_.seed, n, cap_, new_cap);
        } else {
            for (const Point& p : generate_column(spec_, n, new_cap))
                if (p.y > cap_) slice.push_back(p);
        }
        for (const Point& p : slice) heap_.push({p.y, p.x});
        if (keep_columns_) {
            auto& col = columns_[static_cast<std::size_t>(n - lo_)];
            col.insert(col.end(), slice.begin(), slice.end());
            std::sort(col.begin(), col.end(),
                      [](const Point& a, const Point& b) { return a.y < b.y; });
        }
    }
    cap_ = new_cap;
}

void InvasionRun::drop_working_state() {
    decltype(heap_)().swap(heap_);
    columns_.clear();
    columns_.shrink_to_fit();
}

std::int64_t InvasionRun::step() {
    std::int64_t i = last_vertex();  // claiming for vertex i + 1
    open_column(i);
    while (heap_.empty()) raise_cap();
    HeapEntry e = heap_.top();
    heap_.pop();
    std::int64_t n = i + 1;
    parent_.push_back(static_cast<std::int64_t>(std::floor(e.x)));
    weight_.push_back(e.y);
    claimed_x_.push_back(e.x);
    // nesting recurrence for the box left edge
    std::int64_t j = n - 1;
    while (j > lo_ && weight_of(j) < e.y) j = box_left_of(j);
    box_left_.push_back(j);
    return n;
}

void save_tree_json(const IpcTree& tree, const std::string& path) {
    nlohmann::json j;
    j["interval"] = {{"lo", tree.interval.lo}, {"hi", tree.interval.hi}};
    nlohmann::json edges = nlohmann::json::array();
    for (std::int64_t n = tree.interval.lo + 1; n <= tree.interval.hi; ++n) {
        edges.push_back({{"child", n},
                         {"parent", tree.parent_of(n)},
                         {"weight", tree.weight_of(n)}});
    }
    j["edges"] = std::move(edges);
    std::ofstream out(path);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

IpcTree load_tree_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(std::string("malformed tree JSON: ") + e.what());
    }
    IpcTree tree;
    tree.interval.lo = j.at("interval").at("lo").get<std::int64_t>();
    tree.interval.hi = j.at("interval").at("hi").get<std::int64_t>();
    std::size_t width = static_cast<std::size_t>(tree.interval.width());
    tree.parent.assign(width, 0);
    tree.weight.assign(width, 0.0);
    tree.claimed_x.assign(width, 0.0);
    for (const auto& e : j.at("edges")) {
        std::int64_t child = e.at("child").get<std::int64_t>();
        if (child <= tree.interval.lo || child > tree.interval.hi)
            throw Error("tree JSON edge child outside interval");
        std::size_t idx = static_cast<std::size_t>(child - tree.interval.lo);
        tree.parent[idx] = e.at("parent").get<std::int64_t>();
        tree.weight[idx] = e.at("weight").get<double>();
        tree.claimed_x[idx] = static_cast<double>(tree.parent[idx]);
    }
    return tree;
}

void save_tree_edgelist(const IpcTree& tree, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open file for writing: " + path);
    char buf[96];
    for (std::int64_t n = tree.interval.lo + 1; n <= tree.interval.hi; ++n) {
        std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n",
                      static_cast<long long>(n),
                      static_cast<long long>(tree.parent_of(n)), tree.weight_of(n));
        out << buf;
    }
}

} // namespace ipc
