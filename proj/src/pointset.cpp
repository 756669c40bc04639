#include "ipc/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ipc {

namespace {

std::vector<Point> make_column(const GeneratorSpec& spec, std::int64_t n, double cap) {
    std::vector<Point> pts;
    switch (spec.kind) {
    case GeneratorKind::PoissonUnitRate: {
        // one substream per unit-height layer; a layer's points are fixed
        // regardless of the cap in force when it is first revealed
        std::int64_t top_layer = static_cast<std::int64_t>(std::ceil(cap));
        for (std::int64_t layer = 0; layer < top_layer; ++layer) {
            SplitMix64 rng = substream(spec.seed, n, layer);
            int k = rng.poisson(1.0);
            for (int i = 0; i < k; ++i) {
                double x = rng.uniform(static_cast<double>(n), static_cast<double>(n) + 1.0);
                double y = rng.uniform(static_cast<double>(layer), static_cast<double>(layer) + 1.0);
                if (y <= cap) pts.push_back({x, y});
            }
        }
        break;
    }
    case GeneratorKind::RegularTree: {
        SplitMix64 rng = substream(spec.seed, n, 0);
        std::int64_t count = static_cast<std::int64_t>(std::llround(spec.sigma));
        for (std::int64_t i = 0; i < count; ++i) {
            double x = rng.uniform(static_cast<double>(n), static_cast<double>(n) + 1.0);
            double y = rng.uniform(0.0, spec.sigma);
            if (y <= cap) pts.push_back({x, y});
        }
        break;
    }
    case GeneratorKind::CompleteGraph: {
        std::int64_t sigma = static_cast<std::int64_t>(std::llround(spec.sigma));
        if (n < 0 || n > sigma)
            throw Error("complete-graph generator: column outside [0, sigma]");
        SplitMix64 rng = substream(spec.seed, n, 0);
        std::int64_t count = sigma - n;
        for (std::int64_t i = 0; i < count; ++i) {
            double x = rng.uniform(static_cast<double>(n), static_cast<double>(n) + 1.0);
            double y = rng.uniform(0.0, spec.sigma);
            if (y <= cap) pts.push_back({x, y});
        }
        break;
    }
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.y < b.y; });
    return pts;
}

} // namespace

std::vector<Point> generate_column(const GeneratorSpec& spec, std::int64_t n, double cap) {
    return make_column(spec, n, cap);
}

std::vector<Point> poisson_column_slice(std::uint64_t seed, std::int64_t n,
                                        double cap_lo, double cap_hi) {
    std::vector<Point> pts;
    std::int64_t first = static_cast<std::int64_t>(std::floor(cap_lo));
    std::int64_t last = static_cast<std::int64_t>(std::ceil(cap_hi));
    for (std::int64_t layer = first; layer < last; ++layer) {
        SplitMix64 rng = substream(seed, n, layer);
        int k = rng.poisson(1.0);
        for (int i = 0; i < k; ++i) {
            double x = rng.uniform(static_cast<double>(n), static_cast<double>(n) + 1.0);
            double y = rng.uniform(static_cast<double>(layer), static_cast<double>(layer) + 1.0);
            if (y > cap_lo && y <= cap_hi) pts.push_back({x, y});
        }
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.y < b.y; });
    return pts;
}

PointSet PointSet::generate(const GeneratorSpec& spec, IntervalSpec interval, double cap) {
    if (interval.hi < interval.lo) throw Error("empty interval");
    if (cap < 0.0) throw Error("negative height cap");
    PointSet ps;
    ps.interval_ = interval;
    ps.cap_ = cap;
    ps.generated_ = true;
    ps.spec_ = spec;
    ps.columns_.reserve(static_cast<std::size_t>(interval.width()));
    for (std::int64_t n = interval.lo; n <= interval.hi; ++n)
        ps.columns_.push_back(make_column(spec, n, cap));
    ps.reject_duplicate_heights();
    return ps;
}

PointSet PointSet::from_points(std::vector<Point> points, IntervalSpec interval, double cap) {
    if (interval.hi < interval.lo) throw Error("empty interval");
    PointSet ps;
    ps.interval_ = interval;
    ps.cap_ = cap;
    ps.generated_ = false;
    ps.columns_.assign(static_cast<std::size_t>(interval.width()), {});
    for (const Point& p : points) {
        std::int64_t n = static_cast<std::int64_t>(std::floor(p.x));
        if (p.y < 0.0) throw Error("point below the horizontal axis");
        if (n < interval.lo || n > interval.hi)
            throw Error("point outside the declared interval");
        ps.columns_[static_cast<std::size_t>(n - interval.lo)].push_back(p);
    }
    for (auto& col : ps.columns_)
        std::sort(col.begin(), col.end(), [](const Point& a, const Point& b) { return a.y < b.y; });
    ps.reject_duplicate_heights();
    return ps;
}

PointSet PointSet::extend_left(std::int64_t new_lo) const {
    if (!generated_) throw Error("extend_left requires a generated point set");
    if (new_lo > interval_.lo) throw Error("extend_left cannot shrink the interval");
    PointSet ps;
    ps.interval_ = {new_lo, interval_.hi};
    ps.cap_ = cap_;
    ps.generated_ = true;
    ps.spec_ = spec_;
    ps.columns_.reserve(static_cast<std::size_t>(ps.interval_.width()));
    for (std::int64_t n = new_lo; n < interval_.lo; ++n)
        ps.columns_.push_back(make_column(spec_, n, cap_));
    ps.columns_.insert(ps.columns_.end(), columns_.begin(), columns_.end());
    ps.reject_duplicate_heights();
    return ps;
}

PointSet PointSet::raise_cap(double new_cap) const {
    if (!generated_) throw Error("raise_cap requires a generated point set");
    if (new_cap < cap_) throw Error("raise_cap cannot lower the cap");
    PointSet ps;
    ps.interval_ = interval_;
    ps.cap_ = new_cap;
    ps.generated_ = true;
    ps.spec_ = spec_;
    ps.columns_.reserve(columns_.size());
    for (std::int64_t n = interval_.lo; n <= interval_.hi; ++n)
        ps.columns_.push_back(make_column(spec_, n, new_cap));
    ps.reject_duplicate_heights();
    return ps;
}

const std::vector<Point>& PointSet::column(std::int64_t n) const {
    if (!interval_.contains(n)) throw Error("column outside interval");
    return columns_[static_cast<std::size_t>(n - interval_.lo)];
}

std::size_t PointSet::total_points() const {
    std::size_t total = 0;
    for (const auto& col : columns_) total += col.size();
    return total;
}

std::vector<Point> PointSet::all_points() const {
    std::vector<Point> pts;
    pts.reserve(total_points());
    for (const auto& col : columns_) pts.insert(pts.end(), col.begin(), col.end());
    return pts;
}

std::int64_t PointSet::count_below(double x_lo, double x_hi, double y_hi) const {
    std::int64_t total = 0;
    std::int64_t first = std::max(interval_.lo, static_cast<std::int64_t>(std::floor(x_lo)));
    std::int64_t last = std::min(interval_.hi, static_cast<std::int64_t>(std::ceil(x_hi)));
    for (std::int64_t n = first; n <= last; ++n) {
        for (const Point& p : columns_[static_cast<std::size_t>(n - interval_.lo)]) {
            if (p.x >= x_lo && p.x < x_hi && p.y <= y_hi) ++total;
        }
    }
    return total;
}

std::int64_t PointSet::count_strictly_below(double x_lo, double x_hi, double y_hi) const {
    std::int64_t total = 0;
    std::int64_t first = std::max(interval_.lo, static_cast<std::int64_t>(std::floor(x_lo)));
    std::int64_t last = std::min(interval_.hi, static_cast<std::int64_t>(std::ceil(x_hi)));
    for (std::int64_t n = first; n <= last; ++n) {
        for (const Point& p : columns_[static_cast<std::size_t>(n - interval_.lo)]) {
            if (p.x >= x_lo && p.x < x_hi && p.y < y_hi) ++total;
        }
    }
    return total;
}

void PointSet::reject_duplicate_heights() const {
    std::vector<double> heights;
    heights.reserve(total_points());
    for (const auto& col : columns_)
        for (const Point& p : col) heights.push_back(p.y);
    std::sort(heights.begin(), heights.end());
    for (std::size_t i = 1; i < heights.size(); ++i)
        if (heights[i] == heights[i - 1])
            throw Error("duplicate point height in realization");
}

std::vector<ConditionReport> PointSet::check_conditions() const {
    using V = ConditionReport::Verdict;
    std::vector<ConditionReport> out;
    const std::int64_t lo = interval_.lo, hi = interval_.hi;
    const std::size_t npts = total_points();

    // 1: upper half-plane, locally finite. Construction enforces y >= 0 and
    // finiteness, so a materialized window always satisfies it.
    out.push_back({1, V::HoldsOnWindow, "all points in upper half-plane; finite window"});

    // 2: every vertex beyond the first can find enough mass to its left.
    if (npts == 0) {
        out.push_back({2, V::Violated, "window holds no points"});
    } else {
        std::int64_t failures = 0;
        for (std::int64_t n = lo + 1; n <= hi; ++n) {
            bool ok = false;
            std::int64_t running = 0;
            for (std::int64_t k = 1; n - k >= lo; ++k) {
                running += static_cast<std::int64_t>(
                    columns_[static_cast<std::size_t>(n - k - lo)].size());
                if (running >= k) { ok = true; break; }
            }
            if (!ok) ++failures;
        }
        if (failures == 0)
            out.push_back({2, V::HoldsOnWindow, "left-mass witness found for every vertex"});
        else
            out.push_back({2, V::UndecidableOnWindow,
                           std::to_string(failures) + " vertices lack a left-mass witness at this cap"});
    }

    // 3: distinct heights. Construction rejects duplicates, so it holds here.
    out.push_back({3, V::HoldsOnWindow, "heights pairwise distinct"});

    // 4: infinitely many surplus prefixes below height 1 (asymptotic; report
    // witness counts for the rightmost vertex).
    {
        std::int64_t witnesses = 0;
        std::int64_t running = 0;
        for (std::int64_t m = hi - 1; m >= lo; --m) {
            running += count_below(static_cast<double>(m), static_cast<double>(m) + 1.0, 1.0);
            if (running > hi - m) ++witnesses;
        }
        out.push_back({4, V::UndecidableOnWindow,
                       std::to_string(witnesses) + " surplus prefixes below height 1 for rightmost vertex"});
    }

    // 5: for lambda < 1 only finitely many saturated left prefixes (report at 0.9).
    {
        const double lambda = 0.9;
        std::int64_t witnesses = 0;
        std::int64_t running = 0;
        for (std::int64_t m = hi - 1; m >= lo; --m) {
            running += count_below(static_cast<double>(m), static_cast<double>(m) + 1.0, lambda);
            if (running >= hi - m) ++witnesses;
        }
        out.push_back({5, V::UndecidableOnWindow,
                       std::to_string(witnesses) + " saturated left prefixes at lambda=0.9"});
    }

    // 6: rightward version of 5 (report at 0.9, from the leftmost vertex).
    {
        const double lambda = 0.9;
        std::int64_t witnesses = 0;
        std::int64_t running = 0;
        for (std::int64_t m = lo + 1; m <= hi; ++m) {
            running += count_below(static_cast<double>(m) - 1.0, static_cast<double>(m), lambda);
            if (running >= m - lo) ++witnesses;
        }
        out.push_back({6, V::UndecidableOnWindow,
                       std::to_string(witnesses) + " saturated right prefixes at lambda=0.9"});
    }

    // 7: supercritical walks fall behind only finitely often (report at 1.5).
    {
        const double lambda = 1.5;
        std::int64_t witnesses = 0;
        std::int64_t running = 0;
        for (std::int64_t i = 1; lo + i <= hi; ++i) {
            running += count_below(static_cast<double>(lo + i) - 1.0,
                                   static_cast<double>(lo + i), lambda);
            if (running <= i) ++witnesses;
        }
        out.push_back({7, V::UndecidableOnWindow,
                       std::to_string(witnesses) + " lag events for the lambda=1.5 walk from the left edge"});
    }

    // 8: the critical rightward walk dies from every start.
    {
        std::int64_t died = 0, starts = 0;
        for (std::int64_t k = lo; k <= hi; ++k) {
            ++starts;
            std::int64_t running = 0;
            bool dead = false;
            for (std::int64_t i = 1; k + i <= hi; ++i) {
                running += count_below(static_cast<double>(k + i) - 1.0,
                                       static_cast<double>(k + i), 1.0);
                if (running < i) { dead = true; break; }
            }
            if (dead) ++died;
        }
        if (died == starts && starts > 0)
            out.push_back({8, V::HoldsOnWindow, "critical walk died from every start in window"});
        else
            out.push_back({8, V::UndecidableOnWindow,
                           std::to_string(died) + "/" + std::to_string(starts) +
                               " critical walks died within window"});
    }

    return out;
}

void PointSet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << "# point set window\n";
    out << "interval " << interval_.lo << " " << interval_.hi << "\n";
    char buf[64];
    for (const auto& col : columns_) {
        for (const Point& p : col) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
            out << buf;
        }
    }
}

PointSet PointSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::vector<Point> pts;
    bool have_interval = false;
    IntervalSpec interval{};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "interval") {
            if (!(ss >> interval.lo >> interval.hi))
                throw Error("malformed interval header at line " + std::to_string(lineno));
            have_interval = true;
            continue;
        }
        Point p;
        try {
            p.x = std::stod(first);
        } catch (const std::exception&) {
            throw Error("malformed point at line " + std::to_string(lineno));
        }
        if (!(ss >> p.y)) throw Error("malformed point at line " + std::to_string(lineno));
        pts.push_back(p);
    }
    if (!have_interval) {
        if (pts.empty()) throw Error("file holds no points and no interval header");
        double min_x = pts.front().x, max_x = pts.front().x;
        for (const Point& p : pts) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
        }
        interval.lo = static_cast<std::int64_t>(std::floor(min_x));
        interval.hi = static_cast<std::int64_t>(std::floor(max_x));
    }
    double cap = 0.0;
    for (const Point& p : pts) cap = std::max(cap, p.y);
    return from_points(std::move(pts), interval, cap);
}

} // namespace ipc
