#include "ipc/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ipc/gw.hpp"
#include "ipc/pointset.hpp"

namespace ipc {

RootedTree sample_pgw(double mu, SplitMix64& rng, int depth_limit, std::int64_t max_nodes) {
    RootedTree tree;
    struct Frame {
        int node;
        int depth;
    };
    std::vector<Frame> queue{{0, 0}};
    std::size_t head = 0;
    while (head < queue.size()) {
        Frame f = queue[head++];
        if (depth_limit >= 0 && f.depth == depth_limit) continue;
        int k = rng.poisson(mu);
        for (int i = 0; i < k; ++i) {
            if (tree.size() >= max_nodes)
                throw Error("sample_pgw: node budget exceeded");
            int child = tree.add_child(f.node);
            queue.push_back({child, f.depth + 1});
        }
    }
    return tree;
}

namespace {

// Attach a copy of `hang` under `at`: hang's root is identified with `at`.
void graft(RootedTree& tree, int at, const RootedTree& hang) {
    std::vector<int> map(static_cast<std::size_t>(hang.size()), -1);
    map[0] = at;
    for (int node = 0; node < hang.size(); ++node)
        for (int k : hang.kids[static_cast<std::size_t>(node)])
            map[static_cast<std::size_t>(k)] = tree.add_child(map[static_cast<std::size_t>(node)]);
}

} // namespace

RootedTree sample_iic_ball(SplitMix64& rng, int radius) {
    RootedTree tree;
    // backbone to depth `radius`, hanging critical trees truncated to fit
    graft(tree, 0, sample_pgw(1.0, rng, radius));
    int prev = 0;
    for (int depth = 1; depth <= radius; ++depth) {
        int v = tree.add_child(prev);
        if (depth < radius) graft(tree, v, sample_pgw(1.0, rng, radius - depth));
        prev = v;
    }
    return tree;
}

RootedTree sample_tiic_star_ball(SplitMix64& rng, int radius, TiicRooting rooting) {
    RootedTree tree;
    // With KeepBase the ball is rooted at the base vertex, whose thinning
    // threshold is 0, so it carries no hanging tree. With DropBase the base
    // vertex is removed and the ball is rooted at the next backbone vertex.
    int start_index = (rooting == TiicRooting::KeepBase) ? 0 : 1;
    double running_max = 0.0;
    if (rooting == TiicRooting::DropBase) running_max = rng.next_double();

    int prev = 0;
    for (int i = start_index; i <= start_index + radius; ++i) {
        int depth = i - start_index;
        int v;
        if (depth == 0) {
            v = 0;
        } else {
            // backbone edge from the previous vertex
            double w = rng.next_double();
            running_max = std::max(running_max, w);
            v = tree.add_child(prev);
        }
        // thinned hanging tree: survives as a Poisson(M_i) branching tree
        double threshold = (i == 0) ? 0.0 : running_max;
        if (threshold > 0.0 && depth < radius)
            graft(tree, v, sample_pgw(threshold, rng, radius - depth));
        prev = v;
    }
    return tree;
}

RootedTree sample_cayley(std::int64_t n, SplitMix64& rng) {
    if (n < 1) throw Error("sample_cayley: n must be positive");
    // random walk on the complete graph; first-entrance edges form a uniform
    // spanning tree, i.e. a uniform rooted labelled tree. Node id == label,
    // root is label 0.
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    visited[0] = true;
    std::int64_t seen = 1;
    std::int64_t cur = 0;
    while (seen < n) {
        std::int64_t nxt = static_cast<std::int64_t>(rng.next_double() * static_cast<double>(n));
        if (nxt >= n) nxt = n - 1;
        if (nxt == cur) continue;
        if (!visited[static_cast<std::size_t>(nxt)]) {
            visited[static_cast<std::size_t>(nxt)] = true;
            parent[static_cast<std::size_t>(nxt)] = static_cast<int>(cur);
            ++seen;
        }
        cur = nxt;
    }
    RootedTree out;
    out.kids.assign(static_cast<std::size_t>(n), {});
    for (std::int64_t v = 1; v < n; ++v)
        out.kids[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])].push_back(
            static_cast<int>(v));
    return out;
}

int tree_distance(const RootedTree& tree, int a, int b) {
    // depth and parent maps by BFS from the root
    std::vector<int> parent(static_cast<std::size_t>(tree.size()), -1);
    std::vector<int> depth(static_cast<std::size_t>(tree.size()), 0);
    std::vector<int> queue{0};
    std::size_t head = 0;
    while (head < queue.size()) {
        int v = queue[head++];
        for (int k : tree.kids[static_cast<std::size_t>(v)]) {
            parent[static_cast<std::size_t>(k)] = v;
            depth[static_cast<std::size_t>(k)] = depth[static_cast<std::size_t>(v)] + 1;
            queue.push_back(k);
        }
    }
    int d = 0;
    while (a != b) {
        if (depth[static_cast<std::size_t>(a)] < depth[static_cast<std::size_t>(b)]) std::swap(a, b);
        a = parent[static_cast<std::size_t>(a)];
        ++d;
    }
    return d;
}

ChainedCayley chained_cayley_ipc(const std::vector<std::int64_t>& sizes, SplitMix64& rng) {
    if (sizes.empty()) throw Error("chained_cayley_ipc: no sizes");
    ChainedCayley out;
    std::vector<int> prev_nodes;
    for (std::size_t t = 0; t < sizes.size(); ++t) {
        RootedTree part = sample_cayley(sizes[t], rng);
        int attach;
        if (t == 0) {
            attach = -1;
        } else {
            attach = prev_nodes[static_cast<std::size_t>(
                rng.next_double() * static_cast<double>(prev_nodes.size()))];
        }
        std::vector<int> map(static_cast<std::size_t>(part.size()), -1);
        if (t == 0) {
            map[0] = 0;
            out.tree = RootedTree();
        } else {
            map[0] = out.tree.add_child(attach);
        }
        for (int node = 0; node < part.size(); ++node)
            for (int k : part.kids[static_cast<std::size_t>(node)])
                map[static_cast<std::size_t>(k)] =
                    out.tree.add_child(map[static_cast<std::size_t>(node)]);
        out.chain_roots.push_back(map[0]);
        prev_nodes.clear();
        for (int m : map) prev_nodes.push_back(m);
    }
    return out;
}

BorelSampler::BorelSampler(double mu, std::int64_t table_max) : table_max_(table_max) {
    cdf_.reserve(static_cast<std::size_t>(table_max));
    double acc = 0.0;
    for (std::int64_t n = 1; n <= table_max; ++n) {
        acc += pgw_size_pmf(mu, n);
        cdf_.push_back(acc);
    }
}

std::int64_t BorelSampler::sample(SplitMix64& rng) const {
    double u = rng.next_double();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return table_max_ + 1;
    return 1 + static_cast<std::int64_t>(it - cdf_.begin());
}

std::int64_t sample_geometric(double x, SplitMix64& rng) {
    if (x <= 0.0) return 0;
    // inversion: floor(log(U) / log(x))
    double u = rng.next_double();
    if (u <= 0.0) u = 0x1.0p-53;
    return static_cast<std::int64_t>(std::floor(std::log(u) / std::log(x)));
}

} // namespace ipc
