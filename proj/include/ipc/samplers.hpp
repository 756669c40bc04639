#pragma once

#include <cstdint>
#include <vector>

#include "ipc/rng.hpp"
#include "ipc/tree.hpp"

namespace ipc {

// Poisson(mu) branching tree. depth_limit >= 0 truncates; max_nodes guards
// against runaway growth at mu close to or above 1.
RootedTree sample_pgw(double mu, SplitMix64& rng, int depth_limit = -1,
                      std::int64_t max_nodes = 1 << 20);

// Ball of the given radius around the root of the critical incipient
// structure: a one-way infinite path with independent critical Poisson trees
// hanging off every path vertex.
RootedTree sample_iic_ball(SplitMix64& rng, int radius);

// Ball around the root of the weighted-and-thinned variant. The backbone
// carries iid Uniform[0,1) edge weights; the hanging tree at backbone vertex
// i survives thinning at the running maximum M_i of the first i backbone
// edge weights (M_0 = 0). KeepBase roots the ball at the base vertex;
// DropBase removes the base vertex and roots at the next one.
enum class TiicRooting { KeepBase, DropBase };
RootedTree sample_tiic_star_ball(SplitMix64& rng, int radius,
                                 TiicRooting rooting = TiicRooting::KeepBase);

// Uniform rooted labelled tree on n vertices (random-walk construction);
// label i is node i of the result, root is label 0.
RootedTree sample_cayley(std::int64_t n, SplitMix64& rng);

// Graph distance between two nodes of a rooted tree.
int tree_distance(const RootedTree& tree, int a, int b);

// Chain of uniform labelled trees of the given sizes: the root of each tree
// after the first attaches to a uniform vertex of the previous one. Rooted at
// the first tree's root. Returns the tree and the node ids of the chain roots.
struct ChainedCayley {
    RootedTree tree;
    std::vector<int> chain_roots;
};
ChainedCayley chained_cayley_ipc(const std::vector<std::int64_t>& sizes, SplitMix64& rng);

// Total-progeny sampler for the Poisson(mu) branching process via an inverse
// CDF table; values past the table resolve to table_max + 1 (a tail bucket).
class BorelSampler {
public:
    explicit BorelSampler(double mu = 1.0, std::int64_t table_max = 1 << 20);
    std::int64_t sample(SplitMix64& rng) const;
    std::int64_t table_max() const { return table_max_; }

private:
    std::int64_t table_max_;
    std::vector<double> cdf_;
};

std::int64_t sample_geometric(double x, SplitMix64& rng);

} // namespace ipc
