#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ipc {

// Plain rooted tree; node 0 is the root. Used for reference samplers and for
// neighborhood balls cut out of larger structures.
struct RootedTree {
    std::vector<std::vector<int>> kids;

    RootedTree() { kids.emplace_back(); }
    int size() const { return static_cast<int>(kids.size()); }
    int add_child(int parent) {
        kids.emplace_back();
        int id = static_cast<int>(kids.size()) - 1;
        kids[static_cast<std::size_t>(parent)].push_back(id);
        return id;
    }
};

// Canonical encoding of the unlabelled rooted shape: each node maps to
// "(" + concatenation of its children's sorted encodings + ")". Two rooted
// trees are isomorphic iff the encodings agree. depth_limit < 0 disables
// truncation.
std::string canonical_shape(const RootedTree& tree, int depth_limit = -1);

// Ball of the given radius around center in an undirected locally finite
// graph, presented by a neighbor oracle over int64 vertex ids. The result is
// the ball as a rooted tree (valid when the graph is a tree/forest).
RootedTree ball_as_rooted_tree(const std::function<std::vector<std::int64_t>(std::int64_t)>& neighbors,
                               std::int64_t center, int radius);

// Shape histogram over canonical encodings.
using Census = std::map<std::string, std::int64_t>;

void census_add(Census& census, const std::string& shape);
void save_census_json(const Census& census, const std::string& path);

// Probability of an unlabelled shape under the critical Poisson branching
// tree: e^{-|U|} / prod over nodes of prod over child-shape classes of
// (multiplicity factorial).
double pgw_unordered_prob(const RootedTree& tree);

} // namespace ipc
