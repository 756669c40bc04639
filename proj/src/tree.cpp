#include "ipc/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "ipc/pointset.hpp"

namespace ipc {

namespace {

std::string encode(const RootedTree& tree, int node, int depth_left) {
    if (depth_left == 0) return "()";
    std::vector<std::string> parts;
    const auto& kids = tree.kids[static_cast<std::size_t>(node)];
    parts.reserve(kids.size());
    for (int k : kids) parts.push_back(encode(tree, k, depth_left - 1));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const auto& p : parts) out += p;
    out += ")";
    return out;
}

} // namespace

std::string canonical_shape(const RootedTree& tree, int depth_limit) {
    return encode(tree, 0, depth_limit);
}

RootedTree ball_as_rooted_tree(
    const std::function<std::vector<std::int64_t>(std::int64_t)>& neighbors,
    std::int64_t center, int radius) {
    RootedTree tree;
    struct Frame {
        std::int64_t vertex;
        std::int64_t from;
        int node;
        int depth;
    };
    const std::int64_t kNone = INT64_MIN;
    std::vector<Frame> queue{{center, kNone, 0, 0}};
    std::size_t head = 0;
    while (head < queue.size()) {
        Frame f = queue[head++];
        if (f.depth == radius) continue;
        for (std::int64_t nb : neighbors(f.vertex)) {
            if (nb == f.from) continue;
            int child = tree.add_child(f.node);
            queue.push_back({nb, f.vertex, child, f.depth + 1});
        }
    }
    return tree;
}

void census_add(Census& census, const std::string& shape) { ++census[shape]; }

void save_census_json(const Census& census, const std::string& path) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [shape, count] : census) j[shape] = count;
    std::ofstream out(path);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

namespace {

double unordered_factor(const RootedTree& tree, int node, std::string& shape_out) {
    std::vector<std::string> shapes;
    double factor = 1.0;
    for (int k : tree.kids[static_cast<std::size_t>(node)]) {
        std::string s;
        factor *= unordered_factor(tree, k, s);
        shapes.push_back(std::move(s));
    }
    std::sort(shapes.begin(), shapes.end());
    // multiplicity factorial per repeated child shape
    std::size_t i = 0;
    while (i < shapes.size()) {
        std::size_t j = i;
        while (j < shapes.size() && shapes[j] == shapes[i]) ++j;
        for (std::size_t m = 2; m <= j - i; ++m) factor *= static_cast<double>(m);
        i = j;
    }
    shape_out = "(";
    for (const auto& s : shapes) shape_out += s;
    shape_out += ")";
    return factor;
}

} // namespace

double pgw_unordered_prob(const RootedTree& tree) {
    std::string shape;
    double aut = unordered_factor(tree, 0, shape);
    return std::exp(-static_cast<double>(tree.size())) / aut;
}

} // namespace ipc
