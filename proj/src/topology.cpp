#include "segconn/topology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "segconn/emst.hpp"

namespace segconn {

std::string TopologyTree::label(int v) const {
    return is_segment(v) ? "s" + std::to_string(v + 1) : "C" + std::to_string(v - k + 1);
}

std::string TopologyTree::to_string() const {
    std::string out;
    for (const auto& [u, v] : edges) {
        if (!out.empty()) {
            out += ' ';
        }
        out += label(u) + "-" + label(v);
    }
    return out;
}

bool is_valid_topology_tree(const TopologyTree& tree) {
    const int n = tree.node_count();
    if (tree.k < 0 || tree.ell < 0 || n == 0 || static_cast<int>(tree.edges.size()) != n - 1) {
        return false;
    }
    std::vector<int> degree(n, 0);
    DisjointSets sets(n);
    for (const auto& [u, v] : tree.edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
            return false;
        }
        if (!tree.is_segment(u) && !tree.is_segment(v)) {
            return false;
        }
        if (!sets.unite(u, v)) {
            return false;
        }
        ++degree[u];
        ++degree[v];
    }
    for (int s = 0; s < tree.k; ++s) {
        if (degree[s] > kMaxSegmentDegree) {
            return false;
        }
    }
    return true;
}

namespace {

// Union-find without path compression so unions can be undone in LIFO order.
class RollbackSets {
public:
    explicit RollbackSets(int n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int v) const {
        while (parent_[v] != v) {
            v = parent_[v];
        }
        return v;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (size_[a] < size_[b]) {
            std::swap(a, b);
        }
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
    }

    void undo() {
        const int b = history_.back();
        history_.pop_back();
        size_[parent_[b]] -= size_[b];
        parent_[b] = b;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> history_;
};

class TreeSearch {
public:
    TreeSearch(int k, int ell, const std::function<bool(const TopologyTree&)>& visit, const EdgeFilter& allowed)
        : k_(k), n_(k + ell), visit_(visit), sets_(k + ell), degree_(k + ell, 0) {
        tree_.k = k;
        tree_.ell = ell;
        for (int u = 0; u < k; ++u) {
            for (int v = u + 1; v < n_; ++v) {
                if (!allowed || allowed(u, v)) {
                    candidates_.emplace_back(u, v);
                }
            }
        }
    }

    void run() {
        if (n_ == 1) {
            visit_(tree_);
            return;
        }
        recurse(0);
    }

private:
    bool can_take(int u, int v) const {
        if (u < k_ && degree_[u] >= kMaxSegmentDegree) {
            return false;
        }
        if (v < k_ && degree_[v] >= kMaxSegmentDegree) {
            return false;
        }
        return sets_.find(u) != sets_.find(v);
    }

    // Whether the chosen edges plus candidates from `from` on can still span.
    bool completable(std::size_t from) const {
        DisjointSets probe(n_);
        int joined = 0;
        for (const auto& [u, v] : tree_.edges) {
            joined += probe.unite(u, v);
        }
        for (std::size_t i = from; i < candidates_.size() && joined < n_ - 1; ++i) {
            const auto [u, v] = candidates_[i];
            if ((u < k_ && degree_[u] >= kMaxSegmentDegree) || (v < k_ && degree_[v] >= kMaxSegmentDegree)) {
                continue;
            }
            joined += probe.unite(u, v);
        }
        return joined == n_ - 1;
    }

    bool recurse(std::size_t idx) {
        const std::size_t chosen = tree_.edges.size();
        const std::size_t needed = static_cast<std::size_t>(n_ - 1);
        if (chosen == needed) {
            return visit_(tree_);
        }
        if (candidates_.size() - idx < needed - chosen) {
            return true;
        }
        const auto [u, v] = candidates_[idx];
        if (can_take(u, v)) {
            sets_.unite(u, v);
            ++degree_[u];
            ++degree_[v];
            tree_.edges.emplace_back(u, v);
            const bool go_on = recurse(idx + 1);
            tree_.edges.pop_back();
            --degree_[u];
            --degree_[v];
            sets_.undo();
            if (!go_on) {
                return false;
            }
        }
        if (completable(idx + 1)) {
            return recurse(idx + 1);
        }
        return true;
    }

    int k_;
    int n_;
    const std::function<bool(const TopologyTree&)>& visit_;
    RollbackSets sets_;
    std::vector<int> degree_;
    std::vector<std::pair<int, int>> candidates_;
    TopologyTree tree_;
};

}  // namespace

void for_each_topology_tree(int k, int ell, const std::function<bool(const TopologyTree&)>& visit,
                            const EdgeFilter& allowed) {
    if (k < 1 || ell < 1 || ell > 4 * k + 1) {
        throw std::invalid_argument("topology trees need k >= 1 and 1 <= ell <= 4k + 1");
    }
    TreeSearch(k, ell, visit, allowed).run();
}

std::vector<TopologyTree> enumerate_topology_trees(int k, int ell) {
    std::vector<TopologyTree> out;
    for_each_topology_tree(k, ell, [&](const TopologyTree& t) {
        out.push_back(t);
        return true;
    });
    return out;
}

std::vector<SignificantSubtree> decompose_significant(const TopologyTree& tree) {
    const int n = tree.node_count();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : tree.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
    }

    std::vector<SignificantSubtree> out;
    std::vector<char> assigned(tree.k, 0);
    for (int root = 0; root < tree.k; ++root) {
        if (assigned[root]) {
            continue;
        }
        SignificantSubtree sub;
        sub.root = root;
        sub.parent.assign(n, -2);
        sub.segment_children.assign(n, {});
        sub.component_children.assign(n, {});
        sub.height.assign(n, 0);

        // Iterative DFS over segment nodes; components hang off as leaves.
        std::vector<int> order;
        std::vector<int> stack{root};
        sub.parent[root] = -1;
        assigned[root] = 1;
        while (!stack.empty()) {
            const int s = stack.back();
            stack.pop_back();
            order.push_back(s);
            for (int w : adj[s]) {
                if (w == sub.parent[s]) {
                    continue;
                }
                if (tree.is_segment(w)) {
                    sub.parent[w] = s;
                    assigned[w] = 1;
                    sub.segment_children[s].push_back(w);
                    sub.edges.emplace_back(std::min(s, w), std::max(s, w));
                    stack.push_back(w);
                } else {
                    sub.parent[w] = s;
                    sub.component_children[s].push_back(w);
                    sub.component_nodes.push_back(w);
                    sub.edges.emplace_back(std::min(s, w), std::max(s, w));
                }
            }
        }
        // Reverse preorder puts every child before its parent.
        sub.segment_nodes.assign(order.rbegin(), order.rend());
        for (int s : sub.segment_nodes) {
            int h = sub.component_children[s].empty() ? 0 : 1;
            for (int c : sub.segment_children[s]) {
                h = std::max(h, sub.height[c] + 1);
            }
            sub.height[s] = h;
        }
        std::sort(sub.component_nodes.begin(), sub.component_nodes.end());
        std::sort(sub.edges.begin(), sub.edges.end());
        out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace segconn
