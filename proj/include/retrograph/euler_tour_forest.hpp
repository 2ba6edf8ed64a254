#pragma once

#include <retrograph/core.hpp>

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

namespace retrograph {

// Forest of Euler tours kept in treaps with parent pointers. Each
// vertex occurrence is a marker node carrying two per-vertex values
// maintained by the caller: a flag (has incident tree edge at this
// level) and a key (minimum incident non-tree edge key). Subtree
// aggregates answer "does this component have a flagged vertex" and
// "what is the minimum key in this component".
//
// One arena can host many independent forests (e.g. one per level).
class EulerTourForest {
public:
    static EdgeKey inf_key() {
        EdgeKey k;
        k.weight = std::numeric_limits<Weight>::max();
        k.pair = VertexPair(std::numeric_limits<Vertex>::max() - 1,
                            std::numeric_limits<Vertex>::max());
        k.id = std::numeric_limits<EdgeId>::max();
        return k;
    }

    EulerTourForest() {
        nodes_.push_back(Node{});  // index 0 = null
        nodes_[0].cnt_markers = 0;
        nodes_[0].cnt_total = 0;
        nodes_[0].key_own = inf_key();
        nodes_[0].key_sub = inf_key();
    }

    int make_marker(Vertex v) {
        int m = alloc();
        nodes_[m].vertex = v;
        nodes_[m].cnt_markers = 1;
        pull(m);
        return m;
    }

    Vertex marker_vertex(int m) const { return nodes_[m].vertex; }

    int root(int x) const {
        while (nodes_[x].par != 0) x = nodes_[x].par;
        return x;
    }

    bool same_tree(int a, int b) const { return root(a) == root(b); }

    std::size_t tree_vertex_count(int root_node) const {
        return nodes_[root_node].cnt_markers;
    }

    bool tree_has_flag(int root_node) const { return nodes_[root_node].flag_sub; }

    const EdgeKey& tree_min_key(int root_node) const {
        return nodes_[root_node].key_sub;
    }

    // Any marker with its own flag set, inside the given tree.
    int find_flagged_marker(int u) const {
        assert(nodes_[u].flag_sub);
        while (true) {
            if (nodes_[nodes_[u].l].flag_sub) {
                u = nodes_[u].l;
            } else if (nodes_[u].flag_own) {
                return u;
            } else {
                u = nodes_[u].r;
            }
        }
    }

    void set_marker_flag(int m, bool flag) {
        nodes_[m].flag_own = flag;
        fix_to_root(m);
    }

    void set_marker_key(int m, const EdgeKey& key) {
        nodes_[m].key_own = key;
        fix_to_root(m);
    }

    // Joins the trees of two markers with a tree edge; returns the two
    // arc nodes representing it. The markers must be in distinct trees.
    std::pair<int, int> link(int marker_u, int marker_v, EdgeId eid) {
        int a = alloc();  // u -> v
        int b = alloc();  // v -> u
        nodes_[a].eid = nodes_[b].eid = eid;
        pull(a);
        pull(b);
        int tu = reroot(marker_u);
        int tv = reroot(marker_v);
        merge(merge(merge(tu, a), tv), b);
        return {a, b};
    }

    // Removes the tree edge represented by arcs (a, b); frees both arcs.
    void cut(int a, int b) {
        if (position(a) > position(b)) std::swap(a, b);
        auto [left, mid1] = split_before(a);
        auto [mid2, right] = split_after(b);  // b is in mid1's tree
        auto [a_only, inner1] = split_after(a);
        (void)a_only;
        auto [inner, b_only] = split_before(b);
        (void)b_only;
        assert(inner != 0);
        merge(left, right);
        release(a);
        release(b);
        (void)mid1;
        (void)mid2;
        (void)inner;
    }

    // In-order sequence of a tree; test helper.
    std::vector<int> tour(int root_node) const {
        std::vector<int> out;
        collect(root_node, out);
        return out;
    }

    bool is_marker(int x) const { return nodes_[x].vertex >= 0; }

private:
    struct Node {
        int par = 0, l = 0, r = 0;
        std::uint64_t prio = 0;
        Vertex vertex = -1;  // -1 for arc nodes
        EdgeId eid = 0;
        std::size_t cnt_markers = 0;
        std::size_t cnt_total = 1;
        bool flag_own = false;
        bool flag_sub = false;
        EdgeKey key_own;
        EdgeKey key_sub;
    };

    int alloc() {
        int u;
        if (free_ != 0) {
            u = free_;
            free_ = nodes_[u].par;
            nodes_[u] = Node{};
        } else {
            nodes_.push_back(Node{});
            u = static_cast<int>(nodes_.size()) - 1;
        }
        nodes_[u].prio = next_prio();
        nodes_[u].key_own = inf_key();
        nodes_[u].key_sub = inf_key();
        return u;
    }

    void release(int u) {
        assert(nodes_[u].par == 0 && nodes_[u].l == 0 && nodes_[u].r == 0);
        nodes_[u].par = free_;
        free_ = u;
    }

    std::uint64_t next_prio() {
        std::uint64_t z = (rng_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    void pull(int u) {
        const Node& L = nodes_[nodes_[u].l];
        const Node& R = nodes_[nodes_[u].r];
        Node& n = nodes_[u];
        n.cnt_markers = (n.vertex >= 0 ? 1 : 0) + L.cnt_markers + R.cnt_markers;
        n.cnt_total = 1 + L.cnt_total + R.cnt_total;
        n.flag_sub = n.flag_own || L.flag_sub || R.flag_sub;
        n.key_sub = n.key_own;
        if (L.key_sub < n.key_sub) n.key_sub = L.key_sub;
        if (R.key_sub < n.key_sub) n.key_sub = R.key_sub;
    }

    void fix_to_root(int u) {
        for (int x = u; x != 0; x = nodes_[x].par) pull(x);
    }

    std::size_t position(int x) const {
        std::size_t pos = nodes_[nodes_[x].l].cnt_total;
        int child = x;
        for (int p = nodes_[x].par; p != 0; child = p, p = nodes_[p].par)
            if (nodes_[p].r == child) pos += nodes_[nodes_[p].l].cnt_total + 1;
        return pos;
    }

    int merge(int a, int b) {
        if (a == 0) return b;
        if (b == 0) return a;
        if (nodes_[a].prio > nodes_[b].prio) {
            int r = merge(nodes_[a].r, b);
            nodes_[a].r = r;
            nodes_[r].par = a;
            pull(a);
            return a;
        }
        int l = merge(a, nodes_[b].l);
        nodes_[b].l = l;
        nodes_[l].par = b;
        pull(b);
        return b;
    }

    // Splits the tree containing x into (everything before x, x onward).
    std::pair<int, int> split_before(int x) {
        int left = nodes_[x].l;
        if (left != 0) {
            nodes_[left].par = 0;
            nodes_[x].l = 0;
        }
        int right = x;
        int child = x;
        int p = nodes_[x].par;
        nodes_[x].par = 0;
        pull(x);
        while (p != 0) {
            int next = nodes_[p].par;
            nodes_[p].par = 0;
            if (nodes_[p].r == child) {
                nodes_[p].r = 0;
                pull(p);
                left = merge(p, left);
            } else {
                nodes_[p].l = 0;
                pull(p);
                right = merge(right, p);
            }
            child = p;
            p = next;
        }
        return {left, right};
    }

    // Splits the tree containing x into (up to and including x, the rest).
    std::pair<int, int> split_after(int x) {
        int right = nodes_[x].r;
        if (right != 0) {
            nodes_[right].par = 0;
            nodes_[x].r = 0;
        }
        int left = x;
        int child = x;
        int p = nodes_[x].par;
        nodes_[x].par = 0;
        pull(x);
        while (p != 0) {
            int next = nodes_[p].par;
            nodes_[p].par = 0;
            if (nodes_[p].r == child) {
                nodes_[p].r = 0;
                pull(p);
                left = merge(p, left);
            } else {
                nodes_[p].l = 0;
                pull(p);
                right = merge(right, p);
            }
            child = p;
            p = next;
        }
        return {left, right};
    }

    // Rotates the tour so it starts at marker m; returns the new root.
    int reroot(int m) {
        auto [before, from] = split_before(m);
        return merge(from, before);
    }

    void collect(int u, std::vector<int>& out) const {
        if (u == 0) return;
        collect(nodes_[u].l, out);
        out.push_back(u);
        collect(nodes_[u].r, out);
    }

    std::vector<Node> nodes_;
    int free_ = 0;
    std::uint64_t rng_ = 0x8f3c9a1db2457e6full;
};

}  // namespace retrograph
