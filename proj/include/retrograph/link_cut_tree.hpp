#pragma once

#include <retrograph/core.hpp>

#include <cassert>
#include <cstdint>
#include <vector>

namespace retrograph {

// Link-cut tree over an index arena. Every node optionally carries an
// EdgeKey; path queries report the node with the maximum key on the
// path, so tree edges are spliced in as their own nodes between their
// endpoints while plain vertices carry no key.
class LinkCutTree {
public:
    LinkCutTree() {
        // index 0 is the null sentinel with a minimal key
        nodes_.push_back(Node{});
        nodes_[0].key.weight = kMinWeight;
    }

    int make_node() {
        int u;
        if (free_ != 0) {
            u = free_;
            free_ = nodes_[u].par;
            nodes_[u] = Node{};
        } else {
            nodes_.push_back(Node{});
            u = static_cast<int>(nodes_.size()) - 1;
        }
        nodes_[u].key.weight = kMinWeight;
        nodes_[u].best = u;
        return u;
    }

    int make_keyed_node(const EdgeKey& key) {
        int u = make_node();
        nodes_[u].key = key;
        return u;
    }

    void free_node(int u) {
        assert(nodes_[u].par == 0 && nodes_[u].ch[0] == 0 && nodes_[u].ch[1] == 0);
        nodes_[u].par = free_;
        free_ = u;
    }

    const EdgeKey& key(int u) const { return nodes_[u].key; }

    bool connected(int u, int v) {
        if (u == v) return true;
        return find_root(u) == find_root(v);
    }

    // Attaches the tree containing x under y; x and y must be in
    // different trees.
    void link(int x, int y) {
        make_root(x);
        nodes_[x].par = y;
    }

    // Cuts the edge between adjacent represented-tree nodes x and y.
    void cut(int x, int y) {
        make_root(x);
        access(y);
        assert(nodes_[y].ch[0] == x && nodes_[x].ch[1] == 0);
        nodes_[y].ch[0] = 0;
        nodes_[x].par = 0;
        pull(y);
    }

    // Node holding the maximum key on the path x..y (inclusive).
    // Endpoints must be connected.
    int path_max_node(int x, int y) {
        make_root(x);
        access(y);
        return nodes_[y].best;
    }

    int find_root(int x) {
        access(x);
        while (nodes_[x].ch[0] != 0) {
            x = nodes_[x].ch[0];
            push(x);
        }
        splay(x);
        return x;
    }

private:
    static constexpr Weight kMinWeight = std::numeric_limits<Weight>::min();

    struct Node {
        int par = 0;
        int ch[2] = {0, 0};
        int best = 0;
        bool rev = false;
        EdgeKey key;
    };

    bool is_splay_root(int u) const {
        int p = nodes_[u].par;
        return p == 0 || (nodes_[p].ch[0] != u && nodes_[p].ch[1] != u);
    }

    void push(int u) {
        if (!nodes_[u].rev) return;
        nodes_[u].rev = false;
        std::swap(nodes_[u].ch[0], nodes_[u].ch[1]);
        for (int c : nodes_[u].ch)
            if (c != 0) nodes_[c].rev ^= true;
    }

    void pull(int u) {
        int best = u;
        for (int c : nodes_[u].ch) {
            int cb = nodes_[c].best;  // best of null node is 0 (minimal key)
            if (nodes_[best].key < nodes_[cb].key) best = cb;
        }
        nodes_[u].best = best;
    }

    void rotate(int u) {
        int p = nodes_[u].par;
        int g = nodes_[p].par;
        int dir = nodes_[p].ch[1] == u;
        if (!is_splay_root(p)) nodes_[g].ch[nodes_[g].ch[1] == p] = u;
        nodes_[u].par = g;
        nodes_[p].ch[dir] = nodes_[u].ch[dir ^ 1];
        if (nodes_[u].ch[dir ^ 1] != 0) nodes_[nodes_[u].ch[dir ^ 1]].par = p;
        nodes_[u].ch[dir ^ 1] = p;
        nodes_[p].par = u;
        pull(p);
        pull(u);
    }

    void splay(int u) {
        push_path(u);
        while (!is_splay_root(u)) {
            int p = nodes_[u].par;
            if (!is_splay_root(p)) {
                int g = nodes_[p].par;
                if ((nodes_[g].ch[1] == p) == (nodes_[p].ch[1] == u))
                    rotate(p);
                else
                    rotate(u);
            }
            rotate(u);
        }
    }

    void push_path(int u) {
        path_buf_.clear();
        int x = u;
        while (!is_splay_root(x)) {
            path_buf_.push_back(x);
            x = nodes_[x].par;
        }
        push(x);
        for (auto it = path_buf_.rbegin(); it != path_buf_.rend(); ++it) push(*it);
    }

    void access(int u) {
        int last = 0;
        for (int y = u; y != 0; y = nodes_[y].par) {
            splay(y);
            nodes_[y].ch[1] = last;
            pull(y);
            last = y;
        }
        splay(u);
    }

    void make_root(int u) {
        access(u);
        nodes_[u].rev ^= true;
        push(u);
    }

    std::vector<Node> nodes_;
    std::vector<int> path_buf_;
    int free_ = 0;
};

}  // namespace retrograph
