#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace retrograph {

// Balanced multiset of 64-bit keys with subtree counts, supporting
// insert / erase / rank (count of keys strictly below a bound).
// Treap with a fixed-seed generator so behaviour is deterministic.
class OrderStatisticTree {
public:
    void insert(std::int64_t key) {
        root_ = insert_(root_, make_node(key));
        ++size_;
    }

    // Removes one occurrence; returns false if the key is absent.
    bool erase(std::int64_t key) {
        bool erased = false;
        root_ = erase_(root_, key, erased);
        if (erased) --size_;
        return erased;
    }

    // Number of stored keys strictly less than bound.
    std::size_t rank_below(std::int64_t bound) const {
        std::size_t r = 0;
        int u = root_;
        while (u != -1) {
            if (nodes_[u].key < bound) {
                r += 1 + count(nodes_[u].left);
                u = nodes_[u].right;
            } else {
                u = nodes_[u].left;
            }
        }
        return r;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    std::vector<std::int64_t> keys() const {
        std::vector<std::int64_t> out;
        out.reserve(size_);
        collect_(root_, out);
        return out;
    }

private:
    struct Node {
        std::int64_t key;
        std::uint64_t prio;
        int left = -1;
        int right = -1;
        std::size_t cnt = 1;
    };

    std::size_t count(int u) const { return u == -1 ? 0 : nodes_[u].cnt; }

    void pull(int u) {
        nodes_[u].cnt = 1 + count(nodes_[u].left) + count(nodes_[u].right);
    }

    int make_node(std::int64_t key) {
        if (free_ != -1) {
            int u = free_;
            free_ = nodes_[u].left;
            nodes_[u] = Node{key, next_prio(), -1, -1, 1};
            return u;
        }
        nodes_.push_back(Node{key, next_prio(), -1, -1, 1});
        return static_cast<int>(nodes_.size()) - 1;
    }

    std::uint64_t next_prio() {
        // splitmix64
        std::uint64_t z = (rng_state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    int insert_(int u, int node) {
        if (u == -1) return node;
        if (nodes_[node].prio > nodes_[u].prio) {
            split_(u, nodes_[node].key, nodes_[node].left, nodes_[node].right);
            pull(node);
            return node;
        }
        if (nodes_[node].key < nodes_[u].key)
            nodes_[u].left = insert_(nodes_[u].left, node);
        else
            nodes_[u].right = insert_(nodes_[u].right, node);
        pull(u);
        return u;
    }

    void split_(int u, std::int64_t key, int& left, int& right) {
        if (u == -1) {
            left = right = -1;
            return;
        }
        if (nodes_[u].key < key) {
            split_(nodes_[u].right, key, nodes_[u].right, right);
            left = u;
        } else {
            split_(nodes_[u].left, key, left, nodes_[u].left);
            right = u;
        }
        pull(u);
    }

    int merge_(int a, int b) {
        if (a == -1) return b;
        if (b == -1) return a;
        if (nodes_[a].prio > nodes_[b].prio) {
            nodes_[a].right = merge_(nodes_[a].right, b);
            pull(a);
            return a;
        }
        nodes_[b].left = merge_(a, nodes_[b].left);
        pull(b);
        return b;
    }

    int erase_(int u, std::int64_t key, bool& erased) {
        if (u == -1) return -1;
        if (nodes_[u].key == key) {
            erased = true;
            int r = merge_(nodes_[u].left, nodes_[u].right);
            nodes_[u].left = free_;  // recycle
            free_ = u;
            return r;
        }
        if (key < nodes_[u].key)
            nodes_[u].left = erase_(nodes_[u].left, key, erased);
        else
            nodes_[u].right = erase_(nodes_[u].right, key, erased);
        pull(u);
        return u;
    }

    void collect_(int u, std::vector<std::int64_t>& out) const {
        if (u == -1) return;
        collect_(nodes_[u].left, out);
        out.push_back(nodes_[u].key);
        collect_(nodes_[u].right, out);
    }

    std::vector<Node> nodes_;
    int root_ = -1;
    int free_ = -1;
    std::size_t size_ = 0;
    std::uint64_t rng_state_ = 0x1234abcd5678ef01ull;
};

}  // namespace retrograph
