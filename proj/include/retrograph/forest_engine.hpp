#pragma once

#include <retrograph/core.hpp>
#include <retrograph/link_cut_tree.hpp>

#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

namespace retrograph {

struct PathMaxResult {
    EdgeId id = 0;
    Weight weight = 0;
    VertexPair pair;
};

struct ForestEdge {
    EdgeId id = 0;
    VertexPair pair;
    Weight weight = 0;
};

// Tree edges that entered / left the maintained forest as a result of
// one engine operation. Consumers (e.g. the order-statistic index over
// tree-edge weights) apply it verbatim.
struct ForestDelta {
    std::vector<EdgeId> added;
    std::vector<EdgeId> removed;
};

struct InsertResult {
    EdgeId id = 0;
    ForestDelta delta;
};

// Maintains a minimum spanning forest of a weighted multigraph under
// edge insertions and deletions. The forest is unique: edges are
// totally ordered by (weight, endpoints, id).
class ForestEngine {
public:
    virtual ~ForestEngine() = default;

    virtual Vertex vertex_count() const = 0;
    virtual std::size_t edge_count() const = 0;

    virtual InsertResult insert(Vertex u, Vertex v, Weight w) = 0;
    virtual ForestDelta erase(EdgeId id) = 0;

    virtual bool connected(Vertex u, Vertex v) = 0;
    virtual PathMaxResult path_max(Vertex u, Vertex v) = 0;

    // Tree edges in canonical (weight, endpoints, id) order; at most n-1.
    virtual std::vector<ForestEdge> forest() const = 0;
    virtual std::size_t forest_size() const = 0;
};

inline Weight forest_weight(const ForestEngine& engine) {
    Weight total = 0;
    for (const auto& e : engine.forest()) total += e.weight;
    return total;
}

// Link-cut-tree engine. Insertion applies the cycle rule via a path-max
// query; deletion of a tree edge scans the stored non-tree edges in
// weight order for the minimum replacement, O(m) worst case.
class BaselineEngine final : public ForestEngine {
public:
    explicit BaselineEngine(Vertex n) : n_(n), vnode_(n, 0) {}

    Vertex vertex_count() const override { return n_; }
    std::size_t edge_count() const override { return edges_.size(); }

    InsertResult insert(Vertex u, Vertex v, Weight w) override {
        validate(u, v);
        EdgeId id = next_id_++;
        EdgeKey key{w, VertexPair(u, v), id};
        edges_.emplace(id, Rec{key, 0});

        InsertResult res;
        res.id = id;
        if (!lct_.connected(vn(u), vn(v))) {
            attach(id);
            res.delta.added.push_back(id);
            return res;
        }
        int pm = lct_.path_max_node(vn(u), vn(v));
        EdgeKey pm_key = lct_.key(pm);
        if (key < pm_key) {
            detach(pm_key.id);
            nontree_.insert(pm_key);
            attach(id);
            res.delta.added.push_back(id);
            res.delta.removed.push_back(pm_key.id);
        } else {
            nontree_.insert(key);
        }
        return res;
    }

    ForestDelta erase(EdgeId id) override {
        auto it = edges_.find(id);
        if (it == edges_.end())
            raise(ErrorCode::UnknownEdge, "edge " + std::to_string(id));
        ForestDelta delta;
        const EdgeKey key = it->second.key;
        if (it->second.lct_node == 0) {
            nontree_.erase(key);
            edges_.erase(it);
            return delta;
        }
        const Vertex u = key.pair.lo;
        detach(id);
        edges_.erase(it);
        delta.removed.push_back(id);

        // Minimum replacement: first non-tree edge (in key order) with
        // exactly one endpoint in u's component.
        for (auto nt = nontree_.begin(); nt != nontree_.end(); ++nt) {
            const Rec& cand = edges_.at(nt->id);
            bool a = lct_.connected(vn(cand.key.pair.lo), vn(u));
            bool b = lct_.connected(vn(cand.key.pair.hi), vn(u));
            if (a != b) {
                EdgeId rid = nt->id;
                nontree_.erase(nt);
                attach(rid);
                delta.added.push_back(rid);
                break;
            }
        }
        return delta;
    }

    bool connected(Vertex u, Vertex v) override {
        validate_vertices(u, v);
        if (u == v) return true;
        if (vnode_[u] == 0 || vnode_[v] == 0) return false;
        return lct_.connected(vnode_[u], vnode_[v]);
    }

    PathMaxResult path_max(Vertex u, Vertex v) override {
        validate_vertices(u, v);
        if (u == v || !connected(u, v))
            raise(ErrorCode::NotConnected,
                  std::to_string(u) + ".." + std::to_string(v));
        int pm = lct_.path_max_node(vnode_[u], vnode_[v]);
        const EdgeKey& key = lct_.key(pm);
        return PathMaxResult{key.id, key.weight, key.pair};
    }

    std::vector<ForestEdge> forest() const override {
        std::vector<ForestEdge> out;
        out.reserve(tree_.size());
        for (const EdgeKey& k : tree_)
            out.push_back(ForestEdge{k.id, k.pair, k.weight});
        return out;
    }

    std::size_t forest_size() const override { return tree_.size(); }

private:
    struct Rec {
        EdgeKey key;
        int lct_node = 0;  // 0 while the edge is non-tree
    };

    void validate(Vertex u, Vertex v) const {
        validate_vertices(u, v);
        if (u == v) raise(ErrorCode::InvalidVertex, "self-loop");
    }

    void validate_vertices(Vertex u, Vertex v) const {
        check_vertex(u, n_);
        check_vertex(v, n_);
    }

    int vn(Vertex v) {
        if (vnode_[v] == 0) vnode_[v] = lct_.make_node();
        return vnode_[v];
    }

    void attach(EdgeId id) {
        Rec& rec = edges_.at(id);
        int en = lct_.make_keyed_node(rec.key);
        lct_.link(en, vn(rec.key.pair.lo));
        lct_.link(vn(rec.key.pair.hi), en);
        rec.lct_node = en;
        tree_.insert(rec.key);
    }

    void detach(EdgeId id) {
        Rec& rec = edges_.at(id);
        lct_.cut(rec.lct_node, vnode_[rec.key.pair.lo]);
        lct_.cut(rec.lct_node, vnode_[rec.key.pair.hi]);
        lct_.free_node(rec.lct_node);
        rec.lct_node = 0;
        tree_.erase(rec.key);
    }

    Vertex n_;
    LinkCutTree lct_;
    std::vector<int> vnode_;
    std::unordered_map<EdgeId, Rec> edges_;
    std::set<EdgeKey> tree_;
    std::set<EdgeKey> nontree_;
    EdgeId next_id_ = 1;
};

}  // namespace retrograph
