#pragma once

#include <retrograph/euler_tour_forest.hpp>
#include <retrograph/forest_engine.hpp>

#include <algorithm>
#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

namespace retrograph {

// Edge-level hierarchy in the style of poly-logarithmic dynamic MSF.
// F_i is the forest of tree edges with level >= i, one Euler tour
// forest per level; non-tree edges live at a level where their
// endpoints are connected in F_i. Insertions apply the cycle rule via
// a path-max query on the global forest; deleting a tree edge searches
// its level downward, pushing inside edges up, and picks the minimum
// crossing edge over all levels as the replacement.
class LeveledEngine final : public ForestEngine {
public:
    explicit LeveledEngine(Vertex n) : n_(n), vnode_(n, 0) {
        level_cap_ = 1;
        while ((Vertex(1) << level_cap_) < std::max<Vertex>(n, 2)) ++level_cap_;
        level_cap_ += 1;
        ensure_level(0);
    }

    Vertex vertex_count() const override { return n_; }
    std::size_t edge_count() const override { return edges_.size(); }

    InsertResult insert(Vertex u, Vertex v, Weight w) override {
        validate(u, v);
        EdgeId id = next_id_++;
        EdgeKey key{w, VertexPair(u, v), id};
        edges_.emplace(id, Rec{key});

        InsertResult res;
        res.id = id;
        if (!lct_.connected(vn(u), vn(v))) {
            attach_tree(id, 0);
            res.delta.added.push_back(id);
            return res;
        }
        int pm = lct_.path_max_node(vn(u), vn(v));
        EdgeKey pm_key = lct_.key(pm);
        if (key < pm_key) {
            // Displace the path-max edge. Cutting it from levels > 0
            // would strand non-tree edges whose level-j connectivity ran
            // through it, so file both edges at level 0 and let the
            // replacement search relink the cut; the new edge is the
            // unique crossing edge lighter than the displaced one, so it
            // wins, and the search re-files everything else it uncovers.
            const Rec& pm_rec = edges_.at(pm_key.id);
            const Vertex pu = pm_rec.key.pair.lo;
            const Vertex pv = pm_rec.key.pair.hi;
            const int pm_level = pm_rec.level;
            detach_tree(pm_key.id);
            add_nontree(pm_key.id, 0);
            add_nontree(id, 0);
            ForestDelta relink = replace_after_cut(pu, pv, pm_level);
            assert(relink.added.size() == 1 && relink.added[0] == id);
            res.delta.added = relink.added;
            res.delta.removed.push_back(pm_key.id);
        } else {
            add_nontree(id, 0);
        }
        return res;
    }

    ForestDelta erase(EdgeId id) override {
        auto it = edges_.find(id);
        if (it == edges_.end())
            raise(ErrorCode::UnknownEdge, "edge " + std::to_string(id));
        ForestDelta delta;
        if (!it->second.tree) {
            remove_nontree(id);
            edges_.erase(it);
            return delta;
        }
        const Vertex u = it->second.key.pair.lo;
        const Vertex v = it->second.key.pair.hi;
        const int lvl = it->second.level;
        detach_tree(id);
        edges_.erase(it);
        delta.removed.push_back(id);
        ForestDelta relink = replace_after_cut(u, v, lvl);
        for (EdgeId a : relink.added) delta.added.push_back(a);
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
        int level = 0;
        bool tree = false;
        int lct_node = 0;
        std::vector<std::pair<int, int>> arcs;  // ETT arcs per level 0..level
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

    void ensure_level(int i) {
        while (static_cast<int>(marker_.size()) <= i) {
            marker_.emplace_back(n_, 0);
            tree_adj_.emplace_back(n_);
            nontree_adj_.emplace_back(n_);
        }
    }

    int marker(int level, Vertex v) {
        if (marker_[level][v] == 0) marker_[level][v] = ett_.make_marker(v);
        return marker_[level][v];
    }

    void refresh_tree_flag(int level, Vertex v) {
        ett_.set_marker_flag(marker(level, v), !tree_adj_[level][v].empty());
    }

    void refresh_nontree_key(int level, Vertex v) {
        const auto& adj = nontree_adj_[level][v];
        ett_.set_marker_key(marker(level, v),
                            adj.empty() ? EulerTourForest::inf_key() : *adj.begin());
    }

    void attach_tree(EdgeId id, int level) {
        Rec& rec = edges_.at(id);
        ensure_level(level);
        rec.level = level;
        rec.tree = true;
        const Vertex u = rec.key.pair.lo;
        const Vertex v = rec.key.pair.hi;
        int en = lct_.make_keyed_node(rec.key);
        lct_.link(en, vn(u));
        lct_.link(vn(v), en);
        rec.lct_node = en;
        for (int j = 0; j <= level; ++j)
            rec.arcs.push_back(ett_.link(marker(j, u), marker(j, v), id));
        tree_adj_[level][u].insert(id);
        tree_adj_[level][v].insert(id);
        refresh_tree_flag(level, u);
        refresh_tree_flag(level, v);
        tree_.insert(rec.key);
    }

    void detach_tree(EdgeId id) {
        Rec& rec = edges_.at(id);
        const Vertex u = rec.key.pair.lo;
        const Vertex v = rec.key.pair.hi;
        tree_adj_[rec.level][u].erase(id);
        tree_adj_[rec.level][v].erase(id);
        refresh_tree_flag(rec.level, u);
        refresh_tree_flag(rec.level, v);
        for (auto [a, b] : rec.arcs) ett_.cut(a, b);
        rec.arcs.clear();
        lct_.cut(rec.lct_node, vnode_[u]);
        lct_.cut(rec.lct_node, vnode_[v]);
        lct_.free_node(rec.lct_node);
        rec.lct_node = 0;
        rec.tree = false;
        tree_.erase(rec.key);
    }

    void add_nontree(EdgeId id, int level) {
        Rec& rec = edges_.at(id);
        ensure_level(level);
        rec.level = level;
        rec.tree = false;
        nontree_adj_[level][rec.key.pair.lo].insert(rec.key);
        nontree_adj_[level][rec.key.pair.hi].insert(rec.key);
        refresh_nontree_key(level, rec.key.pair.lo);
        refresh_nontree_key(level, rec.key.pair.hi);
    }

    void remove_nontree(EdgeId id) {
        Rec& rec = edges_.at(id);
        nontree_adj_[rec.level][rec.key.pair.lo].erase(rec.key);
        nontree_adj_[rec.level][rec.key.pair.hi].erase(rec.key);
        refresh_nontree_key(rec.level, rec.key.pair.lo);
        refresh_nontree_key(rec.level, rec.key.pair.hi);
    }

    // Moves a level-i tree edge to level i+1 (it stays in F_j for j <= i).
    void push_tree_down(EdgeId id) {
        Rec& rec = edges_.at(id);
        const int i = rec.level;
        assert(i + 1 <= level_cap_);
        const Vertex u = rec.key.pair.lo;
        const Vertex v = rec.key.pair.hi;
        tree_adj_[i][u].erase(id);
        tree_adj_[i][v].erase(id);
        refresh_tree_flag(i, u);
        refresh_tree_flag(i, v);
        ensure_level(i + 1);
        rec.level = i + 1;
        tree_adj_[i + 1][u].insert(id);
        tree_adj_[i + 1][v].insert(id);
        refresh_tree_flag(i + 1, u);
        refresh_tree_flag(i + 1, v);
        rec.arcs.push_back(ett_.link(marker(i + 1, u), marker(i + 1, v), id));
    }

    void push_nontree_down(EdgeId id) {
        int level = edges_.at(id).level;
        remove_nontree(id);
        add_nontree(id, level + 1);
    }

    // After a tree edge between u and v at level `lvl` has been cut from
    // every forest, finds the minimum-key crossing edge over levels
    // lvl..0 and links it. Inside edges met on the way are pushed one
    // level up; crossing edges that lose to a lower-level winner are
    // re-filed at the winner's level, where their endpoints are
    // connected again.
    ForestDelta replace_after_cut(Vertex u, Vertex v, int lvl) {
        ForestDelta delta;
        std::vector<std::pair<EdgeKey, int>> crossing;  // (key, found level)
        for (int i = lvl; i >= 0; --i) {
            int ru = ett_.root(marker_[i][u]);
            int rv = ett_.root(marker_[i][v]);
            int rs = ett_.tree_vertex_count(ru) <= ett_.tree_vertex_count(rv) ? ru : rv;

            // Make the smaller side spanned at level i+1 so inside
            // non-tree edges can be pushed there.
            while (ett_.tree_has_flag(rs)) {
                int m = ett_.find_flagged_marker(rs);
                Vertex x = ett_.marker_vertex(m);
                while (!tree_adj_[i][x].empty())
                    push_tree_down(*tree_adj_[i][x].begin());
            }

            while (true) {
                EdgeKey mk = ett_.tree_min_key(rs);
                if (!(mk < EulerTourForest::inf_key())) break;
                const Rec& cand = edges_.at(mk.id);
                int rx = ett_.root(marker_[i][cand.key.pair.lo]);
                int ry = ett_.root(marker_[i][cand.key.pair.hi]);
                if (rx == ry) {
                    push_nontree_down(mk.id);
                } else {
                    remove_nontree(mk.id);  // stashed until the winner is known
                    crossing.emplace_back(mk, i);
                }
            }
        }

        if (crossing.empty()) return delta;
        auto best = std::min_element(
            crossing.begin(), crossing.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
        const EdgeKey best_key = best->first;
        const int best_level = best->second;
        attach_tree(best_key.id, best_level);
        delta.added.push_back(best_key.id);
        for (const auto& [key, found_level] : crossing) {
            if (key.id == best_key.id) continue;
            add_nontree(key.id, std::min(found_level, best_level));
        }
        return delta;
    }

    Vertex n_;
    int level_cap_;
    LinkCutTree lct_;
    std::vector<int> vnode_;
    EulerTourForest ett_;
    std::vector<std::vector<int>> marker_;
    std::vector<std::vector<std::set<EdgeId>>> tree_adj_;
    std::vector<std::vector<std::set<EdgeKey>>> nontree_adj_;
    std::set<EdgeKey> tree_;
    std::unordered_map<EdgeId, Rec> edges_;
    EdgeId next_id_ = 1;
};

enum class EngineKind { Baseline, Leveled };

inline std::unique_ptr<ForestEngine> make_engine(EngineKind kind, Vertex n) {
    if (kind == EngineKind::Leveled) return std::make_unique<LeveledEngine>(n);
    return std::make_unique<BaselineEngine>(n);
}

}  // namespace retrograph
