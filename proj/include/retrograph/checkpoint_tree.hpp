#pragma once

#include <retrograph/timeline.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace retrograph {

// Identity of an edge instance inside the checkpoint tree: every
// re-insertion of a pair is a new edge, so the lifespan start
// disambiguates.
struct LifespanKey {
    VertexPair pair;
    Time start;

    friend bool operator==(const LifespanKey& a, const LifespanKey& b) {
        return a.pair == b.pair && a.start == b.start;
    }
    friend bool operator<(const LifespanKey& a, const LifespanKey& b) {
        if (a.pair != b.pair) return a.pair < b.pair;
        return a.start < b.start;
    }
};

struct SummaryEdge {
    LifespanKey key;
    VertexPair pair;
    Weight weight = 1;
};

struct InvariantReport {
    std::vector<std::string> violations;
    std::size_t nodes = 0;
    std::size_t placements = 0;
    std::size_t stored_edges = 0;
    bool ok() const { return violations.empty(); }
};

namespace detail {
struct CheckpointTestAccess;
}

// Scapegoat tree over the intervals between consecutive update times.
// Each node u covers the interval I_u spanned by its leaves and stores,
// in a problem-specific Summary, exactly the edges for which I_u is a
// maximal interval contained in the edge's lifespan. Along any
// root-to-leaf path the stored sets are disjoint and union to E_t.
//
// Summary must provide add(const SummaryEdge&) and
// remove(const SummaryEdge&); its state must be a pure function of the
// multiset of stored edges.
template <class Summary>
class CheckpointTree {
public:
    struct Node {
        Lifespan interval;
        Node* parent = nullptr;
        Node* left = nullptr;
        Node* right = nullptr;
        std::size_t leaves = 1;
        bool is_leaf = true;
        Summary summary;
        std::set<LifespanKey> dset;

        explicit Node(Summary s) : summary(std::move(s)) {}
    };

    using SummaryFactory = std::function<Summary()>;

    explicit CheckpointTree(SummaryFactory factory)
        : factory_(std::move(factory)) {}

    CheckpointTree(const CheckpointTree&) = delete;
    CheckpointTree& operator=(const CheckpointTree&) = delete;

    ~CheckpointTree() { destroy(root_); }

    const Node* root() const { return root_; }
    std::size_t leaf_count() const { return root_ ? root_->leaves : 0; }

    std::size_t height() const { return root_ ? node_height(root_) : 0; }

    std::uint64_t summary_adds() const { return summary_adds_; }
    std::uint64_t summary_removes() const { return summary_removes_; }
    std::uint64_t rebuild_count() const { return rebuild_count_; }

    // Nodes from the leaf whose interval contains t up to the root;
    // empty when t precedes the first update (the graph is empty there).
    std::vector<const Node*> root_path(Time t) const {
        std::vector<const Node*> path;
        if (root_ == nullptr || !(root_->interval.contains(t))) return path;
        const Node* u = root_;
        while (true) {
            path.push_back(u);
            if (u->is_leaf) break;
            u = u->left->interval.contains(t) ? u->left : u->right;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    // Canonical set of maximal nodes tiling L; endpoints must align with
    // leaf boundaries.
    std::vector<const Node*> place(const Lifespan& L) const {
        check_alignment(L);
        std::vector<Node*> tiles;
        collect_tiles(root_, L, tiles);
        return {tiles.begin(), tiles.end()};
    }

    void apply_create(const Update& upd, const LifespanDelta& delta) {
        for (const auto& rec : delta.removed) unplace(key_of(rec), /*keep=*/false);

        Node* changed = nullptr;
        std::vector<LifespanKey> rehome;
        if (root_ == nullptr) {
            root_ = new_leaf({upd.time, Time::now()});
            leaf_by_lo_.emplace(upd.time.value, root_);
        } else if (upd.time < root_->interval.start) {
            // New earliest update: a fresh leaf (t, t_first] joins in
            // front, and ancestors of the old first leaf grow left. Only
            // the lifespan starting at the old first time can have tiles
            // fused on that spine; re-place it.
            collect_key(rehome, by_start_, root_->interval.start.value);
            unplace_all(rehome);
            Node* first = leaf_by_lo_.begin()->second;
            Node* u = new_internal();
            Node* fresh = new_leaf({upd.time, first->interval.start});
            swap_into_position(first, u);
            adopt(u, fresh, first);
            leaf_by_lo_.emplace(upd.time.value, fresh);
            update_upward(u);
            changed = u;
        } else {
            Node* leaf = locate_leaf(upd.time);
            assert(leaf != nullptr && leaf->interval.start < upd.time);
            // The leaf object turns internal in place, keeping its stored
            // edges: its interval and parent are unchanged, so the
            // storage rule is unaffected.
            Node* l = new_leaf({leaf->interval.start, upd.time});
            Node* r = new_leaf({upd.time, leaf->interval.end});
            leaf->is_leaf = false;
            adopt(leaf, l, r);
            leaf_by_lo_[leaf->interval.start.value] = l;
            leaf_by_lo_.emplace(upd.time.value, r);
            update_upward(leaf);
            changed = leaf;
        }

        replace_all(rehome);
        for (const auto& rec : delta.added) place_new(rec);
        if (changed != nullptr) rebalance_from(changed);
    }

    void apply_cancel(Time t, const LifespanDelta& delta) {
        for (const auto& rec : delta.removed) unplace(key_of(rec), /*keep=*/false);

        auto it = leaf_by_lo_.find(t.value);
        assert(it != leaf_by_lo_.end());
        Node* owned = it->second;  // the leaf (t, next]
        std::vector<LifespanKey> rehome;

        if (it == leaf_by_lo_.begin()) {
            // Cancelling the earliest update: its leaf disappears and the
            // spine above shrinks on the left, which can fuse the tiles
            // of the lifespan starting at the new first time.
            if (owned == root_) {
                assert(placements_.empty());
                destroy(root_);
                root_ = nullptr;
                leaf_by_lo_.clear();
                return;
            }
            auto next_it = std::next(it);
            collect_key(rehome, by_start_, next_it->first);
            for (const LifespanKey& k : owned->dset) rehome.push_back(k);
            Node* parent = owned->parent;
            for (const LifespanKey& k : parent->dset) rehome.push_back(k);
            unplace_all(rehome);

            Node* sibling = other_child(parent, owned);
            collapse(parent, sibling);
            delete owned;
            delete parent;
            leaf_by_lo_.erase(it);
            update_upward(sibling);
            replace_all(rehome);
            for (const auto& rec : delta.added) place_new(rec);
            rebalance_from(sibling);
            return;
        }

        // General merge: predecessor leaf A = (prev, t] disappears and
        // the owned leaf grows to (prev, next]. Ancestors of A shrink on
        // the right, so the lifespan ending exactly at prev can need its
        // tiles re-fused; everything A or A's collapsing parent stored is
        // re-placed (their coverage moves into the grown leaf's side).
        Node* a = std::prev(it)->second;
        assert(a->interval.end == t);
        const Time a_lo = a->interval.start;
        collect_key(rehome, by_end_, a_lo.value);
        for (const LifespanKey& k : a->dset) rehome.push_back(k);
        Node* parent = a->parent;
        for (const LifespanKey& k : parent->dset) rehome.push_back(k);
        unplace_all(rehome);

        Node* sibling = other_child(parent, a);
        collapse(parent, sibling);
        delete a;
        delete parent;
        owned->interval.start = a_lo;
        leaf_by_lo_.erase(a_lo.value);
        leaf_by_lo_.erase(it);
        leaf_by_lo_.emplace(a_lo.value, owned);
        update_upward(owned);
        update_upward(sibling);

        replace_all(rehome);
        for (const auto& rec : delta.added) place_new(rec);
        rebalance_from(sibling);
    }

    // Full invariant audit; sampled_times root paths are checked for
    // disjointness and exact E_t coverage.
    InvariantReport check_invariants(int sampled_times = 16) const {
        InvariantReport report;
        if (root_ == nullptr) {
            if (!placements_.empty())
                report.violations.push_back("placements on empty tree");
            return report;
        }
        check_structure(root_, report);
        report.placements = placements_.size();

        const std::size_t h = height();
        const std::size_t t_leaves = leaf_count();
        if (t_leaves >= 2) {
            double bound = 2.0 * std::log2(static_cast<double>(t_leaves)) + 2.0;
            if (static_cast<double>(h) > bound)
                report.violations.push_back(
                    "height " + std::to_string(h) + " exceeds 2*log2(T)+2");
        }

        for (const auto& [key, rec] : placements_) {
            const Lifespan span{key.start, rec.end};
            if (rec.tiles.empty())
                report.violations.push_back("lifespan with no tiles");
            if (rec.tiles.size() > 2 * (h + 1))
                report.violations.push_back("placement exceeds 2*(height+1) nodes");
            std::vector<Lifespan> covered;
            for (Node* u : rec.tiles) {
                report.stored_edges += 1;
                if (!contains(span, u->interval))
                    report.violations.push_back("tile interval outside lifespan");
                if (u != root_ && contains(span, u->parent->interval))
                    report.violations.push_back("tile is not maximal");
                if (u->dset.count(key) == 0)
                    report.violations.push_back("tile missing dset entry");
                covered.push_back(u->interval);
            }
            std::sort(covered.begin(), covered.end(),
                      [](const Lifespan& x, const Lifespan& y) {
                          return x.start < y.start;
                      });
            Time cursor = span.start;
            bool tiled = true;
            for (const Lifespan& c : covered) {
                if (c.start != cursor) tiled = false;
                cursor = c.end;
            }
            if (!tiled || cursor != span.end)
                report.violations.push_back("tiles do not tile the lifespan exactly");
        }

        std::size_t dset_total = 0;
        accumulate_dset(root_, dset_total);
        if (dset_total != report.stored_edges)
            report.violations.push_back("dset entries do not match placements");

        check_sampled_paths(sampled_times, report);
        return report;
    }

private:
    friend struct detail::CheckpointTestAccess;

    struct Placement {
        Weight weight = 1;
        Time end;
        std::vector<Node*> tiles;
    };

    static LifespanKey key_of(const LifespanRec& rec) {
        return LifespanKey{rec.pair, rec.span.start};
    }

    static bool contains(const Lifespan& outer, const Lifespan& inner) {
        return outer.start <= inner.start && inner.end <= outer.end;
    }

    static bool overlaps(const Lifespan& a, const Lifespan& b) {
        return a.start < b.end && b.start < a.end;
    }

    static std::size_t node_height(const Node* u) {
        if (u->is_leaf) return 0;
        return 1 + std::max(node_height(u->left), node_height(u->right));
    }

    Node* new_leaf(const Lifespan& interval) {
        Node* n = new Node(factory_());
        n->interval = interval;
        return n;
    }

    Node* new_internal() {
        Node* n = new Node(factory_());
        n->is_leaf = false;
        return n;
    }

    void destroy(Node* u) {
        if (u == nullptr) return;
        destroy(u->left);
        destroy(u->right);
        delete u;
    }

    static Node* other_child(Node* parent, Node* child) {
        return parent->left == child ? parent->right : parent->left;
    }

    // Puts `incoming` where `current` sits (same parent slot or root).
    void swap_into_position(Node* current, Node* incoming) {
        incoming->parent = current->parent;
        if (current->parent == nullptr)
            root_ = incoming;
        else if (current->parent->left == current)
            current->parent->left = incoming;
        else
            current->parent->right = incoming;
    }

    void adopt(Node* parent, Node* l, Node* r) {
        parent->left = l;
        parent->right = r;
        l->parent = parent;
        r->parent = parent;
        pull(parent);
    }

    // Removes `parent` from the tree, promoting `survivor` into its slot.
    void collapse(Node* parent, Node* survivor) {
        swap_into_position(parent, survivor);
        // survivor keeps its own interval/leaves; parent's stored edges
        // were re-homed by the caller.
        assert(parent->dset.empty());
    }

    void pull(Node* u) {
        if (u->is_leaf) return;
        u->leaves = u->left->leaves + u->right->leaves;
        u->interval = {u->left->interval.start, u->right->interval.end};
    }

    void update_upward(Node* u) {
        for (Node* x = u; x != nullptr; x = x->parent) pull(x);
    }

    Node* locate_leaf(Time t) {
        auto it = leaf_by_lo_.upper_bound(t.value);
        if (it == leaf_by_lo_.begin()) return nullptr;
        Node* leaf = std::prev(it)->second;
        return leaf->interval.contains(t) ? leaf : nullptr;
    }

    void check_alignment(const Lifespan& L) const {
        bool lo_ok = leaf_by_lo_.count(L.start.value) != 0;
        bool hi_ok = L.end.is_now() || leaf_by_lo_.count(L.end.value) != 0;
        if (!lo_ok || !hi_ok || !(L.start < L.end))
            raise(ErrorCode::MisalignedLifespan,
                  "(" + to_string(L.start) + "," + to_string(L.end) + "]");
    }

    void collect_tiles(Node* u, const Lifespan& L, std::vector<Node*>& out) const {
        if (u == nullptr || !overlaps(u->interval, L)) return;
        if (contains(L, u->interval)) {
            out.push_back(u);
            return;
        }
        collect_tiles(u->left, L, out);
        collect_tiles(u->right, L, out);
    }

    void place_new(const LifespanRec& rec) {
        const LifespanKey key = key_of(rec);
        auto [it, inserted] =
            placements_.emplace(key, Placement{rec.weight, rec.span.end, {}});
        assert(inserted);
        (void)inserted;
        by_start_.emplace(rec.span.start.value, key);
        if (rec.span.end.finite()) by_end_.emplace(rec.span.end.value, key);
        install(key, it->second);
    }

    void install(const LifespanKey& key, Placement& rec) {
        const Lifespan span{key.start, rec.end};
        check_alignment(span);
        collect_tiles(root_, span, rec.tiles);
        const SummaryEdge edge{key, key.pair, rec.weight};
        for (Node* u : rec.tiles) {
            u->summary.add(edge);
            u->dset.insert(key);
            ++summary_adds_;
        }
    }

    void unplace(const LifespanKey& key, bool keep) {
        auto it = placements_.find(key);
        assert(it != placements_.end());
        const SummaryEdge edge{key, key.pair, it->second.weight};
        for (Node* u : it->second.tiles) {
            u->summary.remove(edge);
            u->dset.erase(key);
            ++summary_removes_;
        }
        it->second.tiles.clear();
        if (!keep) {
            by_start_.erase(key.start.value);
            if (it->second.end.finite()) by_end_.erase(it->second.end.value);
            placements_.erase(it);
        }
    }

    void unplace_all(std::vector<LifespanKey>& keys) {
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (const LifespanKey& k : keys) unplace(k, /*keep=*/true);
    }

    void replace_all(const std::vector<LifespanKey>& keys) {
        for (const LifespanKey& k : keys) install(k, placements_.at(k));
    }

    static void collect_key(std::vector<LifespanKey>& out,
                            const std::map<std::int64_t, LifespanKey>& index,
                            std::int64_t value) {
        auto it = index.find(value);
        if (it != index.end()) out.push_back(it->second);
    }

    // ---- scapegoat rebuild ----

    void rebalance_from(Node* changed) {
        Node* scapegoat = nullptr;
        for (Node* x = changed; x != nullptr && x->parent != nullptr; x = x->parent) {
            Node* sib = other_child(x->parent, x);
            if (x->leaves > 2 * sib->leaves || sib->leaves > 2 * x->leaves)
                scapegoat = x->parent;  // highest violator wins
        }
        if (scapegoat != nullptr) rebuild(scapegoat);
    }

    void rebuild(Node* w) {
        ++rebuild_count_;
        std::vector<Node*> leaves;
        collect_leaves(w, leaves);

        std::set<LifespanKey> affected;
        collect_affected(w, w, affected);
        std::vector<LifespanKey> keys(affected.begin(), affected.end());
        unplace_all(keys);

        destroy_internals_below(w);
        assert(leaves.size() >= 2);
        auto [l, r] = build_balanced(leaves, 0, leaves.size());
        adopt(w, l, r);
        replace_all(keys);
    }

    void collect_leaves(Node* u, std::vector<Node*>& out) {
        if (u->is_leaf) {
            out.push_back(u);
            return;
        }
        collect_leaves(u->left, out);
        collect_leaves(u->right, out);
    }

    void collect_affected(Node* u, Node* w, std::set<LifespanKey>& out) {
        if (u != w)
            for (const LifespanKey& k : u->dset) out.insert(k);
        if (!u->is_leaf) {
            collect_affected(u->left, w, out);
            collect_affected(u->right, w, out);
        }
    }

    void destroy_internals_below(Node* u) {
        if (u->is_leaf) return;
        destroy_internals_rec(u->left);
        destroy_internals_rec(u->right);
        u->left = u->right = nullptr;
    }

    void destroy_internals_rec(Node* u) {
        if (u->is_leaf) {
            u->parent = nullptr;
            return;
        }
        destroy_internals_rec(u->left);
        destroy_internals_rec(u->right);
        delete u;
    }

    // Perfectly balanced: leaf counts of siblings differ by at most one.
    std::pair<Node*, Node*> build_balanced(std::vector<Node*>& leaves,
                                           std::size_t lo, std::size_t hi) {
        std::size_t mid = lo + (hi - lo + 1) / 2;
        return {build_range(leaves, lo, mid), build_range(leaves, mid, hi)};
    }

    Node* build_range(std::vector<Node*>& leaves, std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) return leaves[lo];
        Node* u = new_internal();
        auto [l, r] = build_balanced(leaves, lo, hi);
        adopt(u, l, r);
        return u;
    }

    // ---- invariant checking ----

    void check_structure(const Node* u, InvariantReport& report) const {
        ++report.nodes;
        if (u->is_leaf) {
            if (u->leaves != 1) report.violations.push_back("leaf count at leaf != 1");
            if (!(u->interval.start < u->interval.end))
                report.violations.push_back("empty leaf interval");
            return;
        }
        const Node* l = u->left;
        const Node* r = u->right;
        if (l->parent != u || r->parent != u)
            report.violations.push_back("broken parent link");
        if (u->leaves != l->leaves + r->leaves)
            report.violations.push_back("stale leaf count");
        if (l->interval.end != r->interval.start)
            report.violations.push_back("children intervals not adjacent");
        if (u->interval.start != l->interval.start ||
            u->interval.end != r->interval.end)
            report.violations.push_back("interval is not the union of the leaves");
        if (l->leaves > 2 * r->leaves || r->leaves > 2 * l->leaves)
            report.violations.push_back("sibling balance violated");
        check_structure(l, report);
        check_structure(r, report);
    }

    void accumulate_dset(const Node* u, std::size_t& total) const {
        total += u->dset.size();
        if (!u->is_leaf) {
            accumulate_dset(u->left, total);
            accumulate_dset(u->right, total);
        }
    }

    void check_sampled_paths(int samples, InvariantReport& report) const {
        if (samples <= 0 || leaf_by_lo_.empty()) return;
        std::vector<Time> ts;
        std::vector<const Node*> leaves_in_order;
        for (const auto& [lo, leaf] : leaf_by_lo_) leaves_in_order.push_back(leaf);
        const std::size_t n = leaves_in_order.size();
        for (int i = 0; i < samples; ++i) {
            const Node* leaf = leaves_in_order[(i * n) / samples];
            Time t = leaf->interval.end.is_now() ? Time::now()
                                                 : leaf->interval.end;
            ts.push_back(t);
        }
        for (Time t : ts) {
            auto path = root_path(t);
            std::set<LifespanKey> seen;
            for (const Node* u : path)
                for (const LifespanKey& k : u->dset) {
                    if (!seen.insert(k).second)
                        report.violations.push_back("root path D-sets not disjoint");
                }
            std::size_t expect = 0;
            for (const auto& [key, rec] : placements_)
                if (Lifespan{key.start, rec.end}.contains(t)) {
                    ++expect;
                    if (seen.count(key) == 0)
                        report.violations.push_back("root path union misses an edge");
                }
            if (seen.size() != expect)
                report.violations.push_back("root path union has extra edges");
        }
    }

    SummaryFactory factory_;
    Node* root_ = nullptr;
    std::map<std::int64_t, Node*> leaf_by_lo_;
    std::map<LifespanKey, Placement> placements_;
    std::map<std::int64_t, LifespanKey> by_start_;
    std::map<std::int64_t, LifespanKey> by_end_;
    std::uint64_t summary_adds_ = 0;
    std::uint64_t summary_removes_ = 0;
    std::uint64_t rebuild_count_ = 0;
};

}  // namespace retrograph
