#pragma once

#include <retrograph/checkpoint_tree.hpp>
#include <retrograph/dsu.hpp>
#include <retrograph/leveled_engine.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

namespace retrograph {

// Sparse per-node weighted degrees; a length-n array per node would
// cost Theta(nT) space across the tree.
struct DegreeSummary {
    std::unordered_map<Vertex, Weight> degree;

    void add(const SummaryEdge& e) {
        bump(e.pair.lo, e.weight);
        bump(e.pair.hi, e.weight);
    }
    void remove(const SummaryEdge& e) {
        bump(e.pair.lo, -e.weight);
        bump(e.pair.hi, -e.weight);
    }

private:
    void bump(Vertex v, Weight d) {
        auto [it, inserted] = degree.try_emplace(v, 0);
        it->second += d;
        if (it->second == 0) degree.erase(it);
    }
};

// MSF of the node's stored edges, maintained by a pluggable engine.
class ForestSummary {
public:
    ForestSummary(Vertex n, EngineKind kind) : engine_(make_engine(kind, n)) {}

    void add(const SummaryEdge& e) {
        ids_.emplace(e.key, engine_->insert(e.pair.lo, e.pair.hi, e.weight).id);
    }
    void remove(const SummaryEdge& e) {
        auto it = ids_.find(e.key);
        engine_->erase(it->second);
        ids_.erase(it);
    }

    std::vector<ForestEdge> forest() const { return engine_->forest(); }
    const ForestEngine& engine() const { return *engine_; }

private:
    std::unique_ptr<ForestEngine> engine_;
    std::map<LifespanKey, EdgeId> ids_;
};

// The raw stored edge set.
struct EdgeSetSummary {
    std::map<LifespanKey, Weight> edges;

    void add(const SummaryEdge& e) { edges.emplace(e.key, e.weight); }
    void remove(const SummaryEdge& e) { edges.erase(e.key); }
};

template <class Summary>
class RetroBase {
public:
    RetroBase(Vertex n, typename CheckpointTree<Summary>::SummaryFactory factory)
        : seq_(n), tree_(std::move(factory)) {}

    Vertex vertex_count() const { return seq_.vertex_count(); }
    const UpdateSequence& sequence() const { return seq_; }
    const CheckpointTree<Summary>& tree() const { return tree_; }

    void create_insert(Vertex u, Vertex v, Weight w, Time t) {
        Update upd{UpdateKind::Insert, VertexPair(u, v), w, t};
        tree_.apply_create(upd, seq_.create(upd));
    }

    void create_delete(Vertex u, Vertex v, Time t) {
        Update upd{UpdateKind::Delete, VertexPair(u, v), 1, t};
        tree_.apply_create(upd, seq_.create(upd));
    }

    void cancel(Time t) {
        auto [upd, delta] = seq_.cancel(t);
        tree_.apply_cancel(t, delta);
    }

protected:
    UpdateSequence seq_;
    CheckpointTree<Summary> tree_;
};

// Fully retroactive maximum degree: degree maps along the root path at t
// merge into the degree vector of G_t.
class MaxDegreeRetro : public RetroBase<DegreeSummary> {
public:
    explicit MaxDegreeRetro(Vertex n)
        : RetroBase(n, [] { return DegreeSummary{}; }) {}

    // (vertex, degree) with the lowest vertex id breaking ties; (0, 0)
    // on an empty graph.
    std::pair<Vertex, Weight> max_degree(Time t) const {
        std::unordered_map<Vertex, Weight> total;
        for (const auto* node : tree_.root_path(t))
            for (const auto& [v, d] : node->summary.degree) total[v] += d;
        Vertex best = 0;
        Weight best_deg = 0;
        for (const auto& [v, d] : total)
            if (d > best_deg || (d == best_deg && v < best)) {
                best = v;
                best_deg = d;
            }
        return {best, best_deg};
    }
};

struct WeightedEdge {
    VertexPair pair;
    Weight weight = 1;

    friend bool operator==(const WeightedEdge& a, const WeightedEdge& b) {
        return a.pair == b.pair && a.weight == b.weight;
    }
    friend bool operator<(const WeightedEdge& a, const WeightedEdge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.pair < b.pair;
    }
};

struct MsfQueryResult {
    std::vector<WeightedEdge> forest;  // canonical (weight, endpoints) order
    Weight total_weight = 0;
    std::size_t candidates = 0;  // gathered tree edges, <= (n-1)*(height+1)
};

// Fully retroactive connectivity and MSF: each node keeps an MSF of its
// stored edges; a query gathers the O(log T) per-node forests and runs a
// static pass. A non-tree edge of a node forest is never in the MSF of
// E_t, so the gather is sound.
class MsfRetro : public RetroBase<ForestSummary> {
public:
    explicit MsfRetro(Vertex n, EngineKind kind = EngineKind::Baseline)
        : RetroBase(n, [n, kind] { return ForestSummary(n, kind); }) {}

    MsfQueryResult msf(Time t) const {
        MsfQueryResult res;
        std::vector<WeightedEdge> cand = gather(t);
        res.candidates = cand.size();
        std::sort(cand.begin(), cand.end());
        Dsu dsu(vertex_count());
        for (const WeightedEdge& e : cand)
            if (dsu.unite(e.pair.lo, e.pair.hi)) {
                res.forest.push_back(e);
                res.total_weight += e.weight;
            }
        return res;
    }

    bool connected(Vertex u, Vertex v, Time t) const {
        check_vertex(u, vertex_count());
        check_vertex(v, vertex_count());
        if (u == v) return true;
        Dsu dsu(vertex_count());
        for (const WeightedEdge& e : gather(t)) dsu.unite(e.pair.lo, e.pair.hi);
        return dsu.find(u) == dsu.find(v);
    }

    std::size_t forest_size(Time t) const { return msf(t).forest.size(); }

private:
    std::vector<WeightedEdge> gather(Time t) const {
        std::vector<WeightedEdge> cand;
        for (const auto* node : tree_.root_path(t))
            for (const auto& e : node->summary.forest())
                cand.push_back(WeightedEdge{e.pair, e.weight});
        return cand;
    }
};

struct EdgeAtTime {
    VertexPair pair;
    Weight weight = 1;
    Time inserted_at;
};

// Fully retroactive edge-set retrieval and the canonical greedy maximal
// matching built on it.
class EdgeSetRetro : public RetroBase<EdgeSetSummary> {
public:
    explicit EdgeSetRetro(Vertex n)
        : RetroBase(n, [] { return EdgeSetSummary{}; }) {}

    // Exactly E_t, ordered by endpoints then lifespan start.
    std::vector<EdgeAtTime> edges(Time t) const {
        std::vector<EdgeAtTime> out;
        for (const auto* node : tree_.root_path(t))
            for (const auto& [key, w] : node->summary.edges)
                out.push_back(EdgeAtTime{key.pair, w, key.start});
        std::sort(out.begin(), out.end(), [](const EdgeAtTime& a, const EdgeAtTime& b) {
            if (a.pair != b.pair) return a.pair < b.pair;
            return a.inserted_at < b.inserted_at;
        });
        return out;
    }

    // Size of the greedy maximal matching over edges(t); deterministic
    // because the scan order is canonical.
    std::size_t matching_size(Time t) const {
        std::vector<bool> used(vertex_count(), false);
        std::size_t size = 0;
        for (const EdgeAtTime& e : edges(t)) {
            if (used[e.pair.lo] || used[e.pair.hi]) continue;
            used[e.pair.lo] = used[e.pair.hi] = true;
            ++size;
        }
        return size;
    }
};

// O(1) dynamic maximum degree for unweighted edges: buckets of vertices
// by degree as intrusive doubly linked lists plus the current maximum.
class DegreeTracker {
public:
    explicit DegreeTracker(Vertex n)
        : n_(n), degree_(n, 0), prev_(n, -1), next_(n, -1), head_(n, -1) {
        for (Vertex v = 0; v < n; ++v) link(v, 0);
    }

    void insert_edge(Vertex u, Vertex v) {
        validate(u, v);
        raise_degree(u);
        raise_degree(v);
    }

    void delete_edge(Vertex u, Vertex v) {
        validate(u, v);
        lower_degree(u);
        lower_degree(v);
    }

    Weight max_degree() const { return max_; }
    Weight degree(Vertex v) const { return degree_[v]; }

private:
    void validate(Vertex u, Vertex v) const {
        check_vertex(u, n_);
        check_vertex(v, n_);
        if (u == v) raise(ErrorCode::InvalidVertex, "self-loop");
    }

    void raise_degree(Vertex x) {
        unlink(x);
        link(x, ++degree_[x]);
        if (degree_[x] > max_) max_ = degree_[x];
    }

    void lower_degree(Vertex x) {
        assert(degree_[x] > 0);
        unlink(x);
        link(x, --degree_[x]);
        // the max drops by at most one per touched vertex
        while (max_ > 0 && head_[max_] == -1) --max_;
    }

    void link(Vertex x, Weight bucket) {
        prev_[x] = -1;
        next_[x] = head_[bucket];
        if (next_[x] != -1) prev_[next_[x]] = x;
        head_[bucket] = x;
    }

    void unlink(Vertex x) {
        Weight bucket = degree_[x];
        if (prev_[x] != -1)
            next_[prev_[x]] = next_[x];
        else
            head_[bucket] = next_[x];
        if (next_[x] != -1) prev_[next_[x]] = prev_[x];
    }

    Vertex n_;
    std::vector<Weight> degree_;
    std::vector<Vertex> prev_;
    std::vector<Vertex> next_;
    std::vector<Vertex> head_;  // one bucket per possible degree 0..n-1
    Weight max_ = 0;
};

}  // namespace retrograph
