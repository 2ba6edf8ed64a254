#pragma once

#include <retrograph/dsu.hpp>
#include <retrograph/leveled_engine.hpp>
#include <retrograph/order_statistic.hpp>
#include <retrograph/timeline.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

namespace retrograph {

// Incremental fully retroactive connectivity and spanning forest.
//
// The update sequence S (insertions only, cancellable) is regarded as a
// dynamic edge set H where each edge weighs its insertion time. A
// minimum spanning forest of H answers connectivity at time t through a
// path-max query (connected iff the heaviest path edge was inserted
// before t), and an order-statistic index over tree-edge times answers
// spanning-forest size queries by rank.
class IncrementalRetro {
public:
    explicit IncrementalRetro(Vertex n, EngineKind kind = EngineKind::Baseline)
        : seq_(n), engine_(make_engine(kind, n)) {}

    Vertex vertex_count() const { return seq_.vertex_count(); }
    const UpdateSequence& sequence() const { return seq_; }

    void create_insert(Vertex u, Vertex v, Time t) {
        seq_.create(Update{UpdateKind::Insert, VertexPair(u, v), 1, t});
        auto res = engine_->insert(u, v, t.value);
        weight_of_.emplace(res.id, t.value);
        edge_at_time_.emplace(t.value, res.id);
        apply(res.delta);
    }

    void cancel(Time t) {
        seq_.cancel(t);
        auto it = edge_at_time_.find(t.value);
        EdgeId id = it->second;
        apply(engine_->erase(id));
        weight_of_.erase(id);
        edge_at_time_.erase(it);
    }

    bool connected(Vertex u, Vertex v, Time t) {
        check_vertex(u, vertex_count());
        check_vertex(v, vertex_count());
        if (u == v) return true;
        if (!engine_->connected(u, v)) return false;
        return engine_->path_max(u, v).weight < t.value;
    }

    // Tree edges inserted before t: a spanning forest of G_t.
    std::vector<ForestEdge> spanning_forest(Time t) const {
        std::vector<ForestEdge> out;
        for (const auto& e : engine_->forest())
            if (e.weight < t.value) out.push_back(e);
        return out;
    }

    std::size_t spanning_forest_size(Time t) const {
        return index_.rank_below(t.value);
    }

    std::vector<std::int64_t> tree_edge_times() const { return index_.keys(); }

private:
    void apply(const ForestDelta& delta) {
        for (EdgeId id : delta.removed) index_.erase(weight_of_.at(id));
        for (EdgeId id : delta.added) index_.insert(weight_of_.at(id));
    }

    UpdateSequence seq_;
    std::unique_ptr<ForestEngine> engine_;
    OrderStatisticTree index_;
    std::map<std::int64_t, EdgeId> edge_at_time_;
    std::map<EdgeId, std::int64_t> weight_of_;
};

struct ApproxForestEdge {
    VertexPair pair;
    Rational weight;  // rounded class weight (1+eps)^j
};

// (1+eps)-approximate minimum spanning forest in the incremental fully
// retroactive setting. Weight class j holds every edge of weight at
// most (1+eps)^j, so an edge of class index i is inserted into classes
// i..l; per-class forest sizes a_0..a_l combine into the approximate
// total weight a_0 + sum_i (a_i - a_{i-1}) (1+eps)^i. Powers of 1+eps
// are exact rationals so class boundaries and weights are deterministic.
class ApproxMsfRetro {
public:
    ApproxMsfRetro(Vertex n, const Rational& eps, Weight max_weight,
                   EngineKind kind = EngineKind::Baseline)
        : max_weight_(max_weight), master_(n) {
        if (!(eps > 0)) raise(ErrorCode::IllegalOperation, "eps must be positive");
        if (max_weight < 1)
            raise(ErrorCode::WeightOutOfRange, "max weight must be at least 1");
        const Rational growth = 1 + eps;
        Rational power = 1;
        powers_.push_back(power);
        while (power < max_weight) {
            power *= growth;
            powers_.push_back(power);
        }
        for (std::size_t i = 0; i < powers_.size(); ++i)
            classes_.emplace_back(n, kind);
    }

    Vertex vertex_count() const { return master_.vertex_count(); }
    int class_count() const { return static_cast<int>(classes_.size()); }
    const Rational& class_weight(int j) const { return powers_[j]; }
    const UpdateSequence& sequence() const { return master_; }

    // Smallest class whose rounded weight covers w.
    int class_of(Weight w) const {
        if (w < 1 || w > max_weight_)
            raise(ErrorCode::WeightOutOfRange, std::to_string(w));
        int j = 0;
        while (powers_[j] < w) ++j;
        return j;
    }

    void create_insert(Vertex u, Vertex v, Weight w, Time t) {
        int from = class_of(w);
        master_.create(Update{UpdateKind::Insert, VertexPair(u, v), w, t});
        for (int j = from; j < class_count(); ++j)
            classes_[j].create_insert(u, v, t);
    }

    void cancel(Time t) {
        const Update upd = master_.update_at(t);
        master_.cancel(t);
        for (int j = class_of(upd.weight); j < class_count(); ++j)
            classes_[j].cancel(t);
    }

    bool connected(Vertex u, Vertex v, Time t) {
        return classes_.back().connected(u, v, t);  // top class holds all edges
    }

    std::size_t spanning_forest_size(Time t) const {
        return classes_.back().spanning_forest_size(t);
    }

    std::size_t class_sf_size(int j, Time t) const {
        return classes_[j].spanning_forest_size(t);
    }

    // a_0 + sum_{i=1..l} (a_i - a_{i-1}) (1+eps)^i; lies within
    // [W_exact, (1+eps) W_exact] of the true MSF weight of G_t.
    Rational weight(Time t) const {
        std::int64_t prev = static_cast<std::int64_t>(class_sf_size(0, t));
        Rational total = prev;
        for (int i = 1; i < class_count(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(class_sf_size(i, t));
            total += Rational(cur - prev) * powers_[i];
            prev = cur;
        }
        return total;
    }

    // Union of the per-class spanning forests at t (duplicates kept),
    // reduced by a static MSF pass under the rounded weights.
    std::vector<ApproxForestEdge> forest(Time t) const {
        struct Cand {
            Rational w;
            VertexPair pair;
            int cls;
        };
        std::vector<Cand> cands;
        for (int j = 0; j < class_count(); ++j)
            for (const auto& e : classes_[j].spanning_forest(t))
                cands.push_back({powers_[j], e.pair, j});
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.w != b.w) return a.w < b.w;
            if (a.pair != b.pair) return a.pair < b.pair;
            return a.cls < b.cls;
        });
        Dsu dsu(vertex_count());
        std::vector<ApproxForestEdge> out;
        for (const Cand& c : cands)
            if (dsu.unite(c.pair.lo, c.pair.hi))
                out.push_back(ApproxForestEdge{c.pair, c.w});
        return out;
    }

private:
    Weight max_weight_;
    UpdateSequence master_;
    std::vector<Rational> powers_;
    std::vector<IncrementalRetro> classes_;
};

}  // namespace retrograph
