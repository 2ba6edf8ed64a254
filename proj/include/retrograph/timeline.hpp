#pragma once

#include <retrograph/core.hpp>

#include <algorithm>
#include <map>
#include <vector>

namespace retrograph {

enum class UpdateKind { Insert, Delete };

struct Update {
    UpdateKind kind = UpdateKind::Insert;
    VertexPair pair;
    Weight weight = 1;  // 1 for unweighted problems; ignored for Delete
    Time time;
};

// Half-open-on-the-left interval (start, end] during which an edge exists.
// end is Time::now() while the edge is never deleted.
struct Lifespan {
    Time start;
    Time end;

    bool contains(Time t) const { return start < t && t <= end; }

    friend bool operator==(const Lifespan& a, const Lifespan& b) {
        return a.start == b.start && a.end == b.end;
    }
};

// A lifespan together with the edge identity it belongs to. (pair, start)
// identifies an edge instance: every re-insertion is a new edge.
struct LifespanRec {
    VertexPair pair;
    Weight weight = 1;
    Lifespan span;

    friend bool operator==(const LifespanRec& a, const LifespanRec& b) {
        return a.pair == b.pair && a.weight == b.weight && a.span == b.span;
    }
};

// Minimal description of how one retroactive operation changed the
// lifespan index: at most one lifespan removed, at most two added.
struct LifespanDelta {
    std::vector<LifespanRec> removed;
    std::vector<LifespanRec> added;
};

// The sorted update sequence S plus the per-pair lifespan index it
// induces. Legality of every operation is validated, not assumed:
// illegal creates and cancels are rejected with a typed error and leave
// the sequence untouched.
class UpdateSequence {
public:
    explicit UpdateSequence(Vertex n) : n_(n) {}

    Vertex vertex_count() const { return n_; }
    std::size_t size() const { return updates_.size(); }

    const std::map<Time, Update>& updates() const { return updates_; }

    const std::map<VertexPair, std::vector<LifespanRec>>& lifespan_index() const {
        return index_;
    }

    bool has_update_at(Time t) const { return updates_.count(t) != 0; }

    const Update& update_at(Time t) const {
        auto it = updates_.find(t);
        if (it == updates_.end())
            raise(ErrorCode::NoUpdateAtTime, "no update at " + to_string(t));
        return it->second;
    }

    LifespanDelta create(const Update& upd) {
        validate_edge(upd);
        if (!upd.time.finite())
            raise(ErrorCode::IllegalOperation, "update time must be finite");
        if (has_update_at(upd.time))
            raise(ErrorCode::DuplicateTime,
                  "an update already exists at " + to_string(upd.time));

        LifespanDelta delta;
        auto idx_it = index_.find(upd.pair);
        if (upd.kind == UpdateKind::Insert) {
            if (upd.weight < 1)
                raise(ErrorCode::WeightOutOfRange, "weight must be positive");
            // Legal iff every existing lifespan of the pair ends before t:
            // an alive pair or any lifespan at/after t would overlap.
            if (idx_it != index_.end() &&
                idx_it->second.back().span.end >= upd.time)
                raise(ErrorCode::IllegalInsert,
                      "pair alive at or after " + to_string(upd.time));
            LifespanRec rec{upd.pair, upd.weight, {upd.time, Time::now()}};
            index_[upd.pair].push_back(rec);
            delta.added.push_back(rec);
        } else {
            // Legal iff the pair is alive at t via a never-deleted lifespan:
            // a finite end after t would mean a later delete exists.
            if (idx_it == index_.end() || !idx_it->second.back().span.end.is_now() ||
                idx_it->second.back().span.start >= upd.time)
                raise(ErrorCode::IllegalDelete,
                      "no deletable edge of the pair at " + to_string(upd.time));
            LifespanRec& rec = idx_it->second.back();
            delta.removed.push_back(rec);
            rec.span.end = upd.time;
            delta.added.push_back(rec);
        }
        updates_.emplace(upd.time, upd);
        return delta;
    }

    std::pair<Update, LifespanDelta> cancel(Time t) {
        auto it = updates_.find(t);
        if (it == updates_.end())
            raise(ErrorCode::NoUpdateAtTime, "no update at " + to_string(t));
        const Update upd = it->second;

        LifespanDelta delta;
        auto idx_it = index_.find(upd.pair);
        auto& spans = idx_it->second;
        if (upd.kind == UpdateKind::Insert) {
            auto sp = find_span(spans, [&](const LifespanRec& r) {
                return r.span.start == t;
            });
            if (!sp->span.end.is_now())
                raise(ErrorCode::WouldOrphanDelete,
                      "matching delete at " + to_string(sp->span.end) +
                          " must be cancelled first");
            delta.removed.push_back(*sp);
            spans.erase(sp);
            if (spans.empty()) index_.erase(idx_it);
        } else {
            auto sp = find_span(spans, [&](const LifespanRec& r) {
                return r.span.end == t;
            });
            // Re-pairing the insert with a later delete would strand the
            // insert that opened the later lifespan, so reject.
            if (sp + 1 != spans.end())
                raise(ErrorCode::IllegalCancel,
                      "a later lifespan of the pair exists after " + to_string(t));
            delta.removed.push_back(*sp);
            sp->span.end = Time::now();
            delta.added.push_back(*sp);
        }
        updates_.erase(it);
        return {upd, delta};
    }

    // E_t: edges whose lifespan contains t (start exclusive, end inclusive).
    std::vector<std::pair<VertexPair, Weight>> edges_at(Time t) const {
        std::vector<std::pair<VertexPair, Weight>> out;
        for (const auto& [pair, spans] : index_) {
            const LifespanRec* rec = span_covering(spans, t);
            if (rec != nullptr) out.emplace_back(pair, rec->weight);
        }
        return out;
    }

    // The lifespan of `pair` covering time t, or nullptr.
    const LifespanRec* span_at(const VertexPair& pair, Time t) const {
        auto it = index_.find(pair);
        if (it == index_.end()) return nullptr;
        return span_covering(it->second, t);
    }

    // Recomputes the lifespan index from scratch by scanning updates in
    // time order and pairing each insert with the earliest subsequent
    // delete. Test oracle for the incremental bookkeeping above.
    static std::map<VertexPair, std::vector<LifespanRec>> recompute_index(
        const std::map<Time, Update>& updates) {
        std::map<VertexPair, std::vector<LifespanRec>> out;
        for (const auto& [t, upd] : updates) {
            auto& spans = out[upd.pair];
            if (upd.kind == UpdateKind::Insert) {
                if (!spans.empty() && spans.back().span.end.is_now())
                    raise(ErrorCode::IllegalInsert, "insert while alive");
                spans.push_back({upd.pair, upd.weight, {t, Time::now()}});
            } else {
                if (spans.empty() || !spans.back().span.end.is_now())
                    raise(ErrorCode::IllegalDelete, "delete while dead");
                spans.back().span.end = t;
            }
        }
        return out;
    }

private:
    template <class Pred>
    static std::vector<LifespanRec>::iterator find_span(
        std::vector<LifespanRec>& spans, Pred pred) {
        auto it = std::find_if(spans.begin(), spans.end(), pred);
        return it;  // caller guarantees existence (update was present)
    }

    static const LifespanRec* span_covering(const std::vector<LifespanRec>& spans,
                                            Time t) {
        // Spans are disjoint and sorted by start; find last start < t.
        auto it = std::upper_bound(
            spans.begin(), spans.end(), t,
            [](Time x, const LifespanRec& r) { return x <= r.span.start; });
        if (it == spans.begin()) return nullptr;
        --it;
        return it->span.contains(t) ? &*it : nullptr;
    }

    void validate_edge(const Update& upd) const {
        check_vertex(upd.pair.lo, n_);
        check_vertex(upd.pair.hi, n_);
        if (upd.pair.lo == upd.pair.hi)
            raise(ErrorCode::InvalidVertex, "self-loops are not supported");
    }

    Vertex n_;
    std::map<Time, Update> updates_;
    std::map<VertexPair, std::vector<LifespanRec>> index_;
};

}  // namespace retrograph
