#pragma once

#include <retrograph/oracle.hpp>
#include <retrograph/retro_full.hpp>
#include <retrograph/retro_incremental.hpp>
#include <retrograph/trace.hpp>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

namespace retrograph {

enum class StructureKind {
    IncConn,
    ApproxMsf,
    FullMaxDeg,
    FullMsf,
    FullConn,
    FullMatch,
    OracleKind,
    Replay,
};

inline const char* structure_kind_name(StructureKind k) {
    switch (k) {
        case StructureKind::IncConn: return "inc-conn";
        case StructureKind::ApproxMsf: return "approx-msf";
        case StructureKind::FullMaxDeg: return "full-maxdeg";
        case StructureKind::FullMsf: return "full-msf";
        case StructureKind::FullConn: return "full-conn";
        case StructureKind::FullMatch: return "full-match";
        case StructureKind::OracleKind: return "oracle";
        case StructureKind::Replay: return "replay";
    }
    return "?";
}

inline StructureKind parse_structure_kind(const std::string& name) {
    for (StructureKind k :
         {StructureKind::IncConn, StructureKind::ApproxMsf, StructureKind::FullMaxDeg,
          StructureKind::FullMsf, StructureKind::FullConn, StructureKind::FullMatch,
          StructureKind::OracleKind, StructureKind::Replay})
        if (name == structure_kind_name(k)) return k;
    raise(ErrorCode::IllegalOperation, "unknown structure kind '" + name + "'");
}

struct RunOptions {
    EngineKind engine = EngineKind::Baseline;
    Rational eps = Rational(1, 2);  // approx-msf only
    Weight max_weight = 0;          // 0: derive from the trace
};

inline bool structure_supports(StructureKind k, QueryKind q) {
    switch (k) {
        case StructureKind::IncConn:
            return q == QueryKind::Conn || q == QueryKind::Sf || q == QueryKind::SfSize;
        case StructureKind::ApproxMsf:
            return q == QueryKind::Conn || q == QueryKind::SfSize ||
                   q == QueryKind::Msf || q == QueryKind::MsfWeight;
        case StructureKind::FullMaxDeg:
            return q == QueryKind::MaxDeg;
        case StructureKind::FullMsf:
            return q == QueryKind::Msf || q == QueryKind::MsfWeight ||
                   q == QueryKind::SfSize || q == QueryKind::Conn;
        case StructureKind::FullConn:
            return q == QueryKind::Conn;
        case StructureKind::FullMatch:
            return q == QueryKind::MatchSize || q == QueryKind::Edges;
        case StructureKind::OracleKind:
        case StructureKind::Replay:
            return true;
    }
    return false;
}

// Uniform face of a retroactive structure for the trace runner: applies
// create/cancel operations and answers the queries it supports.
class TraceStructure {
public:
    virtual ~TraceStructure() = default;
    virtual void apply(const TraceOp& op) = 0;
    virtual Answer answer(const Query& q) = 0;
};

namespace runner_detail {

[[noreturn]] inline void incompatible(const char* what, const char* kind) {
    raise(ErrorCode::IncompatibleQuery,
          std::string(what) + " is not supported by " + kind);
}

inline Query to_query(const TraceOp& op) {
    return Query{op.query, op.u, op.v, op.t};
}

inline std::vector<AnswerEdge> sorted_forest(std::vector<AnswerEdge> edges) {
    std::sort(edges.begin(), edges.end(), [](const AnswerEdge& a, const AnswerEdge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.pair < b.pair;
    });
    return edges;
}

class IncConnStructure final : public TraceStructure {
public:
    explicit IncConnStructure(Vertex n, EngineKind engine) : s_(n, engine) {}

    void apply(const TraceOp& op) override {
        switch (op.kind) {
            case TraceOp::Kind::CreateInsert:
                s_.create_insert(op.u, op.v, op.t);
                break;
            case TraceOp::Kind::CreateDelete:
                incompatible("create delete", "inc-conn");
            case TraceOp::Kind::Cancel:
                s_.cancel(op.t);
                break;
            case TraceOp::Kind::Query:
                break;
        }
    }

    Answer answer(const Query& q) override {
        switch (q.kind) {
            case QueryKind::Conn:
                return Answer::boolean(s_.connected(q.u, q.v, q.t));
            case QueryKind::SfSize:
                return Answer::integer(
                    static_cast<std::int64_t>(s_.spanning_forest_size(q.t)));
            case QueryKind::Sf: {
                std::vector<AnswerEdge> out;
                for (const auto& e : s_.spanning_forest(q.t))
                    out.push_back(AnswerEdge{e.pair, Rational(e.weight)});
                return Answer::forest(sorted_forest(std::move(out)));
            }
            default:
                incompatible(query_kind_name(q.kind), "inc-conn");
        }
    }

private:
    IncrementalRetro s_;
};

class ApproxMsfStructure final : public TraceStructure {
public:
    ApproxMsfStructure(Vertex n, const Rational& eps, Weight max_weight,
                       EngineKind engine)
        : s_(n, eps, max_weight, engine) {}

    void apply(const TraceOp& op) override {
        switch (op.kind) {
            case TraceOp::Kind::CreateInsert:
                s_.create_insert(op.u, op.v, op.weight, op.t);
                break;
            case TraceOp::Kind::CreateDelete:
                incompatible("create delete", "approx-msf");
            case TraceOp::Kind::Cancel:
                s_.cancel(op.t);
                break;
            case TraceOp::Kind::Query:
                break;
        }
    }

    Answer answer(const Query& q) override {
        switch (q.kind) {
            case QueryKind::Conn:
                return Answer::boolean(s_.connected(q.u, q.v, q.t));
            case QueryKind::SfSize:
                return Answer::integer(
                    static_cast<std::int64_t>(s_.spanning_forest_size(q.t)));
            case QueryKind::MsfWeight:
                return Answer::rational(s_.weight(q.t));
            case QueryKind::Msf: {
                std::vector<AnswerEdge> out;
                for (const auto& e : s_.forest(q.t))
                    out.push_back(AnswerEdge{e.pair, e.weight});
                return Answer::forest(sorted_forest(std::move(out)));
            }
            default:
                incompatible(query_kind_name(q.kind), "approx-msf");
        }
    }

private:
    ApproxMsfRetro s_;
};

template <class S>
void apply_full(S& s, const TraceOp& op) {
    switch (op.kind) {
        case TraceOp::Kind::CreateInsert:
            s.create_insert(op.u, op.v, op.weight, op.t);
            break;
        case TraceOp::Kind::CreateDelete:
            s.create_delete(op.u, op.v, op.t);
            break;
        case TraceOp::Kind::Cancel:
            s.cancel(op.t);
            break;
        case TraceOp::Kind::Query:
            break;
    }
}

class FullMaxDegStructure final : public TraceStructure {
public:
    explicit FullMaxDegStructure(Vertex n) : s_(n) {}

    void apply(const TraceOp& op) override { apply_full(s_, op); }

    Answer answer(const Query& q) override {
        if (q.kind != QueryKind::MaxDeg)
            incompatible(query_kind_name(q.kind), "full-maxdeg");
        auto [v, d] = s_.max_degree(q.t);
        return Answer::degree(v, d);
    }

private:
    MaxDegreeRetro s_;
};

class FullMsfStructure final : public TraceStructure {
public:
    FullMsfStructure(Vertex n, EngineKind engine, bool conn_only)
        : s_(n, engine), conn_only_(conn_only) {}

    void apply(const TraceOp& op) override { apply_full(s_, op); }

    Answer answer(const Query& q) override {
        const char* kind = conn_only_ ? "full-conn" : "full-msf";
        if (q.kind == QueryKind::Conn)
            return Answer::boolean(s_.connected(q.u, q.v, q.t));
        if (conn_only_) incompatible(query_kind_name(q.kind), kind);
        switch (q.kind) {
            case QueryKind::Msf: {
                std::vector<AnswerEdge> out;
                for (const auto& e : s_.msf(q.t).forest)
                    out.push_back(AnswerEdge{e.pair, Rational(e.weight)});
                return Answer::forest(std::move(out));  // already canonical
            }
            case QueryKind::MsfWeight:
                return Answer::rational(Rational(s_.msf(q.t).total_weight));
            case QueryKind::SfSize:
                return Answer::integer(static_cast<std::int64_t>(s_.forest_size(q.t)));
            default:
                incompatible(query_kind_name(q.kind), kind);
        }
    }

    const MsfRetro& structure() const { return s_; }

private:
    MsfRetro s_;
    bool conn_only_;
};

class FullMatchStructure final : public TraceStructure {
public:
    explicit FullMatchStructure(Vertex n) : s_(n) {}

    void apply(const TraceOp& op) override { apply_full(s_, op); }

    Answer answer(const Query& q) override {
        switch (q.kind) {
            case QueryKind::MatchSize:
                return Answer::integer(static_cast<std::int64_t>(s_.matching_size(q.t)));
            case QueryKind::Edges: {
                std::vector<AnswerEdge> out;
                for (const auto& e : s_.edges(q.t))
                    out.push_back(AnswerEdge{e.pair, Rational(e.weight)});
                return Answer::forest(std::move(out));  // canonical (pair) order
            }
            default:
                incompatible(query_kind_name(q.kind), "full-match");
        }
    }

private:
    EdgeSetRetro s_;
};

class OracleStructure final : public TraceStructure {
public:
    explicit OracleStructure(Vertex n) : o_(n) {}

    void apply(const TraceOp& op) override {
        switch (op.kind) {
            case TraceOp::Kind::CreateInsert:
                o_.create_insert(op.u, op.v, op.weight, op.t);
                break;
            case TraceOp::Kind::CreateDelete:
                o_.create_delete(op.u, op.v, op.t);
                break;
            case TraceOp::Kind::Cancel:
                o_.cancel(op.t);
                break;
            case TraceOp::Kind::Query:
                break;
        }
    }

    Answer answer(const Query& q) override { return o_.query(q); }

private:
    Oracle o_;
};

// Naive baseline: stores the raw updates and replays the prefix before
// t through the static algorithms on every query. Second ground truth,
// independent of the lifespan index.
class ReplayStructure final : public TraceStructure {
public:
    explicit ReplayStructure(Vertex n) : n_(n) {}

    void apply(const TraceOp& op) override {
        switch (op.kind) {
            case TraceOp::Kind::CreateInsert:
                updates_.push_back(
                    Update{UpdateKind::Insert, VertexPair(op.u, op.v), op.weight, op.t});
                break;
            case TraceOp::Kind::CreateDelete:
                updates_.push_back(
                    Update{UpdateKind::Delete, VertexPair(op.u, op.v), 1, op.t});
                break;
            case TraceOp::Kind::Cancel:
                for (std::size_t i = 0; i < updates_.size(); ++i)
                    if (updates_[i].time == op.t) {
                        updates_.erase(updates_.begin() + static_cast<std::ptrdiff_t>(i));
                        return;
                    }
                raise(ErrorCode::NoUpdateAtTime, to_string(op.t));
            case TraceOp::Kind::Query:
                break;
        }
    }

    Answer answer(const Query& q) override {
        std::vector<ReplayEdge> edges = graph_at(q.t);
        switch (q.kind) {
            case QueryKind::Conn:
                return Answer::boolean(statics::connected(n_, edges, q.u, q.v));
            case QueryKind::SfSize:
                return Answer::integer(n_ - statics::component_count(n_, edges));
            case QueryKind::Sf:
                return forest_answer(statics::time_forest(n_, std::move(edges)), true);
            case QueryKind::Msf:
                return forest_answer(statics::msf(n_, std::move(edges)), false);
            case QueryKind::MsfWeight: {
                Weight total = 0;
                for (const auto& e : statics::msf(n_, std::move(edges)))
                    total += e.weight;
                return Answer::rational(Rational(total));
            }
            case QueryKind::MaxDeg: {
                auto [v, d] = statics::max_degree(n_, edges);
                return Answer::degree(v, d);
            }
            case QueryKind::MatchSize:
                return Answer::integer(static_cast<std::int64_t>(
                    statics::matching_size(n_, std::move(edges))));
            case QueryKind::Edges: {
                std::sort(edges.begin(), edges.end(),
                          [](const ReplayEdge& a, const ReplayEdge& b) {
                              return a.pair < b.pair;
                          });
                std::vector<AnswerEdge> out;
                for (const auto& e : edges)
                    out.push_back(AnswerEdge{e.pair, Rational(e.weight)});
                return Answer::forest(std::move(out));
            }
        }
        raise(ErrorCode::IllegalOperation, "malformed query");
    }

private:
    std::vector<ReplayEdge> graph_at(Time t) const {
        std::vector<Update> sorted = updates_;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Update& a, const Update& b) { return a.time < b.time; });
        std::map<VertexPair, ReplayEdge> alive;
        for (const Update& upd : sorted) {
            if (!(upd.time < t)) break;
            if (upd.kind == UpdateKind::Insert)
                alive[upd.pair] = ReplayEdge{upd.pair, upd.weight, upd.time};
            else
                alive.erase(upd.pair);
        }
        std::vector<ReplayEdge> out;
        for (const auto& [pair, e] : alive) out.push_back(e);
        return out;
    }

    static Answer forest_answer(std::vector<ReplayEdge> forest, bool by_time) {
        std::vector<AnswerEdge> out;
        for (const auto& e : forest)
            out.push_back(
                AnswerEdge{e.pair, Rational(by_time ? e.inserted_at.value : e.weight)});
        return Answer::forest(sorted_forest(std::move(out)));
    }

    Vertex n_;
    std::vector<Update> updates_;
};

}  // namespace runner_detail

inline Weight trace_max_weight(const Trace& trace) {
    Weight w = 1;
    for (const auto& op : trace.ops)
        if (op.kind == TraceOp::Kind::CreateInsert) w = std::max(w, op.weight);
    return w;
}

inline std::unique_ptr<TraceStructure> make_structure(StructureKind kind,
                                                      const Trace& trace,
                                                      const RunOptions& opts = {}) {
    using namespace runner_detail;
    const Vertex n = trace.n;
    switch (kind) {
        case StructureKind::IncConn:
            return std::make_unique<IncConnStructure>(n, opts.engine);
        case StructureKind::ApproxMsf: {
            Weight w = opts.max_weight > 0 ? opts.max_weight : trace_max_weight(trace);
            return std::make_unique<ApproxMsfStructure>(n, opts.eps, w, opts.engine);
        }
        case StructureKind::FullMaxDeg:
            return std::make_unique<FullMaxDegStructure>(n);
        case StructureKind::FullMsf:
            return std::make_unique<FullMsfStructure>(n, opts.engine, false);
        case StructureKind::FullConn:
            return std::make_unique<FullMsfStructure>(n, opts.engine, true);
        case StructureKind::FullMatch:
            return std::make_unique<FullMatchStructure>(n);
        case StructureKind::OracleKind:
            return std::make_unique<OracleStructure>(n);
        case StructureKind::Replay:
            return std::make_unique<ReplayStructure>(n);
    }
    raise(ErrorCode::IllegalOperation, "unknown structure kind");
}

}  // namespace retrograph
