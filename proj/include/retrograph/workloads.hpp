#pragma once

#include <retrograph/dsu.hpp>
#include <retrograph/runner.hpp>

#include <chrono>
#include <random>
#include <string>
#include <vector>

namespace retrograph {

// ---------------------------------------------------------------------------
// Random mixed workloads
// ---------------------------------------------------------------------------

struct RandomTraceParams {
    Vertex n = 30;
    int updates = 1000;
    int queries = 500;
    bool incremental = false;  // forbid create-delete
    double insert_ratio = 0.55;
    double delete_ratio = 0.20;  // folded into inserts when incremental
    double cancel_ratio = 0.25;
    std::vector<QueryKind> query_kinds{QueryKind::Conn};
    Weight max_weight = 1;  // 1 keeps the trace unweighted
    std::uint64_t seed = 1;
    // A pair only accepts inserts after its last lifespan, so uniform
    // times exhaust it after ~log(horizon) inserts. A nonzero gap
    // samples insert times uniformly within `insert_gap` past the
    // pair's frontier instead, letting traces grow to large T; a
    // nonzero window bounds delete times the same way.
    std::int64_t insert_gap = 0;
    std::int64_t delete_window = 0;
};

// Deterministic legal trace: the generator tracks a shadow sequence so
// every emitted operation is legal at emission time. Retroactive target
// times are sampled uniformly over the whole time domain; infeasible
// picks substitute a feasible operation kind.
inline Trace random_trace(const RandomTraceParams& p) {
    std::mt19937_64 rng(p.seed);
    const std::int64_t horizon = 1'000'000'000;
    Trace trace;
    trace.n = p.n;
    UpdateSequence shadow(p.n);
    std::vector<std::int64_t> times;  // cancellable targets, unordered

    auto fresh_time = [&]() {
        while (true) {
            std::int64_t t = static_cast<std::int64_t>(rng() % horizon) + 1;
            if (!shadow.has_update_at(Time(t))) return t;
        }
    };

    auto try_insert = [&]() -> bool {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Vertex u = static_cast<Vertex>(rng() % p.n);
            Vertex v = static_cast<Vertex>(rng() % p.n);
            if (u == v) continue;
            Weight w = p.max_weight <= 1
                           ? 1
                           : static_cast<Weight>(rng() % p.max_weight) + 1;
            std::int64_t t;
            if (p.insert_gap > 0) {
                std::int64_t frontier = 0;
                auto it = shadow.lifespan_index().find(VertexPair(u, v));
                if (it != shadow.lifespan_index().end()) {
                    const Lifespan& last = it->second.back().span;
                    if (last.end.is_now()) continue;  // pair alive
                    frontier = last.end.value;
                }
                t = frontier + 1 +
                    static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p.insert_gap));
                if (shadow.has_update_at(Time(t))) continue;
            } else {
                t = fresh_time();
            }
            try {
                shadow.create(Update{UpdateKind::Insert, VertexPair(u, v), w, Time(t)});
            } catch (const Error&) {
                continue;
            }
            trace.ops.push_back(
                {TraceOp::Kind::CreateInsert, u, v, w, Time(t), QueryKind::Conn});
            times.push_back(t);
            return true;
        }
        return false;
    };

    auto try_delete = [&]() -> bool {
        std::vector<std::pair<VertexPair, std::int64_t>> open;
        for (const auto& [pair, spans] : shadow.lifespan_index())
            if (spans.back().span.end.is_now())
                open.emplace_back(pair, spans.back().span.start.value);
        if (open.empty()) return false;
        auto [pair, start] = open[rng() % open.size()];
        std::int64_t t;
        if (p.delete_window > 0) {
            for (int attempt = 0;; ++attempt) {
                t = start + 1 +
                    static_cast<std::int64_t>(
                        rng() % static_cast<std::uint64_t>(p.delete_window + attempt));
                if (!shadow.has_update_at(Time(t))) break;
            }
        } else {
            do {
                t = fresh_time();
            } while (t <= start);
        }
        shadow.create(Update{UpdateKind::Delete, pair, 1, Time(t)});
        trace.ops.push_back({TraceOp::Kind::CreateDelete, pair.lo, pair.hi, 1, Time(t),
                             QueryKind::Conn});
        times.push_back(t);
        return true;
    };

    auto try_cancel = [&]() -> bool {
        for (int attempt = 0; attempt < 64 && !times.empty(); ++attempt) {
            std::size_t k = rng() % times.size();
            try {
                shadow.cancel(Time(times[k]));
            } catch (const Error&) {
                continue;  // e.g. an insert whose delete still exists
            }
            trace.ops.push_back(
                {TraceOp::Kind::Cancel, 0, 0, 1, Time(times[k]), QueryKind::Conn});
            times[k] = times.back();
            times.pop_back();
            return true;
        }
        return false;
    };

    auto emit_update = [&]() {
        double insert_share = p.insert_ratio + (p.incremental ? p.delete_ratio : 0.0);
        double total = insert_share + (p.incremental ? 0.0 : p.delete_ratio) +
                       p.cancel_ratio;
        double roll = std::uniform_real_distribution<double>(0.0, total)(rng);
        bool done = false;
        if (roll < insert_share)
            done = try_insert() || try_cancel() || (!p.incremental && try_delete());
        else if (!p.incremental && roll < insert_share + p.delete_ratio)
            done = try_delete() || try_insert() || try_cancel();
        else
            done = try_cancel() || try_insert();
        (void)done;  // an empty, saturated board can skip a beat
    };

    auto emit_query = [&]() {
        TraceOp op;
        op.kind = TraceOp::Kind::Query;
        op.query = p.query_kinds[rng() % p.query_kinds.size()];
        if (op.query == QueryKind::Conn) {
            op.u = static_cast<Vertex>(rng() % p.n);
            op.v = static_cast<Vertex>(rng() % p.n);
        }
        op.t = (rng() % 10 == 0)
                   ? Time::now()
                   : Time(static_cast<std::int64_t>(rng() % (horizon + horizon / 10)) + 1);
        trace.ops.push_back(op);
    };

    int updates_left = p.updates;
    int queries_left = p.queries;
    while (updates_left > 0 || queries_left > 0) {
        bool do_update =
            static_cast<int>(rng() % static_cast<unsigned>(updates_left + queries_left)) <
            updates_left;
        if (do_update) {
            emit_update();
            --updates_left;
        } else {
            emit_query();
            --queries_left;
        }
    }
    return trace;
}

// ---------------------------------------------------------------------------
// OMv reduction gadgets
// ---------------------------------------------------------------------------

struct OmvInstance {
    int n = 0;
    std::vector<std::vector<std::uint8_t>> matrix;   // rows m_1..m_n
    std::vector<std::vector<std::uint8_t>> vectors;  // v_1..v_n

    static OmvInstance random(int n, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        OmvInstance inst;
        inst.n = n;
        inst.matrix.assign(n, std::vector<std::uint8_t>(n, 0));
        inst.vectors.assign(n, std::vector<std::uint8_t>(n, 0));
        for (auto& row : inst.matrix)
            for (auto& x : row) x = rng() % 2;
        for (auto& row : inst.vectors)
            for (auto& x : row) x = rng() % 2;
        return inst;
    }

    bool product(int row, int vec) const {
        for (int j = 0; j < n; ++j)
            if (matrix[row][j] && vectors[vec][j]) return true;
        return false;
    }
};

namespace workload_detail {

constexpr std::int64_t kBlock = 1'000'000;
constexpr std::int64_t kQueryOffset = 500'000;

inline void push_insert(Trace& tr, Vertex u, Vertex v, std::int64_t t, Weight w = 1) {
    tr.ops.push_back({TraceOp::Kind::CreateInsert, u, v, w, Time(t), QueryKind::Conn});
}

inline void push_delete(Trace& tr, Vertex u, Vertex v, std::int64_t t) {
    tr.ops.push_back({TraceOp::Kind::CreateDelete, u, v, 1, Time(t), QueryKind::Conn});
}

inline void push_cancel(Trace& tr, std::int64_t t) {
    tr.ops.push_back({TraceOp::Kind::Cancel, 0, 0, 1, Time(t), QueryKind::Conn});
}

}  // namespace workload_detail

// Connectivity gadget: nodes a, b, u_1..u_n. Row i's edges (u_j, b) live
// during (t_i, t_{i+1}]; each vector round rewrites the (a, u_j) edges
// back at the t_0 block and asks conn(a, b) inside every row interval.
// The expected answer of a query in round r at row i is m_i . v_r >= 1.
inline Trace omv_connectivity_trace(const OmvInstance& inst) {
    using namespace workload_detail;
    const int n = inst.n;
    const Vertex a = 0, b = 1;
    auto u = [](int j) { return static_cast<Vertex>(2 + j); };

    Trace tr;
    tr.n = static_cast<Vertex>(n + 2);
    for (int i = 0; i < n; ++i) {
        std::int64_t base = static_cast<std::int64_t>(i + 1) * kBlock;
        std::int64_t k = 0;
        if (i >= 1)
            for (int j = 0; j < n; ++j)
                if (inst.matrix[i - 1][j]) push_delete(tr, u(j), b, base + k++);
        for (int j = 0; j < n; ++j)
            if (inst.matrix[i][j]) push_insert(tr, u(j), b, base + k++);
    }

    std::int64_t t0 = 0;
    std::vector<std::int64_t> live_vector_edges;
    std::size_t qidx = 0;
    for (int r = 0; r < n; ++r) {
        for (std::int64_t t : live_vector_edges) push_cancel(tr, t);
        live_vector_edges.clear();
        for (int j = 0; j < n; ++j)
            if (inst.vectors[r][j]) {
                push_insert(tr, a, u(j), ++t0);
                live_vector_edges.push_back(t0);
            }
        for (int i = 0; i < n; ++i) {
            std::int64_t qt = static_cast<std::int64_t>(i + 1) * kBlock + kQueryOffset + r;
            tr.ops.push_back({TraceOp::Kind::Query, a, b, 1, Time(qt), QueryKind::Conn});
            tr.expects[qidx++] = inst.product(i, r) ? "true" : "false";
        }
    }
    return tr;
}

// MSF variant: the connectivity gadget plus a permanent (a, b) edge, with
// spanning-forest size queries. The forest size at row i in round r is
// (n + 2) - components, which is at most |m_i| + |v_r| exactly when the
// product is 1 (the triangle closes a cycle).
inline Trace omv_msf_trace(const OmvInstance& inst) {
    using namespace workload_detail;
    const int n = inst.n;
    const Vertex a = 0, b = 1;
    auto u = [](int j) { return static_cast<Vertex>(2 + j); };

    Trace tr;
    tr.n = static_cast<Vertex>(n + 2);
    push_insert(tr, a, b, 1);
    for (int i = 0; i < n; ++i) {
        std::int64_t base = static_cast<std::int64_t>(i + 1) * kBlock;
        std::int64_t k = 0;
        if (i >= 1)
            for (int j = 0; j < n; ++j)
                if (inst.matrix[i - 1][j]) push_delete(tr, u(j), b, base + k++);
        for (int j = 0; j < n; ++j)
            if (inst.matrix[i][j]) push_insert(tr, u(j), b, base + k++);
    }

    std::int64_t t0 = 1;  // time 1 went to the permanent edge
    std::vector<std::int64_t> live_vector_edges;
    std::size_t qidx = 0;
    for (int r = 0; r < n; ++r) {
        for (std::int64_t t : live_vector_edges) push_cancel(tr, t);
        live_vector_edges.clear();
        for (int j = 0; j < n; ++j)
            if (inst.vectors[r][j]) {
                push_insert(tr, a, u(j), ++t0);
                live_vector_edges.push_back(t0);
            }
        for (int i = 0; i < n; ++i) {
            std::int64_t qt = static_cast<std::int64_t>(i + 1) * kBlock + kQueryOffset + r;
            tr.ops.push_back(
                {TraceOp::Kind::Query, 0, 0, 1, Time(qt), QueryKind::SfSize});
            // replay the known edge set of (t_i, t_{i+1}] in round r
            Dsu dsu(n + 2);
            int comps = n + 2;
            if (dsu.unite(a, b)) --comps;
            for (int j = 0; j < n; ++j) {
                if (inst.matrix[i][j] && dsu.unite(u(j), b)) --comps;
                if (inst.vectors[r][j] && dsu.unite(a, u(j))) --comps;
            }
            tr.expects[qidx++] = std::to_string(n + 2 - comps);
        }
    }
    return tr;
}

// Incremental maximum-degree gadget (3n nodes, insertions only): row
// blocks pad every u_j to degree i-1 and add the signal edge for
// m_{ij} = 1, with a cyclic shift so no parallel edges appear; vector
// rounds do the same on the a-side at the t_0 block. The maximum degree
// in row i of round r is i + r exactly when m_i . v_r = 1.
inline Trace omv_maxdeg_trace(const OmvInstance& inst) {
    using namespace workload_detail;
    const int n = inst.n;
    auto u = [](int j) { return static_cast<Vertex>(j); };
    auto bn = [n](int s) { return static_cast<Vertex>(n + (s % n)); };
    auto an = [n](int s) { return static_cast<Vertex>(2 * n + (s % n)); };

    Trace tr;
    tr.n = static_cast<Vertex>(3 * n);
    std::vector<std::pair<VertexPair, std::int64_t>> edges;  // for expectations

    auto insert = [&](Vertex x, Vertex y, std::int64_t t) {
        push_insert(tr, x, y, t);
        edges.emplace_back(VertexPair(x, y), t);
    };

    for (int i = 0; i < n; ++i) {
        std::int64_t base = static_cast<std::int64_t>(i + 1) * kBlock;
        std::int64_t k = 0;
        if (i >= 1)
            for (int j = 0; j < n; ++j)
                if (!inst.matrix[i - 1][j]) insert(u(j), bn(j + i - 1), base + k++);
        for (int j = 0; j < n; ++j)
            if (inst.matrix[i][j]) insert(u(j), bn(j + i), base + k++);
    }

    std::int64_t t0 = 0;
    std::size_t qidx = 0;
    for (int r = 0; r < n; ++r) {
        if (r >= 1)
            for (int j = 0; j < n; ++j)
                if (!inst.vectors[r - 1][j]) insert(u(j), an(j + r - 1), ++t0);
        for (int j = 0; j < n; ++j)
            if (inst.vectors[r][j]) insert(u(j), an(j + r), ++t0);
        for (int i = 0; i < n; ++i) {
            std::int64_t qt = static_cast<std::int64_t>(i + 1) * kBlock + kQueryOffset + r;
            tr.ops.push_back(
                {TraceOp::Kind::Query, 0, 0, 1, Time(qt), QueryKind::MaxDeg});
            std::vector<int> deg(3 * n, 0);
            for (const auto& [pair, t] : edges)
                if (t < qt) {
                    ++deg[pair.lo];
                    ++deg[pair.hi];
                }
            tr.expects[qidx++] =
                std::to_string(*std::max_element(deg.begin(), deg.end()));
        }
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Bench harness
// ---------------------------------------------------------------------------

struct BenchOpStats {
    std::size_t count = 0;
    double total_us = 0;
    double mean_us = 0;
    double p50_us = 0;
    double p90_us = 0;
    double p99_us = 0;
};

struct BenchBlock {
    std::string kind;
    int repetition = 0;
    BenchOpStats creates, cancels, queries;
    double wall_ms = 0;
};

struct BenchReport {
    std::vector<BenchBlock> blocks;

    std::string text() const {
        std::ostringstream out;
        auto stat = [&](const char* name, const BenchOpStats& s) {
            out << "  " << name << ": n=" << s.count;
            if (s.count > 0)
                out << " mean=" << s.mean_us << "us p50=" << s.p50_us << "us p90="
                    << s.p90_us << "us p99=" << s.p99_us << "us total=" << s.total_us
                    << "us";
            out << "\n";
        };
        for (const auto& b : blocks) {
            out << "[bench] kind=" << b.kind << " rep=" << b.repetition
                << " wall=" << b.wall_ms << "ms\n";
            stat("create", b.creates);
            stat("cancel", b.cancels);
            stat("query ", b.queries);
        }
        return out.str();
    }
};

namespace workload_detail {

inline BenchOpStats summarize(std::vector<double>& us) {
    BenchOpStats s;
    s.count = us.size();
    if (us.empty()) return s;
    std::sort(us.begin(), us.end());
    for (double x : us) s.total_us += x;
    s.mean_us = s.total_us / static_cast<double>(us.size());
    auto pct = [&](double p) {
        std::size_t idx = static_cast<std::size_t>(p * static_cast<double>(us.size()));
        if (idx >= us.size()) idx = us.size() - 1;
        return us[idx];
    };
    s.p50_us = pct(0.50);
    s.p90_us = pct(0.90);
    s.p99_us = pct(0.99);
    return s;
}

}  // namespace workload_detail

// Replays the trace against each structure kind, timing every operation.
inline BenchReport run_bench(const Trace& trace,
                             const std::vector<StructureKind>& kinds,
                             int repetitions, const RunOptions& opts = {}) {
    using Clock = std::chrono::steady_clock;
    BenchReport report;
    for (int rep = 0; rep < repetitions; ++rep) {
        for (StructureKind kind : kinds) {
            auto structure = make_structure(kind, trace, opts);
            std::vector<double> create_us, cancel_us, query_us;
            auto block_start = Clock::now();
            for (const auto& op : trace.ops) {
                if (op.kind == TraceOp::Kind::Query &&
                    !structure_supports(kind, op.query))
                    continue;
                auto start = Clock::now();
                if (op.kind == TraceOp::Kind::Query)
                    structure->answer(runner_detail::to_query(op));
                else
                    structure->apply(op);
                double us = std::chrono::duration<double, std::micro>(Clock::now() -
                                                                      start)
                                .count();
                switch (op.kind) {
                    case TraceOp::Kind::CreateInsert:
                    case TraceOp::Kind::CreateDelete:
                        create_us.push_back(us);
                        break;
                    case TraceOp::Kind::Cancel:
                        cancel_us.push_back(us);
                        break;
                    case TraceOp::Kind::Query:
                        query_us.push_back(us);
                        break;
                }
            }
            BenchBlock block;
            block.kind = structure_kind_name(kind);
            block.repetition = rep;
            block.wall_ms =
                std::chrono::duration<double, std::milli>(Clock::now() - block_start)
                    .count();
            block.creates = workload_detail::summarize(create_us);
            block.cancels = workload_detail::summarize(cancel_us);
            block.queries = workload_detail::summarize(query_us);
            report.blocks.push_back(block);
        }
    }
    return report;
}

}  // namespace retrograph
