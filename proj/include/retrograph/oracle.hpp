#pragma once

#include <retrograph/query.hpp>
#include <retrograph/timeline.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

namespace retrograph {

// An edge of the graph at some fixed time, as the oracle's static
// algorithms consume it.
struct ReplayEdge {
    VertexPair pair;
    Weight weight = 1;
    Time inserted_at;
};

// Textbook static algorithms over an edge list. Shared between the
// brute-force oracle and the naive replay baseline; they are the ground
// truth the retroactive structures are measured against.
namespace statics {

namespace detail {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};
}  // namespace detail

inline bool connected(Vertex n, const std::vector<ReplayEdge>& edges, Vertex u,
                      Vertex v) {
    if (u == v) return true;
    std::vector<std::vector<Vertex>> adj(n);
    for (const auto& e : edges) {
        adj[e.pair.lo].push_back(e.pair.hi);
        adj[e.pair.hi].push_back(e.pair.lo);
    }
    std::vector<bool> seen(n, false);
    std::queue<Vertex> bfs;
    bfs.push(u);
    seen[u] = true;
    while (!bfs.empty()) {
        Vertex x = bfs.front();
        bfs.pop();
        if (x == v) return true;
        for (Vertex y : adj[x])
            if (!seen[y]) {
                seen[y] = true;
                bfs.push(y);
            }
    }
    return false;
}

inline int component_count(Vertex n, const std::vector<ReplayEdge>& edges) {
    detail::UnionFind uf(n);
    int comps = n;
    for (const auto& e : edges)
        if (uf.unite(e.pair.lo, e.pair.hi)) --comps;
    return comps;
}

// Kruskal under an arbitrary strict order on edges.
template <class Less>
std::vector<ReplayEdge> kruskal(Vertex n, std::vector<ReplayEdge> edges, Less less) {
    std::sort(edges.begin(), edges.end(), less);
    detail::UnionFind uf(n);
    std::vector<ReplayEdge> forest;
    for (const auto& e : edges)
        if (uf.unite(e.pair.lo, e.pair.hi)) forest.push_back(e);
    return forest;
}

// Canonical MSF by (weight, endpoints).
inline std::vector<ReplayEdge> msf(Vertex n, std::vector<ReplayEdge> edges) {
    return kruskal(n, std::move(edges), [](const ReplayEdge& a, const ReplayEdge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.pair < b.pair;
    });
}

// Canonical spanning forest by insertion time (the incremental
// structure's notion of a spanning forest).
inline std::vector<ReplayEdge> time_forest(Vertex n, std::vector<ReplayEdge> edges) {
    return kruskal(n, std::move(edges), [](const ReplayEdge& a, const ReplayEdge& b) {
        return a.inserted_at < b.inserted_at;  // insertion times are distinct
    });
}

inline std::pair<Vertex, Weight> max_degree(Vertex n,
                                            const std::vector<ReplayEdge>& edges) {
    std::vector<Weight> deg(n, 0);
    for (const auto& e : edges) {
        deg[e.pair.lo] += e.weight;
        deg[e.pair.hi] += e.weight;
    }
    Vertex best = 0;
    for (Vertex v = 1; v < n; ++v)
        if (deg[v] > deg[best]) best = v;
    return {deg[best] == 0 ? 0 : best, deg[best]};
}

// Greedy maximal matching scanning edges by endpoints then lifespan
// start; the retroactive structure uses the identical order.
inline std::size_t matching_size(Vertex n, std::vector<ReplayEdge> edges) {
    std::sort(edges.begin(), edges.end(), [](const ReplayEdge& a, const ReplayEdge& b) {
        if (a.pair != b.pair) return a.pair < b.pair;
        return a.inserted_at < b.inserted_at;
    });
    std::vector<bool> used(n, false);
    std::size_t size = 0;
    for (const auto& e : edges) {
        if (used[e.pair.lo] || used[e.pair.hi]) continue;
        used[e.pair.lo] = used[e.pair.hi] = true;
        ++size;
    }
    return size;
}

}  // namespace statics

// Brute-force reference: replays the update sequence to build G_t and
// answers every supported query with a static algorithm. Legality is
// the timeline's, so the oracle and the structures accept and reject
// exactly the same scripts.
class Oracle {
public:
    explicit Oracle(Vertex n) : seq_(n) {}

    const UpdateSequence& sequence() const { return seq_; }

    void create_insert(Vertex u, Vertex v, Weight w, Time t) {
        seq_.create(Update{UpdateKind::Insert, VertexPair(u, v), w, t});
    }
    void create_delete(Vertex u, Vertex v, Time t) {
        seq_.create(Update{UpdateKind::Delete, VertexPair(u, v), 1, t});
    }
    void cancel(Time t) { seq_.cancel(t); }

    Answer query(const Query& q) const {
        const Vertex n = seq_.vertex_count();
        std::vector<ReplayEdge> edges = graph_at(q.t);
        switch (q.kind) {
            case QueryKind::Conn:
                check_vertex(q.u, n);
                check_vertex(q.v, n);
                return Answer::boolean(statics::connected(n, edges, q.u, q.v));
            case QueryKind::SfSize:
                return Answer::integer(n - statics::component_count(n, edges));
            case QueryKind::Sf:
                return forest_answer(statics::time_forest(n, std::move(edges)),
                                     /*by_time=*/true);
            case QueryKind::Msf:
                return forest_answer(statics::msf(n, std::move(edges)),
                                     /*by_time=*/false);
            case QueryKind::MsfWeight: {
                Weight total = 0;
                for (const auto& e : statics::msf(n, std::move(edges)))
                    total += e.weight;
                return Answer::rational(Rational(total));
            }
            case QueryKind::MaxDeg: {
                auto [v, d] = statics::max_degree(n, edges);
                return Answer::degree(v, d);
            }
            case QueryKind::MatchSize:
                return Answer::integer(
                    static_cast<std::int64_t>(statics::matching_size(n, std::move(edges))));
            case QueryKind::Edges: {
                std::sort(edges.begin(), edges.end(),
                          [](const ReplayEdge& a, const ReplayEdge& b) {
                              return a.pair < b.pair;  // one lifespan per pair at t
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
        std::vector<ReplayEdge> edges;
        for (const auto& [pair, w] : seq_.edges_at(t))
            edges.push_back(ReplayEdge{pair, w, seq_.span_at(pair, t)->span.start});
        return edges;
    }

    static Answer forest_answer(std::vector<ReplayEdge> forest, bool by_time) {
        std::vector<AnswerEdge> out;
        for (const auto& e : forest)
            out.push_back(AnswerEdge{
                e.pair, Rational(by_time ? e.inserted_at.value : e.weight)});
        std::sort(out.begin(), out.end(), [](const AnswerEdge& a, const AnswerEdge& b) {
            if (a.weight != b.weight) return a.weight < b.weight;
            return a.pair < b.pair;
        });
        return Answer::forest(std::move(out));
    }

    UpdateSequence seq_;
};

struct QueryMismatch {
    std::size_t index = 0;
    Query query;
    std::string left;
    std::string right;
};

using QueryRunner = std::function<Answer(const Query&)>;

// Runs every query against both runners; empty result means agreement.
inline std::vector<QueryMismatch> diff_answers(const std::vector<Query>& queries,
                                               const QueryRunner& left,
                                               const QueryRunner& right) {
    std::vector<QueryMismatch> mismatches;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        Answer a = left(queries[i]);
        Answer b = right(queries[i]);
        if (a != b)
            mismatches.push_back(QueryMismatch{i, queries[i], a.str(), b.str()});
    }
    return mismatches;
}

}  // namespace retrograph
