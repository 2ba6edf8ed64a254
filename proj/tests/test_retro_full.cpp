#include <retrograph/retro_full.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "test_util.hpp"

using namespace retrograph;

namespace {

// Degree scan over the replayed graph: (lowest max vertex, max degree).
std::pair<Vertex, Weight> scan_max_degree(const UpdateSequence& seq, Time t) {
    std::vector<Weight> deg(seq.vertex_count(), 0);
    for (const auto& [pair, w] : seq.edges_at(t)) {
        deg[pair.lo] += w;
        deg[pair.hi] += w;
    }
    Vertex best = 0;
    for (Vertex v = 1; v < seq.vertex_count(); ++v)
        if (deg[v] > deg[best]) best = v;
    return {deg[best] == 0 ? 0 : best, deg[best]};
}

Weight replay_msf_weight(const UpdateSequence& seq, Time t) {
    std::vector<EdgeKey> edges;
    EdgeId k = 0;
    for (const auto& [pair, w] : seq.edges_at(t)) edges.push_back({w, pair, k++});
    return testutil::kruskal_reference(seq.vertex_count(), edges).total;
}

std::size_t replay_matching(const UpdateSequence& seq, Time t) {
    std::vector<std::tuple<VertexPair, Time>> edges;
    for (const auto& [pair, w] : seq.edges_at(t))
        edges.emplace_back(pair, seq.span_at(pair, t)->span.start);
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    std::vector<bool> used(seq.vertex_count(), false);
    std::size_t size = 0;
    for (const auto& [pair, start] : edges) {
        if (used[pair.lo] || used[pair.hi]) continue;
        used[pair.lo] = used[pair.hi] = true;
        ++size;
    }
    return size;
}

}  // namespace

TEST_CASE("max degree merges degree maps along the root path") {
    MaxDegreeRetro s(5);
    CHECK(s.max_degree(Time(10)) == std::pair<Vertex, Weight>{0, 0});

    s.create_insert(0, 1, 1, Time(5));
    s.create_insert(1, 2, 1, Time(6));
    CHECK(s.max_degree(Time(7)) == std::pair<Vertex, Weight>{1, 2});
    CHECK(s.max_degree(Time(6)) == std::pair<Vertex, Weight>{0, 1});  // tie: lowest id

    s.create_delete(1, 2, Time(8));
    CHECK(s.max_degree(Time(9)) == std::pair<Vertex, Weight>{0, 1});
    CHECK(s.max_degree(Time(8)) == std::pair<Vertex, Weight>{1, 2});  // end inclusive

    s.cancel(Time(5));
    CHECK(s.max_degree(Time(7)) == std::pair<Vertex, Weight>{1, 1});
}

TEST_CASE("weighted max degree") {
    MaxDegreeRetro s(4);
    s.create_insert(0, 1, 5, Time(1));
    s.create_insert(2, 3, 4, Time(2));
    CHECK(s.max_degree(Time(3)) == std::pair<Vertex, Weight>{0, 5});
}

TEST_CASE("degree summaries are sparse maps with nonzero entries") {
    MaxDegreeRetro s(5);
    s.create_insert(0, 1, 7, Time(5));
    const auto* leaf = s.tree().root_path(Time(6)).front();
    REQUIRE(leaf->summary.degree.size() == 2);
    CHECK(leaf->summary.degree.at(0) == 7);
    CHECK(leaf->summary.degree.at(1) == 7);

    s.cancel(Time(5));
    CHECK(s.tree().root() == nullptr);  // map entries vanished with the edge
}

TEST_CASE("msf query gathers node forests and reruns Kruskal") {
    MsfRetro s(4);
    CHECK(s.msf(Time(1)).forest.empty());
    CHECK(s.msf(Time(1)).total_weight == 0);

    s.create_insert(0, 1, 1, Time(10));
    s.create_insert(1, 2, 2, Time(20));
    s.create_insert(0, 2, 3, Time(30));
    auto res = s.msf(Time(35));
    CHECK(res.total_weight == 3);
    CHECK(res.forest.size() == 2);

    // before the triangle closes, the 2-path is the forest
    CHECK(s.msf(Time(25)).total_weight == 3);
    CHECK(s.msf(Time(15)).total_weight == 1);
}

TEST_CASE("connectivity via gathered forests") {
    MsfRetro s(4);
    s.create_insert(0, 1, 1, Time(10));
    s.create_insert(1, 2, 1, Time(20));
    CHECK(s.connected(0, 2, Time(25)));
    CHECK_FALSE(s.connected(0, 2, Time(15)));
    CHECK(s.connected(3, 3, Time(1)));

    s.create_delete(0, 1, Time(30));
    CHECK_FALSE(s.connected(0, 2, Time(31)));
    CHECK(s.connected(0, 2, Time(30)));  // deletion end inclusive
}

TEST_CASE("edge set and matching queries") {
    EdgeSetRetro s(6);
    CHECK(s.edges(Time(5)).empty());
    CHECK(s.matching_size(Time(5)) == 0);

    s.create_insert(0, 1, 1, Time(3));
    s.create_delete(0, 1, Time(7));
    CHECK(s.edges(Time(3)).empty());       // start exclusive
    CHECK(s.edges(Time(7)).size() == 1);   // end inclusive
    CHECK(s.edges(Time(5)).size() == 1);

    s.create_insert(2, 3, 1, Time(4));
    CHECK(s.matching_size(Time(5)) == 2);

    EdgeSetRetro conflict(4);
    conflict.create_insert(0, 1, 1, Time(1));
    conflict.create_insert(1, 2, 1, Time(2));
    CHECK(conflict.matching_size(Time(3)) == 1);
}

TEST_CASE("random mixed scripts agree with replay on all query kinds") {
    std::mt19937_64 rng(314159);
    const Vertex n = 12;
    MaxDegreeRetro md(n);
    MsfRetro msf(n);
    EdgeSetRetro es(n);
    UpdateSequence shadow(n);
    std::set<std::int64_t> times;

    int performed = 0;
    while (performed < 800) {
        int action = static_cast<int>(rng() % 4);
        std::int64_t t = static_cast<std::int64_t>(rng() % 1000000) + 1;
        Vertex u = static_cast<Vertex>(rng() % n);
        Vertex v = static_cast<Vertex>(rng() % n);
        Weight w = static_cast<Weight>(rng() % 30 + 1);
        if (u == v) continue;
        try {
            if (action <= 1) {
                shadow.create(Update{UpdateKind::Insert, VertexPair(u, v), w, Time(t)});
                md.create_insert(u, v, w, Time(t));
                msf.create_insert(u, v, w, Time(t));
                es.create_insert(u, v, w, Time(t));
                times.insert(t);
            } else if (action == 2) {
                shadow.create(Update{UpdateKind::Delete, VertexPair(u, v), 1, Time(t)});
                md.create_delete(u, v, Time(t));
                msf.create_delete(u, v, Time(t));
                es.create_delete(u, v, Time(t));
                times.insert(t);
            } else if (!times.empty()) {
                auto it = times.begin();
                std::advance(it, rng() % times.size());
                shadow.cancel(Time(*it));
                md.cancel(Time(*it));
                msf.cancel(Time(*it));
                es.cancel(Time(*it));
                times.erase(it);
            } else {
                continue;
            }
        } catch (const Error&) {
            continue;
        }
        ++performed;

        if (performed % 40 == 0) {
            const std::size_t height = msf.tree().height();
            for (int q = 0; q < 20; ++q) {
                Time qt = (q == 0) ? Time::now()
                                   : Time(static_cast<std::int64_t>(rng() % 1100000));
                REQUIRE(md.max_degree(qt) == scan_max_degree(shadow, qt));

                auto m = msf.msf(qt);
                REQUIRE(m.total_weight == replay_msf_weight(shadow, qt));
                REQUIRE(m.candidates <= static_cast<std::size_t>(n - 1) * (height + 1));

                Vertex a = static_cast<Vertex>(rng() % n);
                Vertex b = static_cast<Vertex>(rng() % n);
                Dsu dsu(n);
                for (const auto& [pair, ww] : shadow.edges_at(qt))
                    dsu.unite(pair.lo, pair.hi);
                REQUIRE(msf.connected(a, b, qt) == (dsu.find(a) == dsu.find(b)));

                auto edges = es.edges(qt);
                REQUIRE(edges.size() == shadow.edges_at(qt).size());
                REQUIRE(es.matching_size(qt) == replay_matching(shadow, qt));
            }
        }
    }

    // sampled nodes: each ForestSummary holds an MSF of its stored edges
    std::vector<const CheckpointTree<ForestSummary>::Node*> stack{msf.tree().root()};
    int checked = 0;
    while (!stack.empty() && checked < 50) {
        const auto* node = stack.back();
        stack.pop_back();
        if (!node->is_leaf) {
            stack.push_back(node->left);
            stack.push_back(node->right);
        }
        if (node->dset.empty()) continue;
        ++checked;
        std::vector<EdgeKey> dset_edges;
        EdgeId k = 0;
        for (const LifespanKey& key : node->dset) {
            // weight lives in the shadow sequence's lifespan record
            const auto& spans = shadow.lifespan_index().at(key.pair);
            for (const auto& rec : spans)
                if (rec.span.start == key.start)
                    dset_edges.push_back({rec.weight, key.pair, k++});
        }
        auto ref = testutil::kruskal_reference(n, dset_edges);
        Weight got = 0;
        for (const auto& e : node->summary.forest()) got += e.weight;
        REQUIRE(got == ref.total);
    }
}

TEST_CASE("degree tracker basics") {
    DegreeTracker dt(4);
    CHECK(dt.max_degree() == 0);
    dt.insert_edge(0, 1);
    CHECK(dt.max_degree() == 1);
    dt.insert_edge(0, 2);
    CHECK(dt.max_degree() == 2);
    dt.delete_edge(0, 1);
    CHECK(dt.max_degree() == 1);
    dt.delete_edge(0, 2);
    CHECK(dt.max_degree() == 0);
    try {
        dt.insert_edge(0, 9);
        FAIL("expected InvalidVertex");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidVertex);
    }
}

TEST_CASE("degree tracker matches a shadow array over random updates") {
    std::mt19937_64 rng(42);
    const Vertex n = 20;
    DegreeTracker dt(n);
    std::set<VertexPair> alive;
    std::vector<int> deg(n, 0);
    for (int step = 0; step < 10000; ++step) {
        Vertex u = static_cast<Vertex>(rng() % n);
        Vertex v = static_cast<Vertex>(rng() % n);
        if (u == v) continue;
        VertexPair p(u, v);
        if (alive.count(p)) {
            dt.delete_edge(u, v);
            alive.erase(p);
            --deg[u];
            --deg[v];
        } else {
            dt.insert_edge(u, v);
            alive.insert(p);
            ++deg[u];
            ++deg[v];
        }
        REQUIRE(dt.max_degree() == *std::max_element(deg.begin(), deg.end()));
    }
}
