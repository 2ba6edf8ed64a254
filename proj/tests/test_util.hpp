#pragma once

#include <retrograph/core.hpp>
#include <retrograph/forest_engine.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace testutil {

using namespace retrograph;

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

struct RefForest {
    std::set<EdgeKey> edges;
    Weight total = 0;
    std::vector<int> component;  // normalized labels
};

// From-scratch Kruskal under the canonical (weight, endpoints, id) order.
inline RefForest kruskal_reference(Vertex n, std::vector<EdgeKey> edges) {
    std::sort(edges.begin(), edges.end());
    RefForest out;
    Dsu dsu(n);
    for (const EdgeKey& e : edges) {
        if (dsu.unite(e.pair.lo, e.pair.hi)) {
            out.edges.insert(e);
            out.total += e.weight;
        }
    }
    out.component.assign(n, -1);
    std::vector<int> label(n, -1);
    int next = 0;
    for (Vertex v = 0; v < n; ++v) {
        int r = dsu.find(v);
        if (label[r] == -1) label[r] = next++;
        out.component[v] = label[r];
    }
    return out;
}

inline std::set<EdgeKey> forest_keys(const ForestEngine& engine) {
    std::set<EdgeKey> out;
    for (const auto& e : engine.forest()) out.insert(EdgeKey{e.weight, e.pair, e.id});
    return out;
}

inline std::vector<int> engine_components(ForestEngine& engine) {
    const Vertex n = engine.vertex_count();
    std::vector<int> comp(n, -1);
    int next = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (comp[v] != -1) continue;
        comp[v] = next;
        for (Vertex w = v + 1; w < n; ++w)
            if (comp[w] == -1 && engine.connected(v, w)) comp[w] = next;
        ++next;
    }
    return comp;
}

}  // namespace testutil
