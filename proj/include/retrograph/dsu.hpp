#pragma once

#include <numeric>
#include <vector>

namespace retrograph {

struct Dsu {
    explicit Dsu(int n) : parent(n) {
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

    std::vector<int> parent;
};

}  // namespace retrograph
