#include <retrograph/checkpoint_tree.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace retrograph;

namespace {

struct CountSummary {
    std::int64_t count = 0;
    void add(const SummaryEdge&) { ++count; }
    void remove(const SummaryEdge&) { --count; }
};

using Tree = CheckpointTree<CountSummary>;

// Drives an update sequence and a checkpoint tree in lockstep.
struct Driver {
    UpdateSequence seq;
    Tree tree;

    explicit Driver(Vertex n) : seq(n), tree([] { return CountSummary{}; }) {}

    void create(const Update& upd) { tree.apply_create(upd, seq.create(upd)); }

    void cancel(Time t) {
        auto [upd, delta] = seq.cancel(t);
        tree.apply_cancel(t, delta);
    }
};

Update ins(Vertex u, Vertex v, std::int64_t t) {
    return Update{UpdateKind::Insert, VertexPair(u, v), 1, Time(t)};
}

Update del(Vertex u, Vertex v, std::int64_t t) {
    return Update{UpdateKind::Delete, VertexPair(u, v), 1, Time(t)};
}

std::set<LifespanKey> path_union(const Tree& tree, Time t) {
    std::set<LifespanKey> out;
    for (const auto* node : tree.root_path(t))
        out.insert(node->dset.begin(), node->dset.end());
    return out;
}

}  // namespace

namespace retrograph::detail {
struct CheckpointTestAccess {
    // Moves one stored edge to a node that must not hold it.
    static bool corrupt(Tree& tree) {
        for (auto& [key, rec] : tree.placements_) {
            for (auto*& tile : rec.tiles) {
                if (tile != tree.root_) {
                    tile->dset.erase(key);
                    tile = tree.root_;
                    tree.root_->dset.insert(key);
                    return true;
                }
            }
        }
        return false;
    }
};
}  // namespace retrograph::detail

TEST_CASE("placement on a balanced four-leaf tree") {
    Driver d(8);
    // Sequential inserts at 1..4; the scapegoat rebuild leaves a
    // perfectly balanced tree with leaves (1,2] (2,3] (3,4] (4,now].
    for (std::int64_t t : {1, 2, 3, 4}) d.create(ins(0, static_cast<Vertex>(t), t));
    REQUIRE(d.tree.leaf_count() == 4);
    REQUIRE(d.tree.height() == 2);

    // L covering leaves B and C sits in two different parent subtrees.
    auto tiles = d.tree.place(Lifespan{Time(2), Time(4)});
    REQUIRE(tiles.size() == 2);
    CHECK(tiles[0]->interval == Lifespan{Time(2), Time(3)});
    CHECK(tiles[1]->interval == Lifespan{Time(3), Time(4)});

    // Sibling leaves collapse to their parent.
    auto ab = d.tree.place(Lifespan{Time(1), Time(3)});
    REQUIRE(ab.size() == 1);
    CHECK(ab[0]->interval == Lifespan{Time(1), Time(3)});
    CHECK_FALSE(ab[0]->is_leaf);

    // The full span collapses to the root.
    auto all = d.tree.place(Lifespan{Time(1), Time::now()});
    REQUIRE(all.size() == 1);
    CHECK(all[0] == d.tree.root());

    try {
        d.tree.place(Lifespan{Time(99), Time::now()});
        FAIL("expected MisalignedLifespan");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MisalignedLifespan);
    }
}

TEST_CASE("root path unions give E_t") {
    Driver d(8);
    d.create(ins(0, 1, 5));
    auto path = d.tree.root_path(Time(9));
    REQUIRE(path.size() == 1);
    CHECK(path_union(d.tree, Time(9)).count(LifespanKey{VertexPair(0, 1), Time(5)}) == 1);

    // before the first update the graph is empty
    CHECK(d.tree.root_path(Time(5)).empty());
    CHECK(d.tree.root_path(Time(1)).empty());
}

TEST_CASE("create and cancel reshape leaves and placements") {
    Driver d(8);
    d.create(ins(0, 1, 5));
    REQUIRE(d.tree.leaf_count() == 1);
    REQUIRE(d.tree.root()->dset.size() == 1);

    d.create(del(0, 1, 9));
    REQUIRE(d.tree.leaf_count() == 2);
    // e now lives exactly on the leaf (5,9]
    auto path = d.tree.root_path(Time(7));
    REQUIRE(path.size() == 2);
    CHECK(path[0]->interval == Lifespan{Time(5), Time(9)});
    CHECK(path[0]->dset.size() == 1);
    CHECK(path[1]->dset.empty());
    CHECK(path_union(d.tree, Time(10)).empty());

    d.cancel(Time(9));
    REQUIRE(d.tree.leaf_count() == 1);
    CHECK(d.tree.root()->dset.size() == 1);
    CHECK(d.tree.root()->interval == Lifespan{Time(5), Time::now()});

    d.cancel(Time(5));
    CHECK(d.tree.leaf_count() == 0);
    CHECK(d.tree.root() == nullptr);
}

TEST_CASE("updates earlier than the first one prepend a leaf") {
    Driver d(8);
    d.create(ins(0, 1, 10));
    d.create(ins(1, 2, 20));
    REQUIRE(d.tree.root()->interval == Lifespan{Time(10), Time::now()});

    // prepend: spine intervals grow left; the lifespan starting at the
    // old first time must stay canonically placed
    d.create(ins(2, 3, 5));
    CHECK(d.tree.leaf_count() == 3);
    CHECK(d.tree.root()->interval == Lifespan{Time(5), Time::now()});
    REQUIRE(d.tree.check_invariants().ok());
    CHECK(path_union(d.tree, Time(7)).size() == 1);
    CHECK(path_union(d.tree, Time(25)).size() == 3);

    // cancelling the earliest update removes its leaf and shrinks back
    d.cancel(Time(5));
    CHECK(d.tree.leaf_count() == 2);
    CHECK(d.tree.root()->interval == Lifespan{Time(10), Time::now()});
    REQUIRE(d.tree.check_invariants().ok());
    CHECK(path_union(d.tree, Time(15)).size() == 1);
}

TEST_CASE("skewed insertions stay balanced through rebuilds") {
    Driver d(70);
    for (std::int64_t t = 1; t <= 64; ++t) {
        d.create(ins(0, static_cast<Vertex>(t), t * 10));
        auto report = d.tree.check_invariants(8);
        for (const auto& v : report.violations) FAIL(v);
    }
    CHECK(d.tree.rebuild_count() > 0);
    CHECK(d.tree.leaf_count() == 64);
    CHECK(d.tree.height() <= 2 * 6 + 2);

    // leaf order still matches the update times
    std::int64_t prev = 0;
    for (const auto* node : d.tree.root_path(Time::now()))
        if (node->is_leaf) CHECK(node->interval.start.value > prev);
}

TEST_CASE("hand-corrupted storage is reported") {
    Driver d(8);
    for (std::int64_t t : {1, 2, 3, 4}) d.create(ins(0, static_cast<Vertex>(t), t));
    d.create(del(0, 1, 6));
    REQUIRE(d.tree.check_invariants().ok());
    REQUIRE(retrograph::detail::CheckpointTestAccess::corrupt(d.tree));
    auto report = d.tree.check_invariants();
    CHECK_FALSE(report.ok());
}

TEST_CASE("random scripts pass the invariant audit") {
    std::mt19937_64 rng(0xc0ffee);
    const Vertex n = 10;
    Driver d(n);
    std::set<std::int64_t> times;
    int performed = 0;
    while (performed < 1500) {
        int action = static_cast<int>(rng() % 4);
        std::int64_t t = static_cast<std::int64_t>(rng() % 100000) + 1;
        Vertex u = static_cast<Vertex>(rng() % n);
        Vertex v = static_cast<Vertex>(rng() % n);
        if (u == v) continue;
        try {
            if (action <= 1) {
                d.create(ins(u, v, t));
                times.insert(t);
            } else if (action == 2) {
                d.create(del(u, v, t));
                times.insert(t);
            } else if (!times.empty()) {
                auto it = times.begin();
                std::advance(it, rng() % times.size());
                d.cancel(Time(*it));
                times.erase(it);
            } else {
                continue;
            }
        } catch (const Error&) {
            continue;
        }
        ++performed;
        if (performed % 10 == 0) {
            auto report = d.tree.check_invariants(4);
            for (const auto& viol : report.violations) FAIL(viol << " at op " << performed);
        }
        if (performed % 100 == 0) {
            // spot-check E_t equivalence against the timeline
            for (int q = 0; q < 10; ++q) {
                Time qt = (q == 0) ? Time::now()
                                   : Time(static_cast<std::int64_t>(rng() % 110000));
                auto edges = d.seq.edges_at(qt);
                auto got = path_union(d.tree, qt);
                REQUIRE(got.size() == edges.size());
                for (const auto& [pair, w] : edges) {
                    const LifespanRec* rec = d.seq.span_at(pair, qt);
                    REQUIRE(got.count(LifespanKey{pair, rec->span.start}) == 1);
                }
            }
        }
    }
    CHECK(d.tree.summary_adds() >= d.tree.summary_removes());
}
