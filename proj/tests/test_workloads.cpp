#include <retrograph/cli.hpp>
#include <retrograph/workloads.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace retrograph;

TEST_CASE("generators are deterministic under a fixed seed") {
    RandomTraceParams p;
    p.n = 10;
    p.updates = 200;
    p.queries = 100;
    p.seed = 12345;
    CHECK(print_trace(random_trace(p)) == print_trace(random_trace(p)));

    auto inst = OmvInstance::random(6, 99);
    CHECK(print_trace(omv_connectivity_trace(inst)) ==
          print_trace(omv_connectivity_trace(inst)));
}

TEST_CASE("random traces are legal and exercise retroactive targets") {
    RandomTraceParams p;
    p.n = 16;
    p.updates = 400;
    p.queries = 100;
    p.seed = 9;
    p.max_weight = 12;
    Trace t = random_trace(p);
    // parse re-validates every operation against the timeline rules
    CHECK(parse_trace(print_trace(t)) == t);

    // the generator really targets the past: some create lands at a time
    // smaller than an earlier op's time
    bool out_of_order = false;
    std::int64_t prev = 0;
    for (const auto& op : t.ops) {
        if (op.kind == TraceOp::Kind::Query || op.kind == TraceOp::Kind::Cancel)
            continue;
        if (op.t.value < prev) out_of_order = true;
        prev = op.t.value;
    }
    CHECK(out_of_order);

    // an all-insert mix produces exactly `updates` create-inserts
    RandomTraceParams all_ins;
    all_ins.n = 5;
    all_ins.updates = 10;
    all_ins.queries = 0;
    all_ins.insert_ratio = 1.0;
    all_ins.delete_ratio = 0.0;
    all_ins.cancel_ratio = 0.0;
    all_ins.seed = 1;
    Trace ti = random_trace(all_ins);
    std::size_t inserts = 0;
    for (const auto& op : ti.ops)
        if (op.kind == TraceOp::Kind::CreateInsert) ++inserts;
    CHECK(inserts == 10);
}

TEST_CASE("omv connectivity expectations on an identity matrix") {
    OmvInstance inst;
    inst.n = 2;
    inst.matrix = {{1, 0}, {0, 1}};
    inst.vectors = {{1, 0}, {0, 0}};
    Trace t = omv_connectivity_trace(inst);
    // round 0, v = (1,0): row 0 expects true, row 1 expects false
    REQUIRE(t.expects.at(0) == "true");
    REQUIRE(t.expects.at(1) == "false");
    // round 1, v = 0: everything false
    REQUIRE(t.expects.at(2) == "false");
    REQUIRE(t.expects.at(3) == "false");
    CHECK(verify_trace(t).ok());
}

TEST_CASE("omv gadgets verify against oracle and structures") {
    for (std::uint64_t seed : {1ull, 2ull}) {
        auto inst = OmvInstance::random(8, seed);
        CHECK(verify_trace(omv_connectivity_trace(inst)).ok());
        CHECK(verify_trace(omv_msf_trace(inst)).ok());
        CHECK(verify_trace(omv_maxdeg_trace(inst)).ok());
    }

    OmvInstance zeros;
    zeros.n = 3;
    zeros.matrix.assign(3, {0, 0, 0});
    zeros.vectors.assign(3, {0, 0, 0});
    Trace t = omv_connectivity_trace(zeros);
    for (const auto& [idx, expect] : t.expects) CHECK(expect == "false");
    CHECK(verify_trace(t).ok());
}

TEST_CASE("maxdeg gadget is incremental and matches the worked example") {
    OmvInstance inst;
    inst.n = 4;
    inst.matrix = {{1, 0, 0, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}};
    inst.vectors = {{1, 1, 1, 1}, {0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}};
    Trace t = omv_maxdeg_trace(inst);

    for (const auto& op : t.ops) {
        CHECK(op.kind != TraceOp::Kind::CreateDelete);
        CHECK(op.kind != TraceOp::Kind::Cancel);
    }

    // U-B edges present after the t_3 block (u_j = j, b_k = 4 + k)
    std::set<std::pair<Vertex, Vertex>> got;
    for (const auto& op : t.ops)
        if (op.kind == TraceOp::Kind::CreateInsert && op.t.value < 4'000'000 &&
            op.t.value >= 1'000'000 && op.v >= 4 && op.v < 8)
            got.emplace(op.u, op.v);
    std::set<std::pair<Vertex, Vertex>> want = {
        {0, 4}, {3, 7},          // t_1: signal edges of m_1 = (1,0,0,1)
        {1, 5}, {2, 6},          // t_2: padding for m_1 zeros
        {0, 5}, {1, 6},          // t_2: signal edges of m_2 = (1,1,0,0)
        {2, 7}, {3, 4},          // t_3: padding for m_2 zeros (cyclic wrap)
        {2, 4}, {3, 5},          // t_3: signal edges of m_3 = (0,0,1,1)
    };
    CHECK(got == want);

    // max degree equals i + r exactly when m_i . v_r = 1
    std::size_t qidx = 0;
    for (int r = 0; r < 4; ++r)
        for (int i = 0; i < 4; ++i) {
            int expect = std::stoi(t.expects.at(qidx++));
            if (inst.product(i, r))
                CHECK(expect == (i + 1) + (r + 1));
            else
                CHECK(expect <= (i + 1) + (r + 1) - 1);
        }

    CHECK(verify_trace(t).ok());
}

TEST_CASE("replay baseline equals the oracle on all generator families") {
    auto inst = OmvInstance::random(6, 5);
    RandomTraceParams p;
    p.n = 10;
    p.updates = 150;
    p.queries = 60;
    p.seed = 31;
    p.query_kinds = {QueryKind::Conn, QueryKind::MaxDeg, QueryKind::MsfWeight,
                     QueryKind::MatchSize};
    for (const Trace& t : {random_trace(p), omv_connectivity_trace(inst),
                           omv_msf_trace(inst), omv_maxdeg_trace(inst)})
        CHECK(run_trace(t, StructureKind::Replay) ==
              run_trace(t, StructureKind::OracleKind));
}

TEST_CASE("bench produces zeroed stats on an empty trace and one block per rep") {
    Trace empty;
    empty.n = 4;
    auto report = run_bench(empty, {StructureKind::OracleKind}, 3);
    REQUIRE(report.blocks.size() == 3);
    for (const auto& b : report.blocks) {
        CHECK(b.creates.count == 0);
        CHECK(b.cancels.count == 0);
        CHECK(b.queries.count == 0);
    }

    auto inst = OmvInstance::random(4, 8);
    auto r2 = run_bench(omv_connectivity_trace(inst),
                        {StructureKind::OracleKind, StructureKind::FullConn}, 1);
    REQUIRE(r2.blocks.size() == 2);
    CHECK(r2.blocks[0].queries.count == 16);
    CHECK(r2.blocks[0].queries.mean_us > 0.0);
    CHECK(r2.text().find("kind=full-conn") != std::string::npos);
}

TEST_CASE("bench reports per-query means on a large connectivity gadget") {
    auto inst = OmvInstance::random(64, 99);
    Trace trace = omv_connectivity_trace(inst);
    auto report = run_bench(trace, {StructureKind::FullConn}, 1);
    REQUIRE(report.blocks.size() == 1);
    CHECK(report.blocks[0].queries.count == 64 * 64);
    CHECK(report.blocks[0].queries.mean_us > 0.0);
    CHECK(report.text().find("mean=") != std::string::npos);
}
