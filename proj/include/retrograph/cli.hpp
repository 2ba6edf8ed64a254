#pragma once

#include <retrograph/workloads.hpp>

#include <string>
#include <vector>

namespace retrograph {

// One line per query: "<query-index> <answer>".
inline std::vector<std::string> run_trace(const Trace& trace, StructureKind kind,
                                          const RunOptions& opts = {}) {
    auto structure = make_structure(kind, trace, opts);
    std::vector<std::string> lines;
    std::size_t qidx = 0;
    for (const auto& op : trace.ops) {
        if (op.kind == TraceOp::Kind::Query) {
            Answer a = structure->answer(runner_detail::to_query(op));
            lines.push_back(std::to_string(qidx++) + " " + a.str());
        } else {
            structure->apply(op);
        }
    }
    return lines;
}

struct VerifyMismatch {
    std::size_t query_index = 0;
    std::string source;  // which runner (or "expect") disagreed with the oracle
    std::string got;
    std::string want;
};

struct VerifyReport {
    std::vector<VerifyMismatch> mismatches;
    std::vector<std::string> verified;  // runner names that were exercised
    std::size_t queries = 0;

    bool ok() const { return mismatches.empty(); }
};

// Replays the trace against the oracle, the naive replay baseline, the
// exact retroactive structures able to answer its queries, and any
// embedded expected answers. The oracle is the reference; every
// disagreement is reported. The approximate MSF structure is excluded:
// its answers are only required to bracket the exact ones.
inline VerifyReport verify_trace(const Trace& trace, const RunOptions& opts = {}) {
    bool incremental = true;
    bool kinds_present[8] = {};
    for (const auto& op : trace.ops) {
        if (op.kind == TraceOp::Kind::CreateDelete) incremental = false;
        if (op.kind == TraceOp::Kind::Query)
            kinds_present[static_cast<int>(op.query)] = true;
    }
    auto present = [&](QueryKind q) { return kinds_present[static_cast<int>(q)]; };

    std::vector<StructureKind> kinds{StructureKind::Replay};
    if (present(QueryKind::MaxDeg)) kinds.push_back(StructureKind::FullMaxDeg);
    if (present(QueryKind::Msf) || present(QueryKind::MsfWeight) ||
        present(QueryKind::SfSize))
        kinds.push_back(StructureKind::FullMsf);
    if (present(QueryKind::Conn)) kinds.push_back(StructureKind::FullConn);
    if (present(QueryKind::MatchSize) || present(QueryKind::Edges))
        kinds.push_back(StructureKind::FullMatch);
    if (incremental && (present(QueryKind::Conn) || present(QueryKind::Sf) ||
                        present(QueryKind::SfSize)))
        kinds.push_back(StructureKind::IncConn);

    auto oracle = make_structure(StructureKind::OracleKind, trace, opts);
    std::vector<std::unique_ptr<TraceStructure>> structures;
    VerifyReport report;
    report.verified.push_back("oracle");
    for (StructureKind k : kinds) {
        structures.push_back(make_structure(k, trace, opts));
        report.verified.push_back(structure_kind_name(k));
    }

    std::size_t qidx = 0;
    for (const auto& op : trace.ops) {
        if (op.kind != TraceOp::Kind::Query) {
            oracle->apply(op);
            for (auto& s : structures) s->apply(op);
            continue;
        }
        const Query q = runner_detail::to_query(op);
        const Answer want = oracle->answer(q);
        const std::string want_str = want.str();
        for (std::size_t i = 0; i < structures.size(); ++i) {
            if (!structure_supports(kinds[i], q.kind)) continue;
            Answer got = structures[i]->answer(q);
            if (got != want)
                report.mismatches.push_back(VerifyMismatch{
                    qidx, structure_kind_name(kinds[i]), got.str(), want_str});
        }
        auto exp = trace.expects.find(qidx);
        if (exp != trace.expects.end() && exp->second != want_str)
            report.mismatches.push_back(
                VerifyMismatch{qidx, "expect", exp->second, want_str});
        ++qidx;
    }
    report.queries = qidx;
    return report;
}

}  // namespace retrograph
