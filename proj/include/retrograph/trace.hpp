#pragma once

#include <retrograph/query.hpp>
#include <retrograph/timeline.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace retrograph {

struct TraceOp {
    enum class Kind { CreateInsert, CreateDelete, Cancel, Query };

    Kind kind = Kind::Query;
    Vertex u = 0;
    Vertex v = 0;
    Weight weight = 1;
    Time t;
    QueryKind query = QueryKind::Conn;

    friend bool operator==(const TraceOp& a, const TraceOp& b) {
        if (a.kind != b.kind || a.t != b.t) return false;
        switch (a.kind) {
            case Kind::CreateInsert:
                return a.u == b.u && a.v == b.v && a.weight == b.weight;
            case Kind::CreateDelete:
                return a.u == b.u && a.v == b.v;
            case Kind::Cancel:
                return true;
            case Kind::Query:
                return a.query == b.query &&
                       (a.query != QueryKind::Conn || (a.u == b.u && a.v == b.v));
        }
        return false;
    }
};

// A serialized sequence of retroactive operations and queries, with
// optional expected answers keyed by query index.
struct Trace {
    Vertex n = 0;
    std::vector<TraceOp> ops;
    std::map<std::size_t, std::string> expects;

    std::size_t query_count() const {
        std::size_t q = 0;
        for (const auto& op : ops)
            if (op.kind == TraceOp::Kind::Query) ++q;
        return q;
    }

    friend bool operator==(const Trace& a, const Trace& b) {
        return a.n == b.n && a.ops == b.ops && a.expects == b.expects;
    }
};

namespace trace_detail {

[[noreturn]] inline void syntax_error(std::size_t line, const std::string& what) {
    raise(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

inline std::int64_t parse_int(const std::string& tok, std::size_t line) {
    try {
        std::size_t pos = 0;
        std::int64_t value = std::stoll(tok, &pos);
        if (pos != tok.size()) syntax_error(line, "bad integer '" + tok + "'");
        return value;
    } catch (const std::logic_error&) {
        syntax_error(line, "bad integer '" + tok + "'");
    }
}

inline Vertex parse_vertex(const std::string& tok, std::size_t line) {
    std::int64_t v = parse_int(tok, line);
    if (v < 0 || v > std::numeric_limits<Vertex>::max())
        syntax_error(line, "vertex out of range");
    return static_cast<Vertex>(v);
}

inline Time parse_time(const std::string& tok, std::size_t line, bool allow_now) {
    if (tok == "now") {
        if (!allow_now) syntax_error(line, "'now' is not a legal update time");
        return Time::now();
    }
    std::int64_t value = parse_int(tok, line);
    if (value <= 0) syntax_error(line, "times must be strictly positive");
    return Time(value);
}

inline void expect_at(const std::vector<std::string>& tok, std::size_t at,
                      std::size_t line) {
    if (at >= tok.size() || tok[at] != "@")
        syntax_error(line, "expected '@ <time>'");
}

}  // namespace trace_detail

// Parses the v1 trace grammar. Syntax problems raise SyntaxError with
// the line number; operations that the timeline would reject raise
// IllegalOperation with the line number and the underlying reason.
inline Trace parse_trace(const std::string& text) {
    using trace_detail::expect_at;
    using trace_detail::parse_int;
    using trace_detail::parse_time;
    using trace_detail::parse_vertex;
    using trace_detail::syntax_error;

    Trace trace;
    std::optional<UpdateSequence> legality;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    std::size_t queries = 0;

    while (std::getline(in, line)) {
        ++line_no;
        auto tok = trace_detail::tokenize(line);
        if (tok.empty()) continue;

        if (!saw_header) {
            if (tok.size() != 3 || tok[0] != "retrograph-trace" || tok[1] != "v1" ||
                tok[2].rfind("n=", 0) != 0)
                syntax_error(line_no, "expected header 'retrograph-trace v1 n=<count>'");
            std::int64_t n = parse_int(tok[2].substr(2), line_no);
            if (n < 1) syntax_error(line_no, "vertex count must be positive");
            trace.n = static_cast<Vertex>(n);
            legality.emplace(trace.n);
            saw_header = true;
            continue;
        }

        TraceOp op;
        if (tok[0] == "create" && tok.size() >= 2 &&
            (tok[1] == "insert" || tok[1] == "delete")) {
            if (tok.size() < 6) syntax_error(line_no, "truncated create");
            op.kind = tok[1] == "insert" ? TraceOp::Kind::CreateInsert
                                         : TraceOp::Kind::CreateDelete;
            op.u = parse_vertex(tok[2], line_no);
            op.v = parse_vertex(tok[3], line_no);
            std::size_t at = 4;
            if (op.kind == TraceOp::Kind::CreateInsert &&
                tok[at].rfind("w=", 0) == 0) {
                op.weight = parse_int(tok[at].substr(2), line_no);
                if (op.weight < 1) syntax_error(line_no, "weights must be positive");
                ++at;
            }
            expect_at(tok, at, line_no);
            if (at + 2 != tok.size()) syntax_error(line_no, "trailing tokens");
            op.t = parse_time(tok[at + 1], line_no, /*allow_now=*/false);
        } else if (tok[0] == "cancel") {
            expect_at(tok, 1, line_no);
            if (tok.size() != 3) syntax_error(line_no, "cancel takes only a time");
            op.kind = TraceOp::Kind::Cancel;
            op.t = parse_time(tok[2], line_no, /*allow_now=*/false);
        } else if (tok[0] == "query") {
            if (tok.size() < 2) syntax_error(line_no, "truncated query");
            op.kind = TraceOp::Kind::Query;
            std::size_t at = 2;
            if (tok[1] == "conn") {
                op.query = QueryKind::Conn;
                if (tok.size() < 4) syntax_error(line_no, "conn takes two vertices");
                op.u = parse_vertex(tok[2], line_no);
                op.v = parse_vertex(tok[3], line_no);
                at = 4;
            } else if (tok[1] == "sfsize") {
                op.query = QueryKind::SfSize;
            } else if (tok[1] == "sf") {
                op.query = QueryKind::Sf;
            } else if (tok[1] == "msf") {
                op.query = QueryKind::Msf;
            } else if (tok[1] == "msfweight") {
                op.query = QueryKind::MsfWeight;
            } else if (tok[1] == "maxdeg") {
                op.query = QueryKind::MaxDeg;
            } else if (tok[1] == "matchsize") {
                op.query = QueryKind::MatchSize;
            } else if (tok[1] == "edges") {
                op.query = QueryKind::Edges;
            } else {
                syntax_error(line_no, "unknown query kind '" + tok[1] + "'");
            }
            expect_at(tok, at, line_no);
            if (at + 2 != tok.size()) syntax_error(line_no, "trailing tokens");
            op.t = parse_time(tok[at + 1], line_no, /*allow_now=*/true);
        } else if (tok[0] == "expect") {
            if (tok.size() < 3) syntax_error(line_no, "truncated expect");
            std::int64_t idx = parse_int(tok[1], line_no);
            if (idx < 0) syntax_error(line_no, "negative query index");
            std::string answer = tok[2];
            for (std::size_t i = 3; i < tok.size(); ++i) answer += " " + tok[i];
            trace.expects[static_cast<std::size_t>(idx)] = answer;
            continue;
        } else {
            syntax_error(line_no, "unknown directive '" + tok[0] + "'");
        }

        // Legality is validated during parsing so a broken trace is
        // rejected with its line number, not at run time.
        try {
            switch (op.kind) {
                case TraceOp::Kind::CreateInsert:
                    legality->create(Update{UpdateKind::Insert, VertexPair(op.u, op.v),
                                            op.weight, op.t});
                    break;
                case TraceOp::Kind::CreateDelete:
                    legality->create(
                        Update{UpdateKind::Delete, VertexPair(op.u, op.v), 1, op.t});
                    break;
                case TraceOp::Kind::Cancel:
                    legality->cancel(op.t);
                    break;
                case TraceOp::Kind::Query:
                    if (op.query == QueryKind::Conn) {
                        check_vertex(op.u, trace.n);
                        check_vertex(op.v, trace.n);
                    }
                    ++queries;
                    break;
            }
        } catch (const Error& e) {
            raise(ErrorCode::IllegalOperation,
                  "line " + std::to_string(line_no) + ": " + e.what());
        }
        trace.ops.push_back(op);
    }

    if (!saw_header) syntax_error(line_no + 1, "missing header");
    for (const auto& [idx, answer] : trace.expects)
        if (idx >= queries)
            raise(ErrorCode::SyntaxError,
                  "expect references query " + std::to_string(idx) + " of " +
                      std::to_string(queries));
    return trace;
}

inline std::string print_trace(const Trace& trace) {
    std::ostringstream out;
    out << "retrograph-trace v1 n=" << trace.n << "\n";
    for (const auto& op : trace.ops) {
        switch (op.kind) {
            case TraceOp::Kind::CreateInsert:
                out << "create insert " << op.u << " " << op.v;
                if (op.weight != 1) out << " w=" << op.weight;
                out << " @ " << to_string(op.t) << "\n";
                break;
            case TraceOp::Kind::CreateDelete:
                out << "create delete " << op.u << " " << op.v << " @ "
                    << to_string(op.t) << "\n";
                break;
            case TraceOp::Kind::Cancel:
                out << "cancel @ " << to_string(op.t) << "\n";
                break;
            case TraceOp::Kind::Query:
                out << "query " << query_kind_name(op.query);
                if (op.query == QueryKind::Conn) out << " " << op.u << " " << op.v;
                out << " @ " << to_string(op.t) << "\n";
                break;
        }
    }
    for (const auto& [idx, answer] : trace.expects)
        out << "expect " << idx << " " << answer << "\n";
    return out.str();
}

}  // namespace retrograph
