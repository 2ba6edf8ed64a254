#pragma once

#include <retrograph/core.hpp>

#include <string>
#include <variant>
#include <vector>

namespace retrograph {

enum class QueryKind {
    Conn,       // connected(u, v, t)
    SfSize,     // spanning forest size at t
    Sf,         // spanning forest at t (weights are insertion times)
    Msf,        // minimum spanning forest at t (problem weights)
    MsfWeight,  // total MSF weight at t
    MaxDeg,     // maximum (weighted) degree at t
    MatchSize,  // canonical greedy maximal matching size at t
    Edges,      // E_t
};

inline const char* query_kind_name(QueryKind k) {
    switch (k) {
        case QueryKind::Conn: return "conn";
        case QueryKind::SfSize: return "sfsize";
        case QueryKind::Sf: return "sf";
        case QueryKind::Msf: return "msf";
        case QueryKind::MsfWeight: return "msfweight";
        case QueryKind::MaxDeg: return "maxdeg";
        case QueryKind::MatchSize: return "matchsize";
        case QueryKind::Edges: return "edges";
    }
    return "?";
}

struct Query {
    QueryKind kind = QueryKind::Conn;
    Vertex u = 0;
    Vertex v = 0;
    Time t;
};

struct AnswerEdge {
    VertexPair pair;
    Rational weight;

    friend bool operator==(const AnswerEdge& a, const AnswerEdge& b) {
        return a.pair == b.pair && a.weight == b.weight;
    }
};

struct DegreeAnswer {
    Vertex vertex = 0;
    Weight degree = 0;

    friend bool operator==(const DegreeAnswer& a, const DegreeAnswer& b) {
        return a.vertex == b.vertex && a.degree == b.degree;
    }
};

// Query result with exact serialization: booleans as true/false,
// integers base-10, rationals p/q (plain p when integral), forests as
// space-separated u-v:w in the order the producer fixed.
class Answer {
public:
    Answer() = default;

    static Answer boolean(bool b) { return Answer(Value(b)); }
    static Answer integer(std::int64_t i) { return Answer(Value(i)); }
    static Answer rational(Rational r) { return Answer(Value(std::move(r))); }
    static Answer forest(std::vector<AnswerEdge> edges) {
        return Answer(Value(std::move(edges)));
    }
    static Answer degree(Vertex v, Weight d) {
        return Answer(Value(DegreeAnswer{v, d}));
    }

    friend bool operator==(const Answer& a, const Answer& b) {
        return a.value_ == b.value_;
    }
    friend bool operator!=(const Answer& a, const Answer& b) { return !(a == b); }

    std::string str() const {
        struct Printer {
            std::string operator()(std::monostate) const { return ""; }
            std::string operator()(bool b) const { return b ? "true" : "false"; }
            std::string operator()(std::int64_t i) const { return std::to_string(i); }
            std::string operator()(const Rational& r) const { return to_string(r); }
            std::string operator()(const std::vector<AnswerEdge>& edges) const {
                std::string out;
                for (const auto& e : edges) {
                    if (!out.empty()) out += ' ';
                    out += std::to_string(e.pair.lo) + "-" +
                           std::to_string(e.pair.hi) + ":" + to_string(e.weight);
                }
                return out;
            }
            std::string operator()(const DegreeAnswer& d) const {
                return std::to_string(d.degree);
            }
        };
        return std::visit(Printer{}, value_);
    }

private:
    using Value = std::variant<std::monostate, bool, std::int64_t, Rational,
                               std::vector<AnswerEdge>, DegreeAnswer>;

    explicit Answer(Value v) : value_(std::move(v)) {}

    Value value_;
};

}  // namespace retrograph
