#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>

namespace retrograph {

using Vertex = std::int32_t;
using Weight = std::int64_t;
using EdgeId = std::uint64_t;

// Exact rational arithmetic for (1+eps)-approximate MSF weights.
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

// A point on the timeline. Finite values are caller-supplied 64-bit
// integers; now() is a sentinel greater than every finite value.
struct Time {
    std::int64_t value = 0;

    constexpr Time() = default;
    constexpr explicit Time(std::int64_t v) : value(v) {}

    static constexpr Time now() {
        return Time(std::numeric_limits<std::int64_t>::max());
    }
    constexpr bool is_now() const { return value == now().value; }
    constexpr bool finite() const { return !is_now(); }

    friend constexpr bool operator==(Time a, Time b) { return a.value == b.value; }
    friend constexpr bool operator!=(Time a, Time b) { return a.value != b.value; }
    friend constexpr bool operator<(Time a, Time b) { return a.value < b.value; }
    friend constexpr bool operator<=(Time a, Time b) { return a.value <= b.value; }
    friend constexpr bool operator>(Time a, Time b) { return a.value > b.value; }
    friend constexpr bool operator>=(Time a, Time b) { return a.value >= b.value; }
};

inline std::string to_string(Time t) {
    return t.is_now() ? std::string("now") : std::to_string(t.value);
}

// Unordered vertex pair, stored normalized (lo < hi).
struct VertexPair {
    Vertex lo = 0;
    Vertex hi = 0;

    VertexPair() = default;
    VertexPair(Vertex u, Vertex v) : lo(u < v ? u : v), hi(u < v ? v : u) {}

    friend bool operator==(const VertexPair& a, const VertexPair& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
    friend bool operator!=(const VertexPair& a, const VertexPair& b) { return !(a == b); }
    friend bool operator<(const VertexPair& a, const VertexPair& b) {
        return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
    }
};

struct VertexPairHash {
    std::size_t operator()(const VertexPair& p) const {
        return std::hash<std::uint64_t>()(
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.lo)) << 32) |
            static_cast<std::uint32_t>(p.hi));
    }
};

// Deterministic total order on engine edges: weight, then endpoints,
// then id. Makes the maintained MSF unique.
struct EdgeKey {
    Weight weight = 0;
    VertexPair pair;
    EdgeId id = 0;

    friend bool operator==(const EdgeKey& a, const EdgeKey& b) {
        return a.weight == b.weight && a.pair == b.pair && a.id == b.id;
    }
    friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
        return std::tie(a.weight, a.pair.lo, a.pair.hi, a.id) <
               std::tie(b.weight, b.pair.lo, b.pair.hi, b.id);
    }
    friend bool operator<=(const EdgeKey& a, const EdgeKey& b) { return !(b < a); }
};

enum class ErrorCode {
    DuplicateTime,
    IllegalInsert,
    IllegalDelete,
    IllegalCancel,
    NoUpdateAtTime,
    WouldOrphanDelete,
    InvalidVertex,
    UnknownEdge,
    NotConnected,
    WeightOutOfRange,
    MisalignedLifespan,
    SyntaxError,
    IllegalOperation,
    IncompatibleQuery,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::DuplicateTime: return "DuplicateTime";
        case ErrorCode::IllegalInsert: return "IllegalInsert";
        case ErrorCode::IllegalDelete: return "IllegalDelete";
        case ErrorCode::IllegalCancel: return "IllegalCancel";
        case ErrorCode::NoUpdateAtTime: return "NoUpdateAtTime";
        case ErrorCode::WouldOrphanDelete: return "WouldOrphanDelete";
        case ErrorCode::InvalidVertex: return "InvalidVertex";
        case ErrorCode::UnknownEdge: return "UnknownEdge";
        case ErrorCode::NotConnected: return "NotConnected";
        case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
        case ErrorCode::MisalignedLifespan: return "MisalignedLifespan";
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::IllegalOperation: return "IllegalOperation";
        case ErrorCode::IncompatibleQuery: return "IncompatibleQuery";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void check_vertex(Vertex v, Vertex n) {
    if (v < 0 || v >= n)
        raise(ErrorCode::InvalidVertex,
              "vertex " + std::to_string(v) + " out of [0," + std::to_string(n) + ")");
}

}  // namespace retrograph
