#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace planar {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::int64_t;

constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();
constexpr EdgeId kInvalidEdge = std::numeric_limits<EdgeId>::max();

// sentinel for "no path"; kept far below int64 max so sums of a few
// of these never overflow
constexpr Weight kUnreachable = std::numeric_limits<Weight>::max() / 4;

// exact fraction, used for tolerance parameters so stretch checks can be
// done in integer arithmetic
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {}

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// dist <= (1 + r) * base, evaluated exactly
inline bool within_factor(Weight dist, Weight base, const Rational& r) {
    using Wide = __int128;
    return Wide(dist) * r.den <= Wide(base) * (r.den + r.num);
}

// dist <= base + r * add, evaluated exactly
inline bool within_additive(Weight dist, Weight base, Weight add, const Rational& r) {
    using Wide = __int128;
    return Wide(dist) * r.den <= Wide(base) * r.den + Wide(add) * r.num;
}

// ---- errors ----

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// malformed input file or unparseable generator description
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// structurally invalid graph (bad ids, inconsistent rotations, ...)
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// the input graph admits no planar embedding
struct NonPlanarError : Error {
    explicit NonPlanarError(const std::string& what) : Error(what) {}
};

// out-of-range or inconsistent construction parameters
struct ParameterError : Error {
    explicit ParameterError(const std::string& what) : Error(what) {}
};

// internal invariant broken while constructing a data structure
struct BuildError : Error {
    explicit BuildError(const std::string& what) : Error(what) {}
};

}  // namespace planar
