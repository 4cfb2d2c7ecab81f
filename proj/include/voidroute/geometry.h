#pragma once

// Exact planar predicates and constructions. Every coordinate is a GMP
// rational, so orientation tests and orderings along a segment never round.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "voidroute/error.h"

namespace voidroute {

using Coord = mpq_class;

// Accepts integers ("-3"), fractions ("7/20") and plain decimals ("0.35").
Coord parse_coord(std::string_view text);
// Canonical "p/q" (or "p" when integral); parse_coord(format_coord(c)) == c.
std::string format_coord(const Coord& c);
double to_double(const Coord& c);

struct Point {
  Coord x;
  Coord y;

  Point() = default;
  Point(Coord px, Coord py) : x(std::move(px)), y(std::move(py)) {}
  Point(long px, long py) : x(px), y(py) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

// Lexicographic (x, then y); usable as a map key.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }

Coord cross(const Point& u, const Point& v);
Coord dot(const Point& u, const Point& v);

struct Segment {
  Point a;
  Point b;
};

// +1 counter-clockwise, -1 clockwise, 0 collinear.
int orient(const Point& p, const Point& q, const Point& r);

Coord euclid_dist_sq(const Point& p, const Point& q);

// Closed-segment membership.
bool on_segment(const Segment& s, const Point& p);

struct PointContact {
  Point point;
  // True when the contact point is an endpoint of either segment.
  bool endpoint_contact = false;
};

// Collinear overlap of positive length, ordered along the first segment.
struct OverlapInterval {
  Point from;
  Point to;
};

using SegmentIntersection = std::variant<std::monostate, PointContact, OverlapInterval>;

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2);

// Parameter of p along s with s.a at 0 and s.b at 1. Throws GeometryError if p
// is not on the closed segment.
Coord param_along(const Segment& s, const Point& p);

// Point at parameter t along s.
Point point_at(const Segment& s, const Coord& t);

enum class Rotation { kClockwise, kCounterClockwise };

// Three-way comparison of the angle swept from `reference` to `a` versus to
// `b` in the given rotational sense; angles live in [0, 2*pi). Returns <0 when
// a comes first. Vectors are directions and must be non-zero.
int compare_sweep(const Point& reference, const Point& a, const Point& b, Rotation sense);

// Indices of `candidates` sorted by angle swept from `reference_dir` around
// `center` in the given sense. Candidates on the same ray are ordered by
// increasing distance from center.
std::vector<std::size_t> angular_order(const Point& center, const Point& reference_dir,
                                       std::span<const Point> candidates, Rotation sense);

// Three-way comparison of the unsigned angle between `dir` and `a` against
// the one between `dir` and `b` (both in [0, pi]).
int compare_deviation(const Point& dir, const Point& a, const Point& b);

// Exact integer image of a point set: every point is (x, y) / denominator.
// Used by bulk predicates where 128-bit integer arithmetic is exact.
struct LatticeFrame {
  mpz_class denominator;
  std::vector<std::int64_t> xs;
  std::vector<std::int64_t> ys;
};

// Largest lattice magnitude for which 128-bit orientation tests cannot overflow.
inline constexpr std::int64_t kLatticeLimit = std::int64_t{1} << 60;

std::optional<LatticeFrame> lattice_frame(std::span<const Point> points);

int orient_lattice(std::int64_t px, std::int64_t py, std::int64_t qx, std::int64_t qy,
                   std::int64_t rx, std::int64_t ry);

}  // namespace voidroute
