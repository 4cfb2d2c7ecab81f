#include "voidroute/geometry.h"

#include <algorithm>
#include <numeric>

namespace voidroute {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kGeometry: return "GeometryError";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kInvalidGraph: return "InvalidGraph";
    case ErrorKind::kRetryExhausted: return "RetryExhausted";
    case ErrorKind::kDisconnected: return "Disconnected";
    case ErrorKind::kNotUnitDisk: return "NotUnitDisk";
    case ErrorKind::kNotPlanar: return "NotPlanar";
    case ErrorKind::kNotFound: return "NotFound";
    case ErrorKind::kProtocol: return "ProtocolError";
    case ErrorKind::kUnroutable: return "Unroutable";
    case ErrorKind::kClosureViolation: return "ClosureViolation";
    case ErrorKind::kStepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorKind::kIsolated: return "Isolated";
    case ErrorKind::kUndefined: return "Undefined";
    case ErrorKind::kHeaderCapacity: return "HeaderCapacity";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

[[noreturn]] void bad_coord(std::string_view text) {
  throw Error(ErrorKind::kParse, "malformed coordinate '" + std::string(text) + "'");
}

}  // namespace

Coord parse_coord(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Coord value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_coord(text);
    mpz_class d{std::string(den)};
    if (d == 0) bad_coord(text);
    value = Coord(mpz_class(std::string(num)), d);
  } else if (auto dot_pos = body.find('.'); dot_pos != std::string_view::npos) {
    auto whole = body.substr(0, dot_pos);
    auto frac = body.substr(dot_pos + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      bad_coord(text);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
    value = Coord(w * scale + f, scale);
  } else {
    if (!all_digits(body)) bad_coord(text);
    value = Coord(mpz_class(std::string(body)));
  }
  value.canonicalize();
  return negative ? Coord(-value) : value;
}

std::string format_coord(const Coord& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double to_double(const Coord& c) { return c.get_d(); }

Coord cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

Coord dot(const Point& u, const Point& v) { return u.x * v.x + u.y * v.y; }

int orient(const Point& p, const Point& q, const Point& r) {
  Coord det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return sgn(det);
}

Coord euclid_dist_sq(const Point& p, const Point& q) {
  Coord dx = p.x - q.x;
  Coord dy = p.y - q.y;
  return dx * dx + dy * dy;
}

bool on_segment(const Segment& s, const Point& p) {
  if (orient(s.a, s.b, p) != 0) return false;
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

SegmentIntersection segment_intersection(const Segment& s1, const Segment& s2) {
  const int o1 = orient(s1.a, s1.b, s2.a);
  const int o2 = orient(s1.a, s1.b, s2.b);
  const int o3 = orient(s2.a, s2.b, s1.a);
  const int o4 = orient(s2.a, s2.b, s1.b);

  if (o1 == 0 && o2 == 0) {
    // Collinear: project onto s1's parameter line.
    const Point dir = s1.b - s1.a;
    const Coord len = dot(dir, dir);
    Coord t0 = dot(s2.a - s1.a, dir) / len;
    Coord t1 = dot(s2.b - s1.a, dir) / len;
    if (t0 > t1) std::swap(t0, t1);
    Coord lo = std::max(t0, Coord(0));
    Coord hi = std::min(t1, Coord(1));
    if (lo > hi) return std::monostate{};
    if (lo == hi) return PointContact{point_at(s1, lo), true};
    return OverlapInterval{point_at(s1, lo), point_at(s1, hi)};
  }

  if (o1 * o2 > 0 || o3 * o4 > 0) return std::monostate{};

  if (o1 == 0) return PointContact{s2.a, true};
  if (o2 == 0) return PointContact{s2.b, true};
  if (o3 == 0) return PointContact{s1.a, true};
  if (o4 == 0) return PointContact{s1.b, true};

  const Point d1 = s1.b - s1.a;
  const Point d2 = s2.b - s2.a;
  const Coord t = cross(s2.a - s1.a, d2) / cross(d1, d2);
  return PointContact{point_at(s1, t), false};
}

Coord param_along(const Segment& s, const Point& p) {
  if (!on_segment(s, p)) {
    throw Error(ErrorKind::kGeometry, "point is not on the segment");
  }
  const Point dir = s.b - s.a;
  if (dir.x != 0) return (p.x - s.a.x) / dir.x;
  return (p.y - s.a.y) / dir.y;
}

Point point_at(const Segment& s, const Coord& t) {
  return {s.a.x + t * (s.b.x - s.a.x), s.a.y + t * (s.b.y - s.a.y)};
}

namespace {

// 0 for directions in [0, pi) swept counter-clockwise from ref, 1 for [pi, 2pi).
int ccw_half(const Point& ref, const Point& v) {
  const int c = sgn(cross(ref, v));
  if (c > 0) return 0;
  if (c < 0) return 1;
  return sgn(dot(ref, v)) > 0 ? 0 : 1;
}

Point mirror(const Point& v) { return {v.x, Coord(-v.y)}; }

}  // namespace

int compare_sweep(const Point& reference, const Point& a, const Point& b, Rotation sense) {
  if (sense == Rotation::kClockwise) {
    return compare_sweep(mirror(reference), mirror(a), mirror(b), Rotation::kCounterClockwise);
  }
  const int ha = ccw_half(reference, a);
  const int hb = ccw_half(reference, b);
  if (ha != hb) return ha < hb ? -1 : 1;
  return -sgn(cross(a, b));
}

std::vector<std::size_t> angular_order(const Point& center, const Point& reference_dir,
                                       std::span<const Point> candidates, Rotation sense) {
  std::vector<Point> dirs;
  dirs.reserve(candidates.size());
  for (const auto& c : candidates) {
    if (c == center) throw Error(ErrorKind::kGeometry, "angular_order candidate equals center");
    dirs.push_back(c - center);
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const int c = compare_sweep(reference_dir, dirs[i], dirs[j], sense);
    if (c != 0) return c < 0;
    return dot(dirs[i], dirs[i]) < dot(dirs[j], dirs[j]);
  });
  return order;
}

int compare_deviation(const Point& dir, const Point& a, const Point& b) {
  // Larger cosine means smaller deviation. Compare da/|a| against db/|b|.
  const Coord da = dot(dir, a);
  const Coord db = dot(dir, b);
  const int sa = sgn(da);
  const int sb = sgn(db);
  if (sa != sb) return sa > sb ? -1 : 1;
  // Same sign: compare da^2 |b|^2 against db^2 |a|^2, flipped when negative.
  const Coord lhs = da * da * dot(b, b);
  const Coord rhs = db * db * dot(a, a);
  int c = cmp(rhs, lhs);  // positive cosines: bigger squared cosine wins
  if (sa < 0) c = -c;
  return c;
}

std::optional<LatticeFrame> lattice_frame(std::span<const Point> points) {
  mpz_class den = 1;
  for (const auto& p : points) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.x.get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.y.get_den_mpz_t());
  }
  LatticeFrame frame;
  frame.denominator = den;
  frame.xs.reserve(points.size());
  frame.ys.reserve(points.size());
  const mpz_class limit(std::to_string(kLatticeLimit));
  for (const auto& p : points) {
    mpz_class x = p.x.get_num() * (den / p.x.get_den());
    mpz_class y = p.y.get_num() * (den / p.y.get_den());
    if (abs(x) >= limit || abs(y) >= limit) return std::nullopt;
    frame.xs.push_back(x.get_si());
    frame.ys.push_back(y.get_si());
  }
  return frame;
}

int orient_lattice(std::int64_t px, std::int64_t py, std::int64_t qx, std::int64_t qy,
                   std::int64_t rx, std::int64_t ry) {
  const __int128 det = static_cast<__int128>(qx - px) * (ry - py) -
                       static_cast<__int128>(qy - py) * (rx - px);
  return (det > 0) - (det < 0);
}

}  // namespace voidroute
