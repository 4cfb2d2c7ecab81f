#pragma once

// Fixed-width little-endian encoding for protocol payloads.

#include <cstdint>
#include <vector>

#include "voidroute/geometry.h"

namespace voidroute::wire {

// Magnitude limit per numerator and per denominator.
inline constexpr std::size_t kCoordLimbBytes = 32;
// Sign byte + numerator + denominator.
inline constexpr std::size_t kCoordBytes = 1 + 2 * kCoordLimbBytes;
inline constexpr std::size_t kPointBytes = 2 * kCoordBytes;

using Buffer = std::vector<std::uint8_t>;

void put_u8(Buffer& out, std::uint8_t v);
void put_u32(Buffer& out, std::uint32_t v);
// Throws Error(kHeaderCapacity) when |numerator| or denominator needs more than
// kCoordLimbBytes bytes.
void put_coord(Buffer& out, const Coord& c);
void put_point(Buffer& out, const Point& p);

class Reader {
 public:
  explicit Reader(const Buffer& in) : in_(in) {}
  std::uint8_t u8();
  std::uint32_t u32();
  Coord coord();
  Point point();
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const;
  const Buffer& in_;
  std::size_t pos_ = 0;
};

}  // namespace voidroute::wire
