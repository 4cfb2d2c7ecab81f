#include "voidroute/wire.h"

namespace voidroute::wire {

namespace {

void put_magnitude(Buffer& out, const mpz_class& v) {
  const std::size_t bytes = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (bytes > kCoordLimbBytes) {
    throw Error(ErrorKind::kHeaderCapacity, "coordinate too large for the fixed wire format");
  }
  std::uint8_t buf[kCoordLimbBytes] = {};
  std::size_t count = 0;
  mpz_export(buf, &count, -1, 1, -1, 0, v.get_mpz_t());
  out.insert(out.end(), buf, buf + kCoordLimbBytes);
}

}  // namespace

void put_u8(Buffer& out, std::uint8_t v) { out.push_back(v); }

void put_u32(Buffer& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_coord(Buffer& out, const Coord& c) {
  put_u8(out, sgn(c) < 0 ? 1 : 0);
  mpz_class num = abs(c.get_num());
  put_magnitude(out, num);
  put_magnitude(out, c.get_den());
}

void put_point(Buffer& out, const Point& p) {
  put_coord(out, p.x);
  put_coord(out, p.y);
}

void Reader::need(std::size_t n) const {
  if (in_.size() - pos_ < n) throw Error(ErrorKind::kProtocol, "truncated wire message");
}

std::uint8_t Reader::u8() {
  need(1);
  return in_[pos_++];
}

std::uint32_t Reader::u32() {
  need(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
  return v;
}

Coord Reader::coord() {
  need(kCoordBytes);
  const bool negative = in_[pos_++] != 0;
  mpz_class num, den;
  mpz_import(num.get_mpz_t(), kCoordLimbBytes, -1, 1, -1, 0, &in_[pos_]);
  pos_ += kCoordLimbBytes;
  mpz_import(den.get_mpz_t(), kCoordLimbBytes, -1, 1, -1, 0, &in_[pos_]);
  pos_ += kCoordLimbBytes;
  if (den == 0) throw Error(ErrorKind::kProtocol, "zero denominator on the wire");
  Coord c(negative ? mpz_class(-num) : num, den);
  c.canonicalize();
  return c;
}

Point Reader::point() {
  Coord x = coord();
  Coord y = coord();
  return {std::move(x), std::move(y)};
}

}  // namespace voidroute::wire
