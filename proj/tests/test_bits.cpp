#include "doctest.h"
#include "vcut/bits.hpp"
#include "vcut/rng.hpp"

using namespace vcut;

TEST_CASE("id_width covers [0, n]") {
  CHECK(id_width(1) == 1);
  CHECK(id_width(3) == 2);
  CHECK(id_width(10) == 4);  // 11 values need 4 bits
  CHECK(id_width(15) == 4);
  CHECK(id_width(16) == 5);
  CHECK(id_width(4095) == 12);
  CHECK(id_width(4096) == 13);
}

TEST_CASE("fields are MSB-first and sized exactly") {
  BitVec b;
  b.append_bits(5, id_width(10));
  CHECK(b.size_bits() == 4);
  CHECK(b.read_bits(0, 1) == 0);
  CHECK(b.read_bits(1, 1) == 1);
  CHECK(b.read_bits(2, 1) == 0);
  CHECK(b.read_bits(3, 1) == 1);
  CHECK(b.hex() == "5");
}

TEST_CASE("flag plus id with n=3 takes 3 bits") {
  BitVec b;
  b.append_flag(true);
  b.append_bits(0, id_width(3));
  CHECK(b.size_bits() == 3);
}

TEST_CASE("oversized field values are rejected") {
  BitVec b;
  CHECK_THROWS_AS(b.append_bits(260, 8), BitError);
  Payload p;
  CHECK_THROWS_AS(p.append_bits(260, 8), BitError);
  CHECK_NOTHROW(b.append_bits(255, 8));
}

TEST_CASE("payload capacity is enforced") {
  Payload p;
  p.append_bits(0, 64);
  p.append_bits(0, 64);
  CHECK(p.nbits == 128);
  CHECK_THROWS_AS(p.append_flag(true), BitError);
}

TEST_CASE("reader returns fields in order") {
  Payload p;
  p.append_bits(6, 3);
  p.append_bits(1, 1);
  p.append_bits(300, 12);
  BitReader r(p);
  CHECK(r.take(3) == 6);
  CHECK(r.take_flag());
  CHECK(r.take(12) == 300);
  CHECK_THROWS_AS(r.take(1), BitError);
}

TEST_CASE("round-trip across word boundaries") {
  BitVec b;
  std::uint64_t vals[] = {1, 0x3ff, 0, 71, 0xdeadbeef, 1};
  int widths[] = {1, 10, 7, 7, 32, 1};
  for (int i = 0; i < 6; ++i) b.append_bits(vals[i], widths[i]);
  std::uint32_t pos = 0;
  for (int i = 0; i < 6; ++i) {
    CHECK(b.read_bits(pos, widths[i]) == vals[i]);
    pos += widths[i];
  }
  CHECK(pos == b.size_bits());
}

TEST_CASE("hex dump pads the trailing partial nibble") {
  Payload p;
  p.append_bits(0b101, 3);
  // "101" left-aligned in the first nibble reads as 1010.
  CHECK(p.hex() == "a");
}

TEST_CASE("equality tracks content and length") {
  BitVec a, b;
  a.append_bits(3, 4);
  b.append_bits(3, 4);
  CHECK(a == b);
  b.append_flag(false);
  CHECK(a != b);
}

TEST_CASE("rng streams are deterministic and distinct per seed") {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 100; ++i) differs = differs || (a2.next() != c.next());
  CHECK(differs);
}

TEST_CASE("bounded draws stay in range and hit every value") {
  Rng r(7);
  bool seen[10] = {};
  for (int i = 0; i < 1000; ++i) {
    auto v = r.below(10);
    REQUIRE(v < 10);
    seen[v] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("mix64 separates nearby inputs") {
  CHECK(mix64(0, 0) != mix64(0, 1));
  CHECK(mix64(1, 0) != mix64(0, 1));
  CHECK(mix64(5, 9) == mix64(5, 9));
}
