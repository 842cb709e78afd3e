#include <doctest.h>

#include <sstream>

#include "hydronudge/error.hpp"
#include "hydronudge/snapshot.hpp"
#include "support.hpp"

using namespace hydronudge;

TEST_CASE("snapshot round trip is bit exact") {
  DomainSpec s;
  s.nx = 8;
  s.ny = 4;
  s.nz = 5;
  s.l = 0.75;
  const Domain d(s);
  const PhysicalField f = support::sample(d, 2, [](int c, double x, double y, double z) { return c + x * y - z / 3.0; });
  std::stringstream buf;
  write_snapshot(buf, s, 0.125, f);
  CHECK(buf.str().size() == 5 + 4 * 4 + 4 * 8 + f.size() * 8);
  const Snapshot back = read_snapshot(buf);
  CHECK(back.spec.nx == 8);
  CHECK(back.spec.l == 0.75);
  CHECK(back.time == 0.125);
  for (std::size_t k = 0; k < f.size(); ++k) CHECK(back.values.values()[k] == f.values()[k]);
}

TEST_CASE("snapshot header is little endian") {
  DomainSpec s;
  s.nx = 258;
  s.ny = 4;
  s.nz = 4;
  const PhysicalField f(1, 258, 4, 4);
  std::stringstream buf;
  write_snapshot(buf, s, 0.0, f);
  const std::string b = buf.str();
  CHECK(b.substr(0, 5) == "HNUD1");
  CHECK(static_cast<unsigned char>(b[5]) == 2);
  CHECK(static_cast<unsigned char>(b[6]) == 1);
}

TEST_CASE("corrupt snapshots are rejected") {
  std::stringstream bad("HNUD2xxxx");
  CHECK_THROWS_AS(read_snapshot(bad), ValidationError);
  DomainSpec s;
  s.nx = 4;
  s.ny = 4;
  s.nz = 4;
  std::stringstream buf;
  write_snapshot(buf, s, 0.0, PhysicalField(1, 4, 4, 4));
  std::stringstream cut(buf.str().substr(0, 40));
  CHECK_THROWS_AS(read_snapshot(cut), ValidationError);
  CHECK_THROWS_AS(write_snapshot(buf, s, 0.0, PhysicalField(1, 4, 4, 5)), ShapeError);
}
