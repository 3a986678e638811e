#include "cfield/json_io.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace cfield;

TEST_CASE("rational and polynomial encodings round-trip") {
  CHECK(to_json(BigRational(5)) == Json(5));
  CHECK(to_json(BigRational(1, 3)) == Json("1/3"));
  BigRational big = BigRational::parse("123456789012345678901234567890");
  CHECK(to_json(big).is_string());
  CHECK(rational_from_json(to_json(big)) == big);
  UniPoly p({1, 0, -10, 0, 1});
  CHECK(poly_from_json(to_json(p)) == p);
  CHECK_THROWS(rational_from_json(Json::object()));
}

TEST_CASE("schedules round-trip") {
  Json j = {{"kind", "FPN"}, {"primes", {2, 3}}, {"P", {0}}, {"N", {1}}, {"horizon", 4}};
  ScheduleSpec spec = schedule_from_json(j);
  CHECK(spec.horizon == 4);
  CHECK(spec.schedule.events.size() == 2);
  ScheduleSpec again = schedule_from_json(to_json(spec.schedule, spec.horizon));
  CHECK(to_json(again.schedule, again.horizon) == to_json(spec.schedule, spec.horizon));
  FieldPresentation f = build_from_schedule(spec.schedule, spec.horizon);
  CHECK(f.field()->degree() == 16);
  Json bad = {{"kind", "FPN"}, {"primes", {2}}, {"P", {0}}, {"N", {0}}};
  CHECK_THROWS_AS(build_from_schedule(schedule_from_json(bad).schedule, 2), AlgebraError);
}

TEST_CASE("tapes and runs serialise") {
  OracleTape t;
  t.set(0, 2, 1);
  t.set(4, 0, 6);
  OracleTape u = tape_from_json(to_json(t));
  CHECK(u.entries() == t.entries());
  NormalChain ch(fixtures::sqrt2());
  Json run = to_json(diagonalize(ch, {t}, 3));
  CHECK(run.contains("log"));
  CHECK(to_json(diagonalize(ch, {t}, 3)) == run);  // deterministic
}
