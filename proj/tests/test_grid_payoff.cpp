#include <doctest.h>

#include <stdexcept>

#include "igame/payoff.hpp"
#include "igame/time_grid.hpp"
#include "test_support.hpp"

using namespace igame;
using igame::testing::tick;

TEST_CASE("grid times are half-tick counts with exact midpoints") {
  GridTime a = GridTime::from_ticks(3);
  CHECK(a.half_ticks() == 6);
  CHECK(a.is_whole_tick());
  GridTime b = a + 1;  // half a tick later
  CHECK_FALSE(b.is_whole_tick());
  CHECK(b - a == 1);
  CHECK(midpoint(tick(2), tick(5)).half_ticks() == 7);
  CHECK(abs_half_ticks(tick(2) - tick(5)) == 6);
}

TEST_CASE("time formatting uses ticks with +1/2 for half steps") {
  CHECK(format_ticks(tick(7)) == "7");
  CHECK(format_ticks(tick(7) + 1) == "7+1/2");
  CHECK(format_ticks(GridTime::from_half_ticks(-3)) == "-2+1/2");
  CHECK(format_ticks(GridTime::from_half_ticks(-4)) == "-2");
  CHECK(format_ticks_span(5) == "2+1/2");
  CHECK(format_pair(tick(6), tick(11)) == "(6,11)");
}

TEST_CASE("report grid membership and enumeration") {
  TimeGrid g(1, 0, 12);
  CHECK(g.size() == 13);
  CHECK(g.contains(tick(0)));
  CHECK(g.contains(tick(12)));
  CHECK_FALSE(g.contains(tick(13)));
  CHECK_FALSE(g.contains(tick(3) + 1));  // half-ticks are not reportable
  CHECK(g.tick(4) == tick(4));
  CHECK(g.index_of(tick(9)) == 9);
  CHECK(g.enumerate().size() == 13);
  CHECK_THROWS_AS(TimeGrid(1, 5, 4), std::invalid_argument);
}

TEST_CASE("scenario invariants are enforced") {
  TimeGrid g(1, 0, 12);
  AgentProfile ok{tick(2), tick(5)};
  CHECK_THROWS_AS(Scenario(g, 3, ok, ok), std::invalid_argument);  // odd ticks
  CHECK_THROWS_AS(Scenario(g, 0, ok, ok), std::invalid_argument);
  CHECK_THROWS_AS(Scenario(g, 4, {tick(5), tick(2)}, ok),
                  std::invalid_argument);  // earliest after desired
  CHECK_THROWS_AS(Scenario(g, 4, {tick(0), tick(13)}, ok),
                  std::invalid_argument);  // off the grid
  Scenario s(g, 8, ok, {tick(0), tick(9)});
  CHECK(s.crossing() == 8);
  CHECK(s.half_crossing() == 4);
  CHECK(s.spacing() == 10);
  CHECK(s.agent(2).desired == tick(9));
}

TEST_CASE("quadratic and integer-power costs are exact") {
  CostModel q = CostModel::quadratic();
  CHECK(q.is_exact());
  // Deviations are half-tick counts; costs are measured in ticks.
  CHECK(q.deviation_cost(4) == CostValue::from_exact(Rat(4)));
  CHECK(q.deviation_cost(3) == CostValue::from_exact(Rat(9, 4)));
  CHECK(q.deviation_cost(-4) == CostValue::from_exact(Rat(4)));
  CostModel p4 = CostModel::power_int(4);
  CHECK(p4.deviation_cost(2) == CostValue::from_exact(Rat(1)));
  CHECK(p4.deviation_cost(3) == CostValue::from_exact(Rat(81, 16)));
  CHECK(p4.name() == "power:4");
  CHECK(agent_cost(q, tick(6), tick(8)) == CostValue::from_exact(Rat(4)));
}

TEST_CASE("non-integer exponents fall back to approximate values") {
  auto m = CostModel::parse("power:5/2");
  REQUIRE(m);
  CHECK_FALSE(m->is_exact());
  CostValue c = m->deviation_cost(4);  // 2 ticks -> 2^2.5
  CHECK_FALSE(c.is_exact());
  CHECK(static_cast<double>(c.approx()) ==
        doctest::Approx(5.656854249492380).epsilon(1e-12));
  auto dotted = CostModel::parse("power:2.5");
  REQUIRE(dotted);
  CHECK(dotted->deviation_cost(4) == m->deviation_cost(4));
}

TEST_CASE("cost model parsing rejects junk and non-convex exponents") {
  CHECK(CostModel::parse("quadratic"));
  CHECK(CostModel::parse("power:4"));
  CHECK_FALSE(CostModel::parse("power:1"));  // not strictly convex
  CHECK_FALSE(CostModel::parse("power:0"));
  CHECK_FALSE(CostModel::parse("cubicish"));
  CHECK_FALSE(CostModel::parse("power:"));
  CHECK_FALSE(CostModel::parse(""));
}

TEST_CASE("convexity witness holds for the stock models") {
  CHECK(CostModel::quadratic().verify_convexity(64));
  CHECK(CostModel::power_int(4).verify_convexity(64));
  CHECK(CostModel::parse("power:5/2")->verify_convexity(64));
}

TEST_CASE("cost values order exactly and mix with probabilities") {
  CostValue a = CostValue::from_exact(Rat(13, 2));
  CostValue b = CostValue::from_exact(Rat(9));
  CHECK(a < b);
  CHECK(a.str() == "13/2");
  CHECK(b.str() == "9");
  CHECK((a + a).scaled(Rat(1, 2)) == a);
  CHECK(CostValue::from_exact(Rat(0)) <= a);
}
