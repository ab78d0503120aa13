#include <doctest.h>

#include <cmath>

#include "rmt/potential.hpp"

using namespace rmt;

TEST_CASE("potential evaluation") {
  Potential q{{0, 0, 1}};
  CHECK(eval_potential(q, 0.0) == 0.0);
  CHECK(eval_potential(q, 2.0) == doctest::Approx(4.0));
  CHECK(eval_potential_derivative(q, 2.0) == doctest::Approx(4.0));
  Potential w{{0, 0, -1, 0, 0.25}};
  CHECK(eval_potential(w, 1.0) == doctest::Approx(-0.75));
  CHECK(eval_potential_derivative(w, 1.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(eval_potential(q, NAN), Error);
}

TEST_CASE("log weight") {
  Potential q{{0, 0, 1}};
  CHECK(eval_log_weight(q, {0.0, 1}, 1.0) == doctest::Approx(-1.0));
  CHECK(std::isinf(eval_log_weight(q, {1.0, 4}, 0.0)));
  CHECK(eval_log_weight(q, {1.0, 4}, 0.0) < 0.0);
  try {
    eval_log_weight(q, {-0.25, 4}, 0.0);
    FAIL("expected a pole error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
  CHECK(eval_log_weight(q, {0.5, 3}, -2.0) == doctest::Approx(std::log(2.0) - 12.0));
}

TEST_CASE("admissibility") {
  Potential q{{0, 0, 1}};
  CHECK(validate(q, {0.5, 8}).empty());
  auto v = validate(q, {-0.5, 8});
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "alpha must exceed -1/2");
  auto odd = validate(Potential{{0, 0, 0, 1}});
  REQUIRE(!odd.empty());
  CHECK(odd[0] == "even degree required");
  CHECK(!validate(Potential{{0, 0, -1}}).empty());
  CHECK(!validate(q, {0.0, 0}).empty());
}
