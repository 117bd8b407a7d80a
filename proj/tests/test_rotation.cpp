#include <catch2/catch.hpp>

#include "support.hpp"

using namespace sleeptop;

TEST_CASE("hat produces the cross-product matrix", "[rotation]") {
  const Mat3 zero = hat({0, 0, 0});
  REQUIRE(max_abs(zero) == 0.0);

  const Mat3 about_z = hat(e3);
  const Mat3 expected{{0, -1, 0, 1, 0, 0, 0, 0, 0}};
  REQUIRE(max_abs(about_z - expected) == 0.0);

  const Mat3 generic = hat({1, 2, 3});
  const Mat3 generic_expected{{0, -3, 2, 3, 0, -1, -2, 1, 0}};
  REQUIRE(max_abs(generic - generic_expected) == 0.0);
}

TEST_CASE("hat(x) y equals x cross y", "[rotation]") {
  testsupport::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Vec3 x = rng.vec(4), y = rng.vec(4);
    REQUIRE(max_abs(hat(x) * y - cross(x, y)) <= 1e-15);
  }
}

TEST_CASE("vee inverts hat and rejects non-antisymmetric input", "[rotation]") {
  REQUIRE(max_abs(vee(Mat3{})) == 0.0);

  const Vec3 x{0, 0, 1};
  const Vec3 back = vee(hat(x));
  REQUIRE(back.x == 0.0);
  REQUIRE(back.y == 0.0);
  REQUIRE(back.z == 1.0);

  testsupport::Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const Vec3 v = rng.vec(5);
    const Vec3 w = vee(hat(v));
    REQUIRE(w.x == v.x);
    REQUIRE(w.y == v.y);
    REQUIRE(w.z == v.z);
  }

  Mat3 symmetric{};
  symmetric(0, 1) = symmetric(1, 0) = 0.5;
  REQUIRE_THROWS_AS(vee(symmetric), not_antisymmetric);
}

TEST_CASE("exp_so3 basics", "[rotation]") {
  REQUIRE(max_abs(exp_so3({0, 0, 0}) - Mat3::identity()) == 0.0);

  const Mat3 quarter = exp_so3({0, 0, M_PI / 2});
  REQUIRE(max_abs(quarter * e1 - e2) <= 1e-15);

  const Vec3 x{0.1, 0.2, 0.3};
  const Mat3 r = exp_so3(x);
  REQUIRE(max_abs(transpose(r) * r - Mat3::identity()) <= 1e-14);
  REQUIRE(det(r) == Approx(1.0).margin(1e-14));
  REQUIRE(max_abs(r - testsupport::exp_series(hat(x))) <= 1e-15);
}

TEST_CASE("exp_so3 stays on SO(3) up to norm 10", "[rotation]") {
  testsupport::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const Vec3 x = rng.vec(5.7);  // max norm ~ 9.9
    const Mat3 r = exp_so3(x);
    REQUIRE(max_abs(transpose(r) * r - Mat3::identity()) <= 1e-13);
    REQUIRE(det(r) == Approx(1.0).margin(1e-13));
  }
}

TEST_CASE("exp_so3 is additive along a fixed axis", "[rotation]") {
  testsupport::Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const Vec3 x = rng.vec(1.5);
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
    const Mat3 lhs = exp_so3(a * x) * exp_so3(b * x);
    const Mat3 rhs = exp_so3((a + b) * x);
    REQUIRE(max_abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("exp_so3 small-angle branch matches the series", "[rotation]") {
  const Vec3 tiny{3e-9, -4e-9, 1e-9};
  REQUIRE(max_abs(exp_so3(tiny) - testsupport::exp_series(hat(tiny))) <= 1e-18);
}

TEST_CASE("is_rotation accepts rotations and rejects reflections", "[rotation]") {
  REQUIRE(is_rotation(Mat3::identity(), 1e-12));
  const Mat3 reflection{{1, 0, 0, 0, 1, 0, 0, 0, -1}};
  REQUIRE_FALSE(is_rotation(reflection, 1e-12));
  REQUIRE(is_rotation(exp_so3({0.3, -0.1, 0.7}), 1e-12));
}
