#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "linrl/rng.hpp"

using namespace linrl;

TEST_CASE("streams are reproducible from (seed, name)") {
  RngStream a(7, "agent"), b(7, "agent");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(a.counter() == 100);
  CHECK(a.name() == "agent");
}

TEST_CASE("different names or seeds give different sequences") {
  RngStream a(7, "agent"), b(7, "env"), c(8, "agent");
  int same_ab = 0, same_ac = 0;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t va = a.next_u64();
    if (va == b.next_u64()) ++same_ab;
    if (va == c.next_u64()) ++same_ac;
  }
  CHECK(same_ab == 0);
  CHECK(same_ac == 0);
}

TEST_CASE("substreams are independent of the parent's position") {
  RngStream parent(3, "run");
  RngStream child_early = parent.substream("env");
  parent.next_u64();
  parent.next_u64();
  RngStream child_late = parent.substream("env");
  for (int i = 0; i < 16; ++i)
    CHECK(child_early.next_u64() == child_late.next_u64());
  CHECK(child_early.name() == "run/env");

  // Sibling substreams do not collide.
  RngStream sib = parent.substream("agent");
  std::set<std::uint64_t> seen;
  RngStream env = parent.substream("env");
  for (int i = 0; i < 32; ++i) {
    seen.insert(env.next_u64());
    seen.insert(sib.next_u64());
  }
  CHECK(seen.size() == 64);
}

TEST_CASE("uniform doubles live in [0,1) with a sane mean") {
  RngStream rng(11, "uniform");
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // mean 1/2, sd of the mean = 1/sqrt(12 n)
  CHECK(std::abs(sum / n - 0.5) <= 5.0 / std::sqrt(12.0 * n));
}

TEST_CASE("next_int covers its range uniformly") {
  RngStream rng(13, "ints");
  const int n = 120000, k = 6;
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) {
    int v = rng.next_int(k);
    REQUIRE(v >= 0);
    REQUIRE(v < k);
    ++counts[v];
  }
  double p = 1.0 / k;
  for (int v = 0; v < k; ++v)
    CHECK(std::abs(static_cast<double>(counts[v]) / n - p) <=
          5.0 * std::sqrt(p * (1 - p) / n));
  CHECK_THROWS(rng.next_int(0));
}

TEST_CASE("normal draws have standard moments") {
  RngStream rng(17, "normals");
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double z = rng.next_normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / n) <= 5.0 / std::sqrt(static_cast<double>(n)));
  // var(z^2) = 2 for a standard normal
  CHECK(std::abs(sum_sq / n - 1.0) <= 5.0 * std::sqrt(2.0 / n));
}
