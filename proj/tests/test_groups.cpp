#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace mckay;
using namespace fixtures;

TEST_CASE("enumeration examples") {
  auto a2 = cyclic_sl2(3);
  CHECK(a2->order() == 3);
  CHECK(trivial_group(2)->order() == 1);
  auto s3 = s3_sl4();
  CHECK(s3->order() == 6);
  // class sizes keyed by element order: identity, transpositions, 3-cycles
  std::map<std::size_t, std::size_t> size_by_order;
  for (const auto& c : s3->classes()) size_by_order[s3->element_order(c.front())] = c.size();
  CHECK(s3->classes().size() == 3);
  CHECK(size_by_order == std::map<std::size_t, std::size_t>{{1, 1}, {2, 3}, {3, 2}});
  CHECK(s3->exponent() == 6);
  CHECK_FALSE(s3->is_abelian());
}

TEST_CASE("order cap") {
  // an infinite-order generator
  GroupSpec spec;
  spec.n = 2;
  spec.generators = {CycloMatrix::from_integers(2, 2, {1, 1, 0, 1})};
  try {
    enumerate_group(spec, 50);
    FAIL("expected OrderExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderExceeded);
  }
}

TEST_CASE("group invariants") {
  for (const auto& g : {cyclic_sl2(4), c3_sl3(), s3_sl4(), trivial_group(3)}) {
    std::size_t total = 0;
    for (const auto& c : g->classes()) total += c.size();
    CHECK(total == g->order());
    CHECK(g->classes().front() == std::vector<std::size_t>{0});
    CHECK(g->order() % static_cast<std::size_t>(g->exponent()) == 0);
    for (std::size_t k = 0; k < g->order(); ++k) {
      CycloMatrix p = CycloMatrix::identity(static_cast<std::size_t>(g->n()), g->conductor());
      for (int e = 0; e < g->exponent(); ++e) p = p * g->element(k);
      CHECK(p.is_identity());
      CHECK(g->multiply(k, g->inverse(k)) == 0);
    }
    std::mt19937 rng(1);
    std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
    for (int t = 0; t < 10; ++t) {
      const std::size_t a = pick(rng);
      const std::size_t h = pick(rng);
      const std::size_t c = g->multiply(g->multiply(g->inverse(h), a), h);
      CHECK(g->class_of(c) == g->class_of(a));
    }
  }
  auto c3 = c3_sl3();
  CHECK(c3->is_abelian());
  for (const auto& c : c3->classes()) CHECK(c.size() == 1);
}

TEST_CASE("deterministic enumeration") {
  auto a = s3_sl4();
  auto b = s3_sl4();
  REQUIRE(a->order() == b->order());
  for (std::size_t k = 0; k < a->order(); ++k) CHECK(a->element(k) == b->element(k));
}

TEST_CASE("linearity predicates") {
  CHECK(linearity_predicates(*c3_sl3()).in_SL);
  auto g = make_group(2, 4, {diagonal({Cyclo::zeta(4), Cyclo(1)})});
  CHECK_FALSE(linearity_predicates(*g).in_SL);
  CHECK(linearity_predicates(*g).in_GL);
  auto plain4 = make_group(4, 1, {s3_generator({1, 0, 2}, 1)});
  CHECK_FALSE(linearity_predicates(*plain4).in_SL);
  CHECK(linearity_predicates(*s3_sl4()).in_SL);
}

TEST_CASE("isolated singularity") {
  CHECK(isolated_singularity_test(*c3_sl3()));
  CHECK_FALSE(isolated_singularity_test(*s3_sl4()));
  CHECK(isolated_singularity_test(*trivial_group(2)));
  CHECK(isolated_singularity_test(*cyclic_sl2(2)));
}
