// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "qmat/dsum.hpp"
#include "qmat/operators.hpp"
#include "qmat/oracle.hpp"
#include "support/data.hpp"
#include "support/reference.hpp"
#include "support/zoo.hpp"

namespace qmat {
namespace {

using Rows = std::vector<std::vector<uint32_t>>;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidInput;
}

TEST(Representable, SmallExamples) {
  auto f2 = create_field(2, 1);
  auto m = from_representation(f2, 2, parse_matrix(*f2, {{"1", "0", "0"}, {"0", "1", "0"}}));
  EXPECT_EQ(m->rank(span(2, 3, Rows{{0, 0, 1}})), 0);
  EXPECT_EQ(m->rank(span(2, 3, Rows{{1, 0, 0}, {0, 1, 0}})), 2);

  EXPECT_EQ(testdata::m1()->rank_full(), 2);

  auto id = from_representation(f2, 2, parse_matrix(*f2, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}));
  for (const auto& v : enumerate_subspaces(2, 3)) EXPECT_EQ(id->rank(v), static_cast<int>(v.dim()));
}

TEST(Representable, Errors) {
  auto f8 = testdata::gf8();
  EXPECT_EQ(code_of([&] { from_representation(f8, 2, parse_matrix(*f8, {{"1", "w1"}, {"1", "w1"}})); }),
            ErrorCode::kRankDeficientG);
  EXPECT_EQ(code_of([&] { from_representation(f8, 3, parse_matrix(*f8, {{"1", "w1"}})); }), ErrorCode::kFieldMismatch);
}

TEST(Representable, MatchesReferenceElimination) {
  std::mt19937_64 rng(5);
  for (auto [q, n] : {std::pair{2u, 4u}, {3u, 3u}}) {
    for (int t = 0; t < 4; ++t) {
      const uint32_t k = 1 + rng() % n;
      auto m = zoo::random_representable(q, n, k, rng);
      const auto& rep = dynamic_cast<const RepresentableOracle&>(*m);
      for (const auto& v : enumerate_subspaces(q, n))
        ASSERT_EQ(m->rank(v), ref::representable_rank(rep.ext(), rep.g(), v));
    }
  }
  // Above the image-table threshold the generic path is used.
  auto m = testdata::octic_representation();
  const auto& rep = dynamic_cast<const RepresentableOracle&>(*m);
  std::mt19937_64 r2(9);
  for (int i = 0; i < 300; ++i) {
    auto v = random_subspace(m->ops(), r2);
    ASSERT_EQ(m->rank(v), ref::representable_rank(rep.ext(), rep.g(), v));
  }
}

TEST(Uniform, Basics) {
  for (const auto& v : enumerate_subspaces(2, 3)) {
    EXPECT_EQ(uniform(2, 3, 0)->rank(v), 0);
    EXPECT_EQ(uniform(2, 3, 3)->rank(v), static_cast<int>(v.dim()));
  }
  for (const auto& v : enumerate_subspaces(2, 4, 3)) EXPECT_EQ(uniform(2, 4, 2)->rank(v), 2);
  EXPECT_EQ(code_of([] { uniform(2, 3, 4); }), ErrorCode::kKOutOfRange);
}

TEST(ZDefined, Examples) {
  auto u = from_cyclic_flats(2, 4, {{Subspace::zero(2, 4), 0}, {Subspace::full(2, 4), 2}});
  for (const auto& v : enumerate_subspaces(2, 4)) EXPECT_EQ(u->rank(v), std::min<int>(2, v.dim()));

  auto m = testdata::octic_matroid();
  EXPECT_EQ(m->rank(Subspace::coordinate(2, 8, 0, 2)), 1);
  EXPECT_EQ(m->rank_full(), 4);

  auto free_m = from_cyclic_flats(2, 3, {{Subspace::zero(2, 3), 0}});
  for (const auto& v : enumerate_subspaces(2, 3)) EXPECT_EQ(free_m->rank(v), static_cast<int>(v.dim()));

  EXPECT_EQ(code_of([] { from_cyclic_flats(2, 3, {}); }), ErrorCode::kEmptyFamily);
  // Rank 3 on a 2-dim member.
  EXPECT_EQ(code_of([] { from_cyclic_flats(2, 3, {{Subspace::coordinate(2, 3, 0, 2), 3}}); }),
            ErrorCode::kInconsistentFamily);
  // The formula gives 0 on E through Z = 0, not the assigned 2.
  EXPECT_EQ(code_of([] {
              from_cyclic_flats(2, 2, {{Subspace::zero(2, 2), 0}, {Subspace::full(2, 2), 3}});
            }),
            ErrorCode::kInconsistentFamily);
}

TEST(Spread, Examples) {
  auto m = testdata::spread_matroid(1);
  EXPECT_EQ(m->rank(span(3, 4, Rows{{1, 0, 0, 0}, {0, 1, 0, 0}})), 1);
  auto empty = from_spread(3, {});
  for (const auto& v : enumerate_subspaces(3, 4)) EXPECT_EQ(empty->rank(v), std::min<int>(2, v.dim()));
  EXPECT_EQ(code_of([] {
              from_spread(2, {span(2, 4, Rows{{1, 0, 0, 0}, {0, 1, 0, 0}}), span(2, 4, Rows{{1, 0, 0, 0}, {0, 0, 1, 0}})});
            }),
            ErrorCode::kNotASpread);
  EXPECT_EQ(code_of([] { from_spread(2, {span(2, 4, Rows{{1, 0, 0, 0}})}); }), ErrorCode::kWrongDimension);
}

TEST(Dual, Examples) {
  for (uint32_t k = 0; k <= 4; ++k) {
    auto d = dual(uniform(2, 4, k));
    for (const auto& v : enumerate_subspaces(2, 4)) ASSERT_EQ(d->rank(v), std::min<int>(4 - k, v.dim()));
  }
  EXPECT_EQ(dual(testdata::m1())->rank_full(), 1);
}

TEST(RestrictionContraction, Identities) {
  auto m = testdata::m2();
  auto r = restriction(m, Subspace::full(2, 4));
  auto c = contraction(m, Subspace::zero(2, 4));
  for (const auto& v : enumerate_subspaces(2, 4)) {
    EXPECT_EQ(r->rank(v), m->rank(v));
    EXPECT_EQ(c->rank(v), m->rank(v));
  }
  // A dependent basis is refused.
  EXPECT_EQ(code_of([&] { restriction(m, std::vector<uint64_t>{1, 1}); }), ErrorCode::kNotASubspace);
  EXPECT_EQ(code_of([&] { contraction(m, Subspace::zero(2, 3)); }), ErrorCode::kNotASubspace);
}

TEST(RestrictionContraction, ContractingFirstPartRecoversSecond) {
  auto a = testdata::m1(), b = testdata::m2();
  auto s = direct_sum(a, b);
  auto c = contraction(s, s->first_ground());
  const auto& co = dynamic_cast<const ContractionOracle&>(*c);
  // Quotient coordinates are the free columns 3..6, which are exactly E2.
  ASSERT_EQ(co.quotient().target().n(), 4u);
  for (const auto& w : enumerate_subspaces(2, 4)) {
    const Subspace lifted = co.quotient().lift(w);
    ASSERT_EQ(c->rank(w), s->rank(lifted) - s->rank(s->first_ground()));
    ASSERT_EQ(c->rank(w), b->rank(w));
  }
}

TEST(Operators, ClosureExamples) {
  for (const auto& v : enumerate_subspaces(2, 3)) EXPECT_EQ(closure(*uniform(2, 3, 3), v), v);
  EXPECT_TRUE(closure(*uniform(2, 3, 0), Subspace::zero(2, 3)).is_full());
  for (const auto& v : enumerate_subspaces(2, 4, 2)) {
    EXPECT_TRUE(closure(*uniform(2, 4, 2), v).is_full());
    // cyc(cl V) = E but cl(cyc V) = cl(0) = 0.
    EXPECT_TRUE(cyclic_core(*uniform(2, 4, 2), closure(*uniform(2, 4, 2), v)).is_full());
    EXPECT_TRUE(closure(*uniform(2, 4, 2), cyclic_core(*uniform(2, 4, 2), v)).is_zero());
  }
}

TEST(Operators, CyclicCoreExamples) {
  auto m = testdata::m2();
  for (const auto& v : enumerate_subspaces(2, 4)) {
    if (is_independent(*m, v)) {
      EXPECT_TRUE(cyclic_core(*m, v).is_zero());
    }
    EXPECT_EQ(cyclic_core(*uniform(2, 4, 0), v), v);
  }
}

TEST(Operators, PredicateExamples) {
  auto m = testdata::m1();
  int circuits = 0, bases = 0;
  for (const auto& v : enumerate_subspaces(2, 3)) {
    auto p = predicates(*m, v);
    circuits += p.circuit;
    bases += p.basis;
  }
  EXPECT_EQ(circuits, 1);
  EXPECT_EQ(bases, 6);
  auto z = predicates(*m, Subspace::zero(2, 3));
  EXPECT_TRUE(z.independent && z.cyclic);
  EXPECT_EQ(z.flat, loop_space(*m).is_zero());
  auto fr = uniform(2, 3, 3);
  for (const auto& v : enumerate_subspaces(2, 3)) {
    auto p = predicates(*fr, v);
    EXPECT_TRUE(p.independent && p.flat);
    EXPECT_EQ(p.cyclic, v.is_zero());
  }
}

TEST(Operators, LoopSpaceAndFullness) {
  EXPECT_TRUE(loop_space(*uniform(2, 3, 0)).is_full());
  auto n = testdata::n_block();
  EXPECT_TRUE(loop_space(*n).is_zero());
  EXPECT_EQ(cyc_top(*n).dim(), 6u);
  EXPECT_FALSE(is_full(*n));
  EXPECT_TRUE(is_full(*testdata::octic_matroid()));
}

TEST(Operators, AgreeWithDefinitions) {
  for (auto [q, n] : {std::pair{2u, 4u}, {3u, 3u}}) {
    const auto all = enumerate_subspaces(q, n);
    for (const auto& e : zoo::build(q, n)) {
      const auto circs = ref::circuits(*e.m, all);
      for (const auto& v : all) {
        ASSERT_EQ(e.m->rank(v), ref::max_independent(*e.m, v, all)) << e.name;
        ASSERT_EQ(closure(*e.m, v), ref::closure(*e.m, v)) << e.name;
        ASSERT_EQ(cyclic_core(*e.m, v), ref::cyclic_core(v, circs)) << e.name;
        const bool is_circ = std::find(circs.begin(), circs.end(), v) != circs.end();
        ASSERT_EQ(predicates(*e.m, v).circuit, is_circ) << e.name;
      }
    }
  }
}

TEST(Operators, Laws) {
  for (auto [q, n] : {std::pair{2u, 4u}, {3u, 3u}}) {
    const auto all = enumerate_subspaces(q, n);
    for (const auto& e : zoo::build(q, n, 2)) {
      const auto& m = *e.m;
      auto dm = dual(e.m);
      for (const auto& v : all) {
        const Subspace cl = closure(m, v), cy = cyclic_core(m, v);
        ASSERT_TRUE(cl.contains(v));
        ASSERT_EQ(closure(m, cl), cl);
        ASSERT_EQ(m.rank(cl), m.rank(v));
        ASSERT_EQ(cyclic_core(m, cy), cy);
        ASSERT_EQ(dual(dm)->rank(v), m.rank(v)) << e.name;
        ASSERT_EQ(orthogonal(cy), closure(*dm, orthogonal(v))) << e.name;
        ASSERT_EQ(int(v.dim()) - m.rank(v), int(cy.dim()) - m.rank(cy));
        ASSERT_EQ(intersect(v, closure(m, cy)), cy);
        ASSERT_TRUE(cyclic_core(m, cl).contains(closure(m, cy)));
        if (is_flat(m, v)) {
          ASSERT_TRUE(is_flat(m, cy));
        }
        if (is_cyclic(m, v)) {
          ASSERT_TRUE(is_cyclic(m, cl));
        }
      }
      for (const auto& u : all) {
        for (const auto& v : all) {
          if (!v.contains(u)) continue;
          ASSERT_TRUE(closure(m, v).contains(closure(m, u)));
          ASSERT_TRUE(cyclic_core(m, v).contains(cyclic_core(m, u)));
        }
      }
    }
  }
}

TEST(AxiomCheck, Examples) {
  EXPECT_TRUE(axiom_check(*uniform(2, 5, 2)).passed);
  auto small = from_cyclic_flats(2, 5, {{Subspace::zero(2, 5), 0}, {Subspace::coordinate(2, 5, 0, 2), 1},
                                         {Subspace::full(2, 5), 2}});
  EXPECT_TRUE(axiom_check(*small).passed);

  std::map<Subspace, int> table;
  for (const auto& v : enumerate_subspaces(2, 2)) table[v] = std::min<int>(1, v.dim());
  table[Subspace::zero(2, 2)] = 1;
  TableOracle bad(2, 2, table);
  auto rep = axiom_check(bad);
  ASSERT_FALSE(rep.passed);
  EXPECT_EQ(rep.violation->axiom, "R1");
  EXPECT_EQ(rep.violation->witnesses.at(0), Subspace::zero(2, 2));
}

TEST(AxiomCheck, DetectsR2AndR3) {
  // Rank drops from a line to the plane above it.
  std::map<Subspace, int> t2;
  for (const auto& v : enumerate_subspaces(2, 2)) t2[v] = v.dim() == 1 ? 1 : 0;
  EXPECT_EQ(axiom_check(TableOracle(2, 2, t2)).violation->axiom, "R2");
  // Two points of rank 0 spanning a line of rank 1.
  std::map<Subspace, int> t3;
  for (const auto& v : enumerate_subspaces(2, 2)) t3[v] = v.dim() == 2 ? 1 : 0;
  EXPECT_EQ(axiom_check(TableOracle(2, 2, t3)).violation->axiom, "R3");
}

TEST(AxiomCheck, SampledAndBudget) {
  Budget b;
  auto rep = axiom_check(*testdata::octic_matroid(), AxiomMode::kSampled, b, 3, 300);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.pairs_checked, 300u);
  Budget tiny = Budget::work(10);
  EXPECT_EQ(code_of([&] { axiom_check(*uniform(2, 4, 2), AxiomMode::kExhaustive, tiny); }),
            ErrorCode::kBudgetExceeded);
}

TEST(AxiomCheck, Zoo) {
  for (auto [q, n] : {std::pair{2u, 4u}, {3u, 3u}})
    for (const auto& e : zoo::build(q, n)) EXPECT_TRUE(axiom_check(*e.m).passed) << e.name;
}

TEST(Equivalence, Examples) {
  auto m = testdata::m2();
  EXPECT_TRUE(equivalent_under(*m, *m, identity_matrix(4)));
  for (uint32_t k = 0; k < 3; ++k) {
    EXPECT_FALSE(equivalent_under(*uniform(2, 3, k), *uniform(2, 3, k + 1), identity_matrix(3)));
  }
  EXPECT_TRUE(equivalent_under(*testdata::spread_matroid(1), *testdata::gf9_representation(), identity_matrix(4)));
  EXPECT_EQ(code_of([&] { equivalent_under(*m, *m, std::vector<std::vector<uint32_t>>(4, std::vector<uint32_t>(4, 0))); }),
            ErrorCode::kSingularAlpha);
  // Swapping the two coordinates of a sum of different parts.
  auto s = direct_sum(uniform(2, 1, 0), uniform(2, 1, 1));
  auto t = direct_sum(uniform(2, 1, 1), uniform(2, 1, 0));
  EXPECT_FALSE(equivalent_under(*s, *t, identity_matrix(2)));
  EXPECT_TRUE(equivalent_under(*s, *t, {{0, 1}, {1, 0}}));
}

TEST(Cache, ConcurrentReadsAgree) {
  std::vector<std::thread> pool;
  std::atomic<int> bad{0};
  auto big = testdata::octic_matroid();
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      std::mt19937_64 rng(t);
      for (int i = 0; i < 2000; ++i) {
        auto v = random_subspace(big->ops(), rng);
        if (big->rank(v) != big->rank_rows(v.rows())) ++bad;
      }
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(bad.load(), 0);
  EXPECT_GT(big->cache_size(), 0u);
  big->set_cache(false);
  EXPECT_EQ(big->cache_size(), 0u);
}

}  // namespace
}  // namespace qmat
