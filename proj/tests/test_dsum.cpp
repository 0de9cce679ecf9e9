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
#include <thread>

#include <gtest/gtest.h>

#include "qmat/dsum.hpp"
#include "support/data.hpp"
#include "support/reference.hpp"
#include "support/zoo.hpp"

namespace qmat {
namespace {

using Rows = std::vector<std::vector<uint32_t>>;

// Small parts over GF(q) with n1 + n2 = total.
std::vector<std::pair<Oracle, Oracle>> part_pairs(uint32_t q, uint32_t total, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Oracle, Oracle>> out;
  for (uint32_t n1 = 1; n1 < total; ++n1) {
    const uint32_t n2 = total - n1;
    out.emplace_back(zoo::random_representable(q, n1, 1 + rng() % n1, rng),
                     zoo::random_representable(q, n2, 1 + rng() % n2, rng));
    out.emplace_back(uniform(q, n1, rng() % (n1 + 1)), dual(zoo::random_representable(q, n2, 1 + rng() % n2, rng)));
  }
  return out;
}

TEST(Union, Examples) {
  const auto all = enumerate_subspaces(2, 3);
  for (const auto& e : zoo::build(2, 3)) {
    auto u = union_of(uniform(2, 3, 0), e.m);
    for (const auto& v : all) ASSERT_EQ(u->rank(v), e.m->rank(v)) << e.name;
  }
  auto ff = union_of(uniform(2, 3, 3), uniform(2, 3, 3));
  for (const auto& v : all) EXPECT_EQ(ff->rank(v), static_cast<int>(v.dim()));
  // U1 + U1 on GF(2)^2, reference by the same minimisation written out.
  auto a = uniform(2, 2, 1);
  auto uu = union_of(a, a);
  const auto all2 = enumerate_subspaces(2, 2);
  for (const auto& v : all2) {
    int best = 100;
    for (const auto& x : ref::subspaces_of(v, all2)) best = std::min(best, 2 * std::min<int>(1, x.dim()) - int(x.dim()));
    EXPECT_EQ(uu->rank(v), int(v.dim()) + best);
  }
  EXPECT_EQ(uu->rank_full(), 2);
  EXPECT_THROW(union_of(uniform(2, 2, 1), uniform(2, 3, 1)), Error);
}

TEST(DirectSum, Examples) {
  auto t = direct_sum(uniform(2, 2, 0), uniform(2, 3, 0));
  auto f = direct_sum(uniform(2, 2, 2), uniform(2, 3, 3));
  for (const auto& v : enumerate_subspaces(2, 5)) {
    EXPECT_EQ(t->rank(v), 0);
    EXPECT_EQ(f->rank(v), static_cast<int>(v.dim()));
  }
  EXPECT_EQ(direct_sum(testdata::m1(), testdata::m2())->rank_full(), 4);
  try {
    direct_sum(uniform(2, 2, 1), uniform(3, 2, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFieldMismatch);
  }
}

TEST(DirectSum, StrategiesAgreeWithReference) {
  for (auto [q, total] : {std::pair{2u, 4u}, {2u, 5u}, {3u, 3u}, {3u, 4u}}) {
    const auto all = enumerate_subspaces(q, total);
    for (const auto& [a, b] : part_pairs(q, total, q * 31 + total)) {
      auto naive = direct_sum(a, b, SumStrategy::kNaive);
      auto zb = direct_sum(a, b, SumStrategy::kZBased);
      for (const auto& v : all) {
        const int r = naive->rank(v);
        ASSERT_EQ(r, zb->rank(v));
        if (total <= 4) {
          ASSERT_EQ(r, ref::sum_rank(*a, *b, v, all));
        }
      }
      ASSERT_EQ(zb->rank_full(), a->rank_full() + b->rank_full());
    }
  }
}

TEST(DirectSum, StrategiesAgreeSampledAtSeven) {
  auto naive = direct_sum(testdata::m1(), testdata::m2(), SumStrategy::kNaive);
  auto zb = direct_sum(testdata::m1(), testdata::m2(), SumStrategy::kZBased);
  Budget b;
  auto rep = compare_ranks(*naive, *zb, false, b, 11, 2000);
  EXPECT_TRUE(rep.passed) << rep.detail;
}

TEST(DirectSum, Additivity) {
  for (auto [q, total] : {std::pair{2u, 4u}, {3u, 3u}}) {
    for (const auto& [a, b] : part_pairs(q, total, 77)) {
      auto s = direct_sum(a, b);
      for (const auto& v1 : enumerate_subspaces(q, a->n()))
        for (const auto& v2 : enumerate_subspaces(q, b->n()))
          ASSERT_EQ(s->rank(s->embed(v1, v2)), a->rank(v1) + b->rank(v2));
    }
  }
}

TEST(DirectSum, ContractionRecoversParts) {
  for (const auto& [a, b] : part_pairs(2, 5, 13)) {
    auto s = direct_sum(a, b);
    auto c2 = contraction(s, s->first_ground());
    for (const auto& w : enumerate_subspaces(2, b->n())) ASSERT_EQ(c2->rank(w), b->rank(w));
    // Contracting E2 leaves the leading coordinates, so M/E2 is M1 directly.
    auto c1 = contraction(s, s->second_ground());
    for (const auto& w : enumerate_subspaces(2, a->n())) ASSERT_EQ(c1->rank(w), a->rank(w));
  }
}

TEST(DirectSum, ComponentContainments) {
  for (const auto& [a, b] : part_pairs(2, 4, 21)) {
    auto s = direct_sum(a, b);
    for (const auto& v1 : enumerate_subspaces(2, a->n())) {
      for (const auto& v2 : enumerate_subspaces(2, b->n())) {
        const Subspace v = s->embed(v1, v2);
        const auto p = predicates(*s, v);
        const auto p1 = predicates(*a, v1), p2 = predicates(*b, v2);
        if (p1.independent && p2.independent) {
          ASSERT_TRUE(p.independent);
        }
        if (p1.flat && p2.flat) {
          ASSERT_TRUE(p.flat);
        }
        if (p1.cyclic && p2.cyclic) {
          ASSERT_TRUE(p.cyclic);
        }
        if (v2.is_zero() && p1.circuit) {
          ASSERT_TRUE(p.circuit);
        }
        if (v1.is_zero() && p2.circuit) {
          ASSERT_TRUE(p.circuit);
        }
      }
    }
  }
}

TEST(ZFlatsOfSum, Examples) {
  auto fam = zflats_of_sum(testdata::m1(), testdata::m2());
  EXPECT_EQ(fam.size(), 10u);
  auto with_free = zflats_of_sum(testdata::m2(), uniform(2, 2, 2));
  EXPECT_EQ(with_free.size(), 5u);
  EXPECT_EQ(zflats_of_sum(uniform(2, 2, 1), uniform(2, 3, 2)).size(), 4u);
}

TEST(ZFlatsOfSum, ProductLawAgainstNaiveScan) {
  for (auto [q, total] : {std::pair{2u, 4u}, {2u, 5u}, {3u, 3u}}) {
    for (const auto& [a, b] : part_pairs(q, total, 5)) {
      auto fam = zflats_of_sum(a, b);
      auto scanned = compute_zflats(direct_sum(a, b, SumStrategy::kNaive));
      ASSERT_EQ(fam.size(), scanned.size());
      for (size_t i = 0; i < fam.size(); ++i) {
        ASSERT_EQ(fam.members[i].space, scanned.members[i].space);
        ASSERT_EQ(fam.members[i].rank, scanned.members[i].rank);
      }
    }
  }
}

TEST(ZFlatsOfSum, SevenDimensionalExample) {
  auto fam = zflats_of_sum(testdata::m1(), testdata::m2());
  auto scanned = compute_zflats(direct_sum(testdata::m1(), testdata::m2()), 2);
  ASSERT_EQ(scanned.size(), 10u);
  for (size_t i = 0; i < 10; ++i) EXPECT_EQ(fam.members[i].space, scanned.members[i].space);
}

TEST(CircuitsOfSum, Examples) {
  Budget b;
  EXPECT_TRUE(circuits_of_sum_check(uniform(2, 2, 2), uniform(2, 2, 2), b).passed);
  EXPECT_TRUE(circuits_of_sum_check(uniform(2, 1, 0), uniform(2, 1, 0), b).passed);
  // The circuits of U(0,1) + U(0,1) are the three lines.
  auto t = direct_sum(uniform(2, 1, 0), uniform(2, 1, 0));
  int lines = 0;
  for (const auto& v : enumerate_subspaces(2, 2)) lines += predicates(*t, v).circuit;
  EXPECT_EQ(lines, 3);
  for (const auto& [a, c] : part_pairs(2, 4, 3)) EXPECT_TRUE(circuits_of_sum_check(a, c, b).passed);
  auto rep = circuits_of_sum_check(testdata::m1(), testdata::m2(), b);
  EXPECT_TRUE(rep.passed) << rep.detail;
  EXPECT_EQ(rep.checked, subspace_count(2, 7));
}

TEST(DualOfSum, Examples) {
  Budget b;
  EXPECT_TRUE(dual_of_sum_check(uniform(2, 2, 0), uniform(2, 2, 2), true, b).passed);
  auto lhs = dual(direct_sum(uniform(2, 2, 0), uniform(2, 2, 2)));
  auto rhs = direct_sum(uniform(2, 2, 2), uniform(2, 2, 0));
  for (const auto& v : enumerate_subspaces(2, 4)) EXPECT_EQ(lhs->rank(v), rhs->rank(v));
  EXPECT_TRUE(dual_of_sum_check(uniform(2, 2, 1), uniform(2, 2, 1), true, b).passed);
  auto rep = dual_of_sum_check(testdata::m1(), testdata::m2(), false, b, 3, 3000);
  EXPECT_TRUE(rep.passed);
  EXPECT_FALSE(rep.exhaustive);
  for (const auto& [a, c] : part_pairs(3, 4, 8)) EXPECT_TRUE(dual_of_sum_check(a, c, true, b).passed);
}

TEST(Associativity, Examples) {
  Budget b;
  auto t = uniform(2, 1, 0), f = uniform(2, 1, 1);
  EXPECT_TRUE(associativity_check(t, t, t, true, b).passed);
  auto three_free = direct_sum(direct_sum(f, f), f);
  for (const auto& v : enumerate_subspaces(2, 3)) EXPECT_EQ(three_free->rank(v), static_cast<int>(v.dim()));
  EXPECT_TRUE(associativity_check(f, f, f, true, b).passed);
  std::mt19937_64 rng(4);
  auto a = zoo::random_representable(2, 2, 1, rng);
  auto c = zoo::random_representable(2, 1, 1, rng);
  auto d = zoo::random_representable(2, 2, 2, rng);
  EXPECT_TRUE(associativity_check(a, c, d, true, b).passed);
}

TEST(BlockDiag, SevenDimensionalExample) {
  auto f = testdata::gf8();
  Budget b;
  auto rep = block_diag_compare(f, 2, testdata::g1(*f), testdata::g2(*f), 3, 4, b);
  EXPECT_TRUE(rep.passed) << rep.detail;
  EXPECT_EQ(rep.sum_members, 10u);
  EXPECT_EQ(rep.members_in_n, 10u);
  EXPECT_EQ(rep.independent_n, 24108u);
  EXPECT_EQ(rep.independent_sum, 24861u);
  EXPECT_EQ(compute_zflats(testdata::n_block(), 2).size(), 40u);
}

TEST(BlockDiag, SingleBlock) {
  auto f = testdata::gf8();
  Budget b;
  auto rep = block_diag_compare(f, 2, testdata::g2(*f), {}, 4, 0, b);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.independent_n, rep.independent_sum);
  EXPECT_EQ(rep.sum_members, 5u);
}

TEST(DirectSum, SpecFlattensLeftFolds) {
  auto s = direct_sum({uniform(2, 1, 0), uniform(2, 1, 1), uniform(2, 2, 1)});
  auto spec = s->to_spec();
  EXPECT_EQ(spec["kind"], "dsum");
  EXPECT_EQ(spec["strategy"], "zbased");
  EXPECT_EQ(spec["parts"].size(), 3u);
  auto right = direct_sum(uniform(2, 1, 0), direct_sum(uniform(2, 1, 1), uniform(2, 2, 1)));
  EXPECT_EQ(right->to_spec()["parts"].size(), 2u);
}

TEST(DirectSum, LazyFamilyUnderConcurrentFirstQueries) {
  auto s = direct_sum(testdata::m1(), testdata::m2());
  std::vector<std::thread> pool;
  std::vector<int> got(8);
  for (int t = 0; t < 8; ++t) pool.emplace_back([&, t] { got[t] = s->rank_full(); });
  for (auto& th : pool) th.join();
  for (int r : got) EXPECT_EQ(r, 4);
}

}  // namespace
}  // namespace qmat
