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

// Union and direct sum of q-matroids.
//
// The direct sum lives on GF(q)^(n1+n2) with the first part on the leading
// n1 coordinates. Two rank strategies:
//   naive   dim V + min over X1 <= pi1(V), X2 <= pi2(V) of
//           rho1(X1) + rho2(X2) - dim((X1 + X2) cap V)
//   zbased  the rank formula over the product family {Z1 + Z2}.

#pragma once

#include <array>
#include <climits>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_set>
#include <vector>

#include "qmat/budget.hpp"
#include "qmat/operators.hpp"
#include "qmat/oracle.hpp"
#include "qmat/subspace.hpp"
#include "qmat/zflats.hpp"

namespace qmat {

enum class SumStrategy { kNaive, kZBased };

inline std::string strategy_name(SumStrategy s) { return s == SumStrategy::kNaive ? "naive" : "zbased"; }

inline SumStrategy parse_strategy(const std::string& s) {
  if (s == "naive") return SumStrategy::kNaive;
  if (s == "zbased") return SumStrategy::kZBased;
  throw Error(ErrorCode::kInvalidInput, "unknown strategy '" + s + "'");
}

/// rho(V) = dim V + min over X <= V of rho1(X) + rho2(X) - dim X. Every X is
/// enumerated, so this is for tiny grounds only.
class UnionOracle : public RankOracle {
 public:
  UnionOracle(Oracle a, Oracle b) : RankOracle(a->q(), a->n()), a_(std::move(a)), b_(std::move(b)) {
    if (a_->q() != b_->q() || a_->n() != b_->n()) throw Error(ErrorCode::kGroundMismatch, "union needs a common ground");
  }

  std::string kind() const override { return "union"; }

  int rank_rows(std::span<const uint64_t> rows) const override {
    const uint32_t d = static_cast<uint32_t>(rows.size());
    const VecOps local(q(), d);
    int best = INT_MAX;
    std::array<uint64_t, 64> buf{};
    for_each_subspace(local, 0, d, 0, 1, [&](std::span<const uint64_t> x) {
      for (size_t i = 0; i < x.size(); ++i) {
        uint64_t v = 0;
        for (uint32_t j = 0; j < d; ++j) {
          const uint32_t c = local.get(x[i], j);
          if (c) v = ops_.axpy(v, c, rows[j]);
        }
        buf[i] = v;
      }
      const std::span<const uint64_t> xs(buf.data(), x.size());
      best = std::min(best, a_->rank_rows(xs) + b_->rank_rows(xs) - static_cast<int>(x.size()));
      return true;
    });
    return static_cast<int>(d) + best;
  }

  json to_spec() const override { return json{{"kind", "union"}, {"parts", json::array({a_->to_spec(), b_->to_spec()})}}; }

 private:
  Oracle a_, b_;
};

inline Oracle union_of(Oracle a, Oracle b) { return std::make_shared<UnionOracle>(std::move(a), std::move(b)); }

class SumOracle : public RankOracle {
 public:
  SumOracle(Oracle a, Oracle b, SumStrategy strategy)
      : RankOracle(a->q(), a->n() + b->n()), a_(std::move(a)), b_(std::move(b)), strategy_(strategy) {
    if (a_->q() != b_->q()) {
      throw Error(ErrorCode::kFieldMismatch, "parts over GF(" + std::to_string(a_->q()) + ") and GF(" +
                                                 std::to_string(b_->q()) + ")");
    }
    shift_ = a_->n() * ops_.coord_bits();
  }

  const Oracle& first() const { return a_; }
  const Oracle& second() const { return b_; }
  SumStrategy strategy() const { return strategy_; }
  std::string kind() const override { return "dsum"; }

  uint64_t embed_first(uint64_t v) const { return v; }
  uint64_t embed_second(uint64_t v) const { return b_->n() == 0 ? 0 : v << shift_; }
  uint64_t project_first(uint64_t v) const { return v & a_->ops().coord_mask(); }
  uint64_t project_second(uint64_t v) const { return b_->n() == 0 ? 0 : v >> shift_; }

  /// V1 + V2 with V1 in the first part and V2 in the second.
  Subspace embed(const Subspace& v1, const Subspace& v2) const {
    std::vector<uint64_t> rows;
    for (uint64_t r : v1.rows()) rows.push_back(embed_first(r));
    for (uint64_t r : v2.rows()) rows.push_back(embed_second(r));
    return Subspace::from_packed(ops_, rows);
  }

  Subspace project_first(const Subspace& v) const {
    std::vector<uint64_t> rows;
    for (uint64_t r : v.rows()) rows.push_back(project_first(r));
    return Subspace::from_packed(a_->ops(), rows);
  }

  Subspace project_second(const Subspace& v) const {
    std::vector<uint64_t> rows;
    for (uint64_t r : v.rows()) rows.push_back(project_second(r));
    return Subspace::from_packed(b_->ops(), rows);
  }

  /// E1 and E2 as subspaces of the sum.
  Subspace first_ground() const { return embed(Subspace::full(q(), a_->n()), Subspace::zero(q(), b_->n())); }
  Subspace second_ground() const { return embed(Subspace::zero(q(), a_->n()), Subspace::full(q(), b_->n())); }

  const CyclicFlatFamily& first_family() const {
    std::lock_guard lock(fam_mu_);
    return part_family(a_, fam1_);
  }
  const CyclicFlatFamily& second_family() const {
    std::lock_guard lock(fam_mu_);
    return part_family(b_, fam2_);
  }

  /// {Z1 + Z2} with additive ranks. Computed once; concurrent first calls
  /// block on the same initialisation.
  const CyclicFlatFamily& product_family() const {
    std::call_once(product_once_, [&] {
      std::vector<FamilyMember> members;
      for (const auto& z1 : first_family().members) {
        for (const auto& z2 : second_family().members) {
          members.push_back({embed(z1.space, z2.space), z1.rank + z2.rank});
        }
      }
      product_ = std::make_shared<CyclicFlatFamily>(make_family(q(), n(), members));
      zdef_ = std::make_shared<ZDefinedOracle>(q(), n(), std::move(members));
    });
    return *product_;
  }

  int rank_rows(std::span<const uint64_t> rows) const override {
    if (strategy_ == SumStrategy::kZBased) {
      product_family();
      return zdef_->rank_rows(rows);
    }
    return naive_rank(rows);
  }

  json to_spec() const override {
    json parts = json::array();
    // Left-nested sums with the same strategy flatten to one list.
    if (auto inner = std::dynamic_pointer_cast<const SumOracle>(a_); inner && inner->strategy_ == strategy_) {
      parts = inner->to_spec()["parts"];
    } else {
      parts.push_back(a_->to_spec());
    }
    parts.push_back(b_->to_spec());
    return json{{"kind", "dsum"}, {"strategy", strategy_name(strategy_)}, {"parts", parts}};
  }

 private:
  // Z of a summand. A zbased sum reuses its product family instead of
  // rescanning.
  static const CyclicFlatFamily& part_family(const Oracle& part, std::shared_ptr<CyclicFlatFamily>& slot) {
    if (!slot) {
      auto inner = std::dynamic_pointer_cast<const SumOracle>(part);
      if (inner && inner->strategy() == SumStrategy::kZBased) {
        slot = std::make_shared<CyclicFlatFamily>(inner->product_family());
      } else {
        slot = std::make_shared<CyclicFlatFamily>(compute_zflats(part, 1));
      }
      slot->source = part;
    }
    return *slot;
  }

  struct Piece {
    std::vector<uint64_t> rows;  // embedded into the sum
    int rank = 0;
  };

  // Every subspace of the row space of `proj`, embedded, with its part rank.
  std::vector<Piece> pieces(const Oracle& part, const Subspace& proj, bool second) const {
    std::vector<Piece> out;
    const VecOps local(q(), proj.dim());
    std::array<uint64_t, 64> buf{};
    for_each_subspace(local, 0, proj.dim(), 0, 1, [&](std::span<const uint64_t> x) {
      Piece p;
      for (size_t i = 0; i < x.size(); ++i) {
        uint64_t v = 0;
        for (uint32_t j = 0; j < proj.dim(); ++j) {
          const uint32_t c = local.get(x[i], j);
          if (c) v = part->ops().axpy(v, c, proj.rows()[j]);
        }
        buf[i] = v;
        p.rows.push_back(second ? embed_second(v) : embed_first(v));
      }
      p.rank = part->rank_rows(std::span<const uint64_t>(buf.data(), x.size()));
      out.push_back(std::move(p));
      return true;
    });
    return out;
  }

  int naive_rank(std::span<const uint64_t> rows) const {
    const int d = static_cast<int>(rows.size());
    std::vector<uint64_t> p1, p2;
    for (uint64_t r : rows) {
      p1.push_back(project_first(r));
      p2.push_back(project_second(r));
    }
    const auto l1 = pieces(a_, Subspace::from_packed(a_->ops(), p1), false);
    const auto l2 = pieces(b_, Subspace::from_packed(b_->ops(), p2), true);
    Reducer base(ops_);
    for (uint64_t r : rows) base.insert(r);
    int best = INT_MAX;
    for (const auto& x1 : l1) {
      Reducer with1 = base;
      for (uint64_t r : x1.rows) with1.insert(r);
      for (const auto& x2 : l2) {
        if (x1.rank + x2.rank - static_cast<int>(x1.rows.size() + x2.rows.size()) >= best) continue;
        Reducer all = with1;
        for (uint64_t r : x2.rows) all.insert(r);
        const int cap = static_cast<int>(x1.rows.size() + x2.rows.size()) + d - all.count();
        best = std::min(best, x1.rank + x2.rank - cap);
      }
    }
    return d + best;
  }

  Oracle a_, b_;
  SumStrategy strategy_;
  uint32_t shift_ = 0;
  mutable std::mutex fam_mu_;
  mutable std::shared_ptr<CyclicFlatFamily> fam1_, fam2_;
  mutable std::once_flag product_once_;
  mutable std::shared_ptr<CyclicFlatFamily> product_;
  mutable std::shared_ptr<ZDefinedOracle> zdef_;
};

using SumPtr = std::shared_ptr<const SumOracle>;

inline SumPtr direct_sum(Oracle a, Oracle b, SumStrategy strategy = SumStrategy::kZBased) {
  return std::make_shared<SumOracle>(std::move(a), std::move(b), strategy);
}

/// Left fold over two or more parts.
inline Oracle direct_sum(const std::vector<Oracle>& parts, SumStrategy strategy = SumStrategy::kZBased) {
  if (parts.size() < 2) throw Error(ErrorCode::kInvalidInput, "a direct sum needs at least two parts");
  Oracle acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i], strategy);
  return acc;
}

/// Z(M1 + M2) as the product family, with the sum as source.
inline CyclicFlatFamily zflats_of_sum(const Oracle& a, const Oracle& b) {
  auto s = direct_sum(a, b, SumStrategy::kZBased);
  CyclicFlatFamily fam = s->product_family();
  fam.source = s;
  return fam;
}

/// Circuits of the sum against the minimal members of
/// {X : rho1(pi1 X) + rho2(pi2 X) < dim X}.
inline CheckReport circuits_of_sum_check(const Oracle& a, const Oracle& b, Budget& budget) {
  auto s = direct_sum(a, b, SumStrategy::kZBased);
  const VecOps& ops = s->ops();
  CheckReport rep;
  // contains[X]: X or one of its subspaces lies in the set.
  std::unordered_set<Subspace, SubspaceHash> contains;
  const int full = s->rank_full();
  for_each_subspace(ops, 0, s->n(), 0, 1, [&](std::span<const uint64_t> rows) {
    budget.tick();
    ++rep.checked;
    const Subspace v = Subspace::from_rref(ops, std::vector<uint64_t>(rows.begin(), rows.end()));
    const int d = static_cast<int>(rows.size());
    const bool in_set = a->rank(s->project_first(v)) + b->rank(s->project_second(v)) < d;
    bool below = false;
    if (d > 0) {
      for_each_hyperplane(ops, rows, [&](std::span<const uint64_t> h, uint64_t) {
        below = contains.count(Subspace::from_packed(ops, h)) > 0;
        return !below;
      });
    }
    if (in_set || below) contains.insert(v);
    const bool minimal = in_set && !below;
    const bool circuit = classify_rows(*s, rows, v.pivot_mask(), full).circuit;
    if (minimal != circuit) {
      rep.passed = false;
      rep.witnesses.push_back(v);
      rep.detail = circuit ? "circuit is not a minimal member of the set" : "minimal member is not a circuit";
      return false;
    }
    return true;
  });
  return rep;
}

/// dual(M1 + M2) against dual(M1) + dual(M2).
inline CheckReport dual_of_sum_check(const Oracle& a, const Oracle& b, bool exhaustive, Budget& budget,
                                     uint64_t seed = 0, uint64_t samples = 10000) {
  auto lhs = dual(direct_sum(a, b));
  auto rhs = direct_sum(dual(a), dual(b));
  return compare_ranks(*lhs, *rhs, exhaustive, budget, seed, samples);
}

inline CheckReport associativity_check(const Oracle& a, const Oracle& b, const Oracle& c, bool exhaustive,
                                       Budget& budget, uint64_t seed = 0, uint64_t samples = 10000) {
  auto left = direct_sum(direct_sum(a, b), c);
  auto right = direct_sum(a, direct_sum(b, c));
  return compare_ranks(*left, *right, exhaustive, budget, seed, samples);
}

struct BlockDiagReport {
  bool passed = true;
  size_t sum_members = 0;        // |Z(M1 + M2)|
  size_t members_in_n = 0;       // how many of them are cyclic flats of N
  uint64_t independent_n = 0;
  uint64_t independent_sum = 0;
  bool independence_contained = true;
  std::vector<Subspace> witnesses;
  std::string detail;
};

/// N represented by diag(G1, G2) against M_{G1} + M_{G2}.
inline BlockDiagReport block_diag_compare(const FieldPtr& ext, uint32_t q, const Matrix& g1, const Matrix& g2,
                                          uint32_t n1, uint32_t n2, Budget& budget) {
  const Oracle a = from_representation(ext, q, g1, n1);
  const Oracle b = from_representation(ext, q, g2, n2);
  const Oracle nm = from_representation(ext, q, block_diagonal(*ext, g1, g2, n1, n2), n1 + n2);
  auto m = direct_sum(a, b);
  BlockDiagReport rep;
  const CyclicFlatFamily& z = m->product_family();
  rep.sum_members = z.size();
  for (const auto& member : z.members) {
    if (is_cyclic(*nm, member.space) && is_flat(*nm, member.space)) {
      ++rep.members_in_n;
    } else {
      rep.passed = false;
      rep.witnesses.push_back(member.space);
      rep.detail = "cyclic flat of the sum is not a cyclic flat of N";
    }
  }
  for_each_subspace(nm->ops(), 0, nm->n(), 0, 1, [&](std::span<const uint64_t> rows) {
    budget.tick();
    const int d = static_cast<int>(rows.size());
    const bool in_n = nm->rank_rows(rows) == d;
    const bool in_m = m->rank_rows(rows) == d;
    rep.independent_n += in_n;
    rep.independent_sum += in_m;
    if (in_n && !in_m && rep.independence_contained) {
      rep.independence_contained = false;
      rep.passed = false;
      rep.witnesses.push_back(Subspace::from_packed(nm->ops(), rows));
      rep.detail = "independent in N but dependent in the sum";
    }
    return true;
  });
  return rep;
}

}  // namespace qmat
