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

// The lattice Z(M) of cyclic flats.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmat/budget.hpp"
#include "qmat/operators.hpp"
#include "qmat/oracle.hpp"
#include "qmat/parallel.hpp"
#include "qmat/subspace.hpp"

namespace qmat {

inline constexpr size_t kNoMember = std::numeric_limits<size_t>::max();

struct CyclicFlatFamily {
  uint32_t q = 2;
  uint32_t n = 0;
  std::vector<FamilyMember> members;  // sorted by Subspace order
  std::vector<std::pair<size_t, size_t>> cover_edges;  // (lower, upper)
  size_t least = kNoMember;
  size_t greatest = kNoMember;
  Oracle source;  // the oracle this family was computed from, if any

  size_t size() const { return members.size(); }

  size_t index_of(const Subspace& z) const {
    auto it = std::lower_bound(members.begin(), members.end(), z,
                               [](const FamilyMember& m, const Subspace& s) { return m.space < s; });
    if (it == members.end() || it->space != z) return kNoMember;
    return static_cast<size_t>(it - members.begin());
  }

  bool contains(const Subspace& z) const { return index_of(z) != kNoMember; }
};

/// Sorts members and fills in the Hasse edges and the extreme members.
inline CyclicFlatFamily make_family(uint32_t q, uint32_t n, std::vector<FamilyMember> members, Oracle source = nullptr) {
  CyclicFlatFamily fam;
  fam.q = q;
  fam.n = n;
  fam.source = std::move(source);
  std::sort(members.begin(), members.end(),
            [](const FamilyMember& a, const FamilyMember& b) { return a.space < b.space; });
  fam.members = std::move(members);
  const size_t k = fam.members.size();
  std::vector<std::vector<char>> below(k, std::vector<char>(k, 0));  // below[i][j]: Z_i < Z_j
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      below[i][j] = i != j && fam.members[j].space.contains(fam.members[i].space) &&
                    fam.members[i].space.dim() < fam.members[j].space.dim();
    }
  }
  for (size_t i = 0; i < k; ++i) {
    bool is_least = true, is_greatest = true;
    for (size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      is_least = is_least && below[i][j];
      is_greatest = is_greatest && below[j][i];
    }
    if (is_least) fam.least = i;
    if (is_greatest) fam.greatest = i;
  }
  // Transitive reduction of the containment order.
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (!below[i][j]) continue;
      bool cover = true;
      for (size_t t = 0; t < k && cover; ++t) cover = !(below[i][t] && below[t][j]);
      if (cover) fam.cover_edges.emplace_back(i, j);
    }
  }
  return fam;
}

/// Full lattice scan keeping the spaces that are both cyclic and flat.
inline CyclicFlatFamily compute_zflats(const Oracle& m, uint32_t shards, Budget& budget) {
  const VecOps& ops = m->ops();
  const int full = m->rank_full();
  const uint32_t n = m->n();
  auto parts = run_shards<std::vector<FamilyMember>>(shards, [&](uint32_t shard) {
    std::vector<FamilyMember> found;
    uint64_t local = 0;
    for_each_subspace(ops, 0, n, shard, shards, [&](std::span<const uint64_t> rows) {
      if (++local % 256 == 0) budget.tick(256);
      const uint32_t d = static_cast<uint32_t>(rows.size());
      const int r = m->rank_rows(rows);
      if (d > 0 && r == static_cast<int>(d)) return true;  // independent: not cyclic
      if (d < n && r == full) return true;                 // spans rank: not flat
      bool cyclic = true;
      if (d > 0) {
        for_each_hyperplane(ops, rows, [&](std::span<const uint64_t> h, uint64_t) {
          cyclic = m->rank_rows(h) == r;
          return cyclic;
        });
      }
      if (!cyclic) return true;
      uint64_t pmask = 0;
      for (uint64_t row : rows) pmask |= uint64_t(1) << ops.lead(row);
      if (is_flat_rows(*m, rows, pmask, r)) {
        found.push_back({Subspace::from_rref(ops, std::vector<uint64_t>(rows.begin(), rows.end())), r});
      }
      return true;
    });
    return found;
  });
  std::vector<FamilyMember> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return make_family(m->q(), n, std::move(all), m);
}

inline CyclicFlatFamily compute_zflats(const Oracle& m, uint32_t shards = 1) {
  Budget b;
  return compute_zflats(m, shards, b);
}

/// min over Z of rank(Z) + dim((V+Z)/Z).
inline int rank_via_family(const CyclicFlatFamily& fam, const Subspace& v) {
  int best = std::numeric_limits<int>::max();
  for (const auto& z : fam.members) {
    best = std::min(best, z.rank + static_cast<int>(sum(v, z.space).dim() - z.space.dim()));
  }
  return best;
}

/// V is independent iff dim(V cap Z) <= rank(Z) for every member Z.
inline bool independent_via_family(const CyclicFlatFamily& fam, const Subspace& v) {
  for (const auto& z : fam.members) {
    if (static_cast<int>(intersect(v, z.space).dim()) > z.rank) return false;
  }
  return true;
}

inline void require_source(const CyclicFlatFamily& fam) {
  if (!fam.source) throw Error(ErrorCode::kNotComputedFromOracle, "family carries no source oracle");
}

inline void require_member_index(const CyclicFlatFamily& fam, size_t i) {
  if (i >= fam.size()) throw Error(ErrorCode::kNotAMember, "member index " + std::to_string(i) + " out of range");
}

/// cyc(Z_i cap Z_j)
inline size_t meet(const CyclicFlatFamily& fam, size_t i, size_t j) {
  require_source(fam);
  require_member_index(fam, i);
  require_member_index(fam, j);
  const Subspace z = cyclic_core(*fam.source, intersect(fam.members[i].space, fam.members[j].space));
  const size_t k = fam.index_of(z);
  if (k == kNoMember) throw Error(ErrorCode::kNotAMember, "meet is not a member; the family is not Z(M)");
  return k;
}

/// cl(Z_i + Z_j)
inline size_t join(const CyclicFlatFamily& fam, size_t i, size_t j) {
  require_source(fam);
  require_member_index(fam, i);
  require_member_index(fam, j);
  const Subspace z = closure(*fam.source, sum(fam.members[i].space, fam.members[j].space));
  const size_t k = fam.index_of(z);
  if (k == kNoMember) throw Error(ErrorCode::kNotAMember, "join is not a member; the family is not Z(M)");
  return k;
}

/// Coordinates of v in the canonical basis of z (v must lie in z).
inline uint64_t coordinates_in(const Subspace& z, uint64_t v, const VecOps& target) {
  uint64_t a = 0;
  for (uint32_t i = 0; i < z.dim(); ++i) {
    const uint32_t c = z.ops().get(v, z.ops().lead(z.rows()[i]));
    if (c) a = target.set(a, i, c);
  }
  return a;
}

inline Subspace to_coordinates(const Subspace& z, const Subspace& v) {
  const VecOps target(z.q(), z.dim());
  std::vector<uint64_t> rows;
  for (uint64_t r : v.rows()) rows.push_back(coordinates_in(z, r, target));
  return Subspace::from_packed(target, rows);
}

/// Z(M|Zhat): the members below Zhat in the coordinates of Zhat's canonical
/// basis.
inline CyclicFlatFamily restrict_family(const CyclicFlatFamily& fam, size_t hat) {
  require_member_index(fam, hat);
  const Subspace& top = fam.members[hat].space;
  std::vector<FamilyMember> below;
  for (const auto& m : fam.members) {
    if (top.contains(m.space)) below.push_back({to_coordinates(top, m.space), m.rank});
  }
  Oracle src = fam.source ? restriction(fam.source, top) : nullptr;
  return make_family(fam.q, top.dim(), std::move(below), src);
}

inline CyclicFlatFamily restrict_family(const CyclicFlatFamily& fam, const Subspace& hat) {
  const size_t i = fam.index_of(hat);
  if (i == kNoMember) throw Error(ErrorCode::kNotAMember, "restriction target is not a member");
  return restrict_family(fam, i);
}

// ---------------------------------------------------------------------------

enum class ValidationLevel { kStructural, kFull };

struct ValidationIssue {
  std::string check;
  std::string detail;
  std::vector<Subspace> witnesses;
};

struct ValidationReport {
  bool passed = true;
  std::vector<std::string> checks_run;
  std::vector<std::string> checks_skipped;
  std::vector<ValidationIssue> issues;

  void fail(std::string check, std::string detail, std::vector<Subspace> w = {}) {
    passed = false;
    issues.push_back({std::move(check), std::move(detail), std::move(w)});
  }
};

/// Structural checks run on the family alone and on the oracle it induces
/// through the rank formula. The full level adds the axiom checker (only
/// where the pair count is small) and a recomputation of Z from that oracle.
inline ValidationReport validate_family(uint32_t q, uint32_t n, std::vector<FamilyMember> proposed,
                                        ValidationLevel level, Budget& budget, uint32_t shards = 1) {
  ValidationReport rep;
  rep.checks_run.push_back("nonempty");
  if (proposed.empty()) {
    rep.fail("nonempty", "family has no members");
    return rep;
  }
  rep.checks_run.push_back("ground");
  for (const auto& m : proposed) {
    if (m.space.q() != q || m.space.n() != n) {
      rep.fail("ground", "member outside GF(q)^n", {m.space});
      return rep;
    }
  }
  const CyclicFlatFamily fam = make_family(q, n, proposed);
  const auto& ms = fam.members;
  rep.checks_run.push_back("distinct");
  for (size_t i = 1; i < ms.size(); ++i) {
    if (ms[i - 1].space == ms[i].space) rep.fail("distinct", "duplicate member", {ms[i].space});
  }
  rep.checks_run.push_back("rank-range");
  for (const auto& m : ms) {
    if (m.rank < 0 || m.rank > static_cast<int>(m.space.dim())) {
      rep.fail("rank-range", "rank " + std::to_string(m.rank) + " outside [0, dim]", {m.space});
    }
  }
  rep.checks_run.push_back("least");
  if (fam.least == kNoMember) {
    rep.fail("least", "no member lies below all others");
  } else if (ms[fam.least].rank != 0) {
    rep.fail("least", "least member must have rank 0", {ms[fam.least].space});
  }
  rep.checks_run.push_back("greatest");
  if (fam.greatest == kNoMember) rep.fail("greatest", "no member lies above all others");
  rep.checks_run.push_back("strict-monotonicity");
  for (size_t i = 0; i < ms.size(); ++i) {
    for (size_t j = 0; j < ms.size(); ++j) {
      if (i == j || !ms[j].space.contains(ms[i].space) || ms[i].space == ms[j].space) continue;
      const int dr = ms[j].rank - ms[i].rank;
      const int dd = static_cast<int>(ms[j].space.dim()) - static_cast<int>(ms[i].space.dim());
      if (!(0 < dr && dr < dd)) {
        rep.fail("strict-monotonicity", "need 0 < rank gap < dim gap", {ms[i].space, ms[j].space});
      }
    }
  }
  if (!rep.passed) return rep;

  Oracle induced;
  try {
    induced = from_cyclic_flats(q, n, fam.members);
  } catch (const Error& e) {
    rep.fail("rank-formula", e.what());
    return rep;
  }
  rep.checks_run.push_back("rank-formula");

  rep.checks_run.push_back("greatest-rank");
  {
    const auto& top = ms[fam.greatest];
    const int expect = induced->rank_full() - static_cast<int>(n - top.space.dim());
    if (top.rank != expect) rep.fail("greatest-rank", "rank of the greatest member is not rank(E) - codim", {top.space});
  }

  rep.checks_run.push_back("lattice-closure");
  rep.checks_run.push_back("meet-join-inequality");
  for (size_t i = 0; i < ms.size(); ++i) {
    for (size_t j = i + 1; j < ms.size(); ++j) {
      budget.tick();
      const Subspace cap = intersect(ms[i].space, ms[j].space);
      const Subspace mt = cyclic_core(*induced, cap);
      const Subspace jn = closure(*induced, sum(ms[i].space, ms[j].space));
      const size_t a = fam.index_of(mt), b = fam.index_of(jn);
      if (a == kNoMember) rep.fail("lattice-closure", "cyc of an intersection is not a member", {ms[i].space, ms[j].space});
      if (b == kNoMember) rep.fail("lattice-closure", "cl of a sum is not a member", {ms[i].space, ms[j].space});
      if (a == kNoMember || b == kNoMember) continue;
      const int lhs = ms[i].rank + ms[j].rank;
      const int rhs = ms[b].rank + ms[a].rank + static_cast<int>(cap.dim() - mt.dim());
      if (lhs < rhs) rep.fail("meet-join-inequality", "rank(Z1)+rank(Z2) below join+meet+gap", {ms[i].space, ms[j].space});
    }
  }
  if (level == ValidationLevel::kStructural) return rep;

  const uint64_t total = subspace_count(q, n);
  if (total <= 1000) {
    rep.checks_run.push_back("axioms");
    const AxiomReport ax = axiom_check(*induced, AxiomMode::kExhaustive, budget);
    if (!ax.passed) {
      rep.fail("axioms", ax.violation->axiom + ": " + ax.violation->detail, ax.violation->witnesses);
    }
  } else {
    rep.checks_skipped.push_back("axioms");
  }
  rep.checks_run.push_back("family-recovery");
  const CyclicFlatFamily again = compute_zflats(induced, shards, budget);
  bool same = again.size() == ms.size();
  for (size_t i = 0; same && i < ms.size(); ++i) {
    same = again.members[i].space == ms[i].space && again.members[i].rank == ms[i].rank;
  }
  if (!same) rep.fail("family-recovery", "Z of the induced q-matroid differs from the proposed family");
  return rep;
}

inline ValidationReport validate_family(uint32_t q, uint32_t n, std::vector<FamilyMember> proposed,
                                        ValidationLevel level = ValidationLevel::kStructural) {
  Budget b;
  return validate_family(q, n, std::move(proposed), level, b);
}

/// DOT digraph, one node per member labelled dim/rank, one edge per cover.
inline std::string export_hasse(const CyclicFlatFamily& fam) {
  std::ostringstream out;
  out << "digraph zflats {\n  rankdir=BT;\n";
  for (size_t i = 0; i < fam.size(); ++i) {
    out << "  z" << i << " [label=\"" << fam.members[i].space.dim() << "/" << fam.members[i].rank << "\"];\n";
  }
  for (const auto& [a, b] : fam.cover_edges) out << "  z" << a << " -> z" << b << ";\n";
  out << "}\n";
  return out.str();
}

inline json family_json(const CyclicFlatFamily& fam) {
  const VecOps ops(fam.q, fam.n);
  json members = json::array();
  for (const auto& m : fam.members) {
    members.push_back(json{{"rows", rows_json(ops, m.space.rows())}, {"rank", m.rank}});
  }
  json edges = json::array();
  for (const auto& [a, b] : fam.cover_edges) edges.push_back(json::array({a, b}));
  json out{{"q", fam.q}, {"n", fam.n}, {"members", members}, {"cover_edges", edges}};
  if (fam.least != kNoMember) out["least"] = fam.least;
  if (fam.greatest != kNoMember) out["greatest"] = fam.greatest;
  return out;
}

/// (dim, rank) of every member, sorted.
inline std::vector<std::pair<uint32_t, int>> family_profile(const CyclicFlatFamily& fam) {
  std::vector<std::pair<uint32_t, int>> out;
  for (const auto& m : fam.members) out.emplace_back(m.space.dim(), m.rank);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qmat
