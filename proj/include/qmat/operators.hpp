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

// Operators derived from a rank function: closure, cyclic core, the
// flat/cyclic/circuit predicates, and the axiom checker.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qmat/budget.hpp"
#include "qmat/oracle.hpp"
#include "qmat/subspace.hpp"

namespace qmat {

/// Closure: V plus every x whose line leaves the rank unchanged. One x per
/// cover suffices since V + <x + v> = V + <x> for v in V.
inline Subspace closure(const RankOracle& m, const Subspace& v) {
  const int r = m.rank(v);
  const uint32_t d = v.dim();
  if (d == m.n()) return v;
  std::array<uint64_t, 64> buf{};
  std::copy(v.rows().begin(), v.rows().end(), buf.begin());
  std::vector<uint64_t> gen = v.rows();
  for_each_cover(m.ops(), v.pivot_mask(), [&](uint64_t x) {
    buf[d] = x;
    if (m.rank_rows(std::span<const uint64_t>(buf.data(), d + 1)) == r) gen.push_back(x);
    return true;
  });
  return Subspace::from_packed(m.ops(), gen);
}

/// Maps coordinates a in GF(q)^d to sum a_i basis_i.
inline Subspace from_coordinates(const VecOps& ops, std::span<const uint64_t> basis, const Subspace& coords) {
  std::vector<uint64_t> rows;
  for (uint64_t a : coords.rows()) {
    uint64_t v = 0;
    for (uint32_t i = 0; i < basis.size(); ++i) {
      const uint32_t c = coords.ops().get(a, i);
      if (c) v = ops.axpy(v, c, basis[i]);
    }
    rows.push_back(v);
  }
  return Subspace::from_packed(ops, rows);
}

/// Cyclic core: the vectors of V lying in every hyperplane of lower rank.
/// Computed in V-coordinates as the common kernel of the offending
/// functionals.
inline Subspace cyclic_core(const RankOracle& m, const Subspace& v) {
  const uint32_t d = v.dim();
  if (d == 0) return v;
  const int r = m.rank(v);
  const VecOps coords(m.q(), d);
  std::vector<uint64_t> bad;
  for_each_hyperplane(m.ops(), v.rows(), [&](std::span<const uint64_t> h, uint64_t c) {
    if (m.rank_rows(h) < r) bad.push_back(c);
    return true;
  });
  if (bad.empty()) return v;
  const Subspace kernel = orthogonal(Subspace::from_packed(coords, bad));
  return from_coordinates(m.ops(), v.rows(), kernel);
}

struct Predicates {
  int rank = 0;
  bool independent = false;
  bool dependent = false;
  bool flat = false;
  bool cyclic = false;
  bool circuit = false;
  bool basis = false;
};

/// Flat test on independent rows spanning V with canonical pivot mask.
inline bool is_flat_rows(const RankOracle& m, std::span<const uint64_t> rows, uint64_t pivot_mask, int r) {
  const uint32_t d = static_cast<uint32_t>(rows.size());
  if (d == m.n()) return true;
  // Full rank and proper: any extension keeps the rank.
  if (r == m.rank_full()) return false;
  std::array<uint64_t, 64> buf{};
  std::copy(rows.begin(), rows.end(), buf.begin());
  bool flat = true;
  for_each_cover(m.ops(), pivot_mask, [&](uint64_t x) {
    buf[d] = x;
    if (m.rank_rows(std::span<const uint64_t>(buf.data(), d + 1)) <= r) flat = false;
    return flat;
  });
  return flat;
}

/// All six predicates for the canonical rows of V, with rank(V) computed once
/// and one hyperplane scan shared by the cyclic and circuit tests.
///
/// Circuits only need codimension-1 checks: independence is inherited by
/// subspaces, so if every hyperplane of V is independent then so is every
/// proper subspace.
inline Predicates classify_rows(const RankOracle& m, std::span<const uint64_t> rows, uint64_t pivot_mask, int full_rank) {
  Predicates p;
  const int d = static_cast<int>(rows.size());
  p.rank = m.rank_rows(rows);
  p.independent = p.rank == d;
  p.dependent = !p.independent;
  p.basis = p.independent && d == full_rank;
  if (d == 0) {
    p.cyclic = true;
  } else if (p.dependent) {
    // An independent V of positive dimension has hyperplanes of rank d-1 < d,
    // so only dependent spaces can be cyclic or circuits.
    bool cyclic = true, circuit = true;
    for_each_hyperplane(m.ops(), rows, [&](std::span<const uint64_t> h, uint64_t) {
      const int rh = m.rank_rows(h);
      if (rh != p.rank) cyclic = false;
      if (rh != d - 1) circuit = false;
      return cyclic || circuit;
    });
    p.cyclic = cyclic;
    p.circuit = circuit;
  }
  if (d == static_cast<int>(m.n())) {
    p.flat = true;
  } else if (p.rank == full_rank) {
    p.flat = false;
  } else {
    p.flat = is_flat_rows(m, rows, pivot_mask, p.rank);
  }
  return p;
}

inline Predicates predicates(const RankOracle& m, const Subspace& v) {
  return classify_rows(m, v.rows(), v.pivot_mask(), m.rank_full());
}

inline bool is_flat(const RankOracle& m, const Subspace& v) {
  return is_flat_rows(m, v.rows(), v.pivot_mask(), m.rank(v));
}

inline bool is_cyclic(const RankOracle& m, const Subspace& v) {
  if (v.dim() == 0) return true;
  const int r = m.rank(v);
  bool ok = true;
  for_each_hyperplane(m.ops(), v.rows(), [&](std::span<const uint64_t> h, uint64_t) {
    ok = m.rank_rows(h) == r;
    return ok;
  });
  return ok;
}

inline bool is_independent(const RankOracle& m, const Subspace& v) {
  return m.rank(v) == static_cast<int>(v.dim());
}

inline Subspace loop_space(const RankOracle& m) { return closure(m, Subspace::zero(m.q(), m.n())); }
inline Subspace cyc_top(const RankOracle& m) { return cyclic_core(m, Subspace::full(m.q(), m.n())); }
inline bool is_full(const RankOracle& m) { return loop_space(m).is_zero() && cyc_top(m).is_full(); }

// ---------------------------------------------------------------------------
// Sampling

/// Deterministic uniform integer in [0, bound) from raw 64-bit draws.
inline uint64_t draw_below(std::mt19937_64& rng, uint64_t bound) { return bound <= 1 ? 0 : rng() % bound; }

/// A uniformly random subspace of GF(q)^n: the dimension is drawn with
/// weight [n,k]_q, then a random full-rank k x n matrix is drawn.
inline Subspace random_subspace(const VecOps& ops, std::mt19937_64& rng) {
  const uint32_t n = ops.n();
  std::vector<double> logw(n + 1);
  double top = -1e300;
  for (uint32_t k = 0; k <= n; ++k) {
    // log [n,k]_q = sum_{i<k} log((q^(n-i) - 1) / (q^(i+1) - 1))
    double l = 0;
    for (uint32_t i = 0; i < k; ++i) {
      l += std::log(std::pow(double(ops.q()), double(n - i)) - 1) - std::log(std::pow(double(ops.q()), double(i + 1)) - 1);
    }
    logw[k] = l;
    top = std::max(top, l);
  }
  std::vector<double> w(n + 1);
  double total = 0;
  for (uint32_t k = 0; k <= n; ++k) total += (w[k] = std::exp(logw[k] - top));
  const double u = double(rng() >> 11) * (1.0 / 9007199254740992.0) * total;
  uint32_t k = 0;
  for (double acc = w[0]; k < n && u >= acc; acc += w[++k]) {
  }
  Reducer red(ops);
  std::vector<uint64_t> rows;
  const uint64_t mask = ops.coord_mask();
  while (rows.size() < k) {
    uint64_t v = 0;
    if (ops.binary()) {
      v = rng() & mask;
    } else {
      for (uint32_t i = 0; i < n; ++i) v = ops.set(v, i, static_cast<uint32_t>(draw_below(rng, ops.q())));
    }
    if (red.insert(v)) rows.push_back(v);
  }
  return Subspace::from_packed(ops, rows);
}

// ---------------------------------------------------------------------------
// Axiom check

enum class AxiomMode { kExhaustive, kSampled };

struct AxiomViolation {
  std::string axiom;  // "R1", "R2" or "R3"
  std::vector<Subspace> witnesses;
  std::string detail;
};

struct AxiomReport {
  bool passed = true;
  AxiomMode mode = AxiomMode::kExhaustive;
  uint64_t subspaces_checked = 0;
  uint64_t covers_checked = 0;
  uint64_t pairs_checked = 0;
  std::optional<AxiomViolation> violation;
};

namespace detail {

inline bool check_r1_r2(const RankOracle& m, const Subspace& v, int r, AxiomReport& rep) {
  if (r < 0 || r > static_cast<int>(v.dim())) {
    rep.violation = AxiomViolation{"R1", {v}, "rank " + std::to_string(r) + " outside [0, " + std::to_string(v.dim()) + "]"};
    return false;
  }
  if (v.dim() == m.n()) return true;
  std::array<uint64_t, 64> buf{};
  std::copy(v.rows().begin(), v.rows().end(), buf.begin());
  bool ok = true;
  for_each_cover(m.ops(), v.pivot_mask(), [&](uint64_t x) {
    ++rep.covers_checked;
    buf[v.dim()] = x;
    const int rc = m.rank_rows(std::span<const uint64_t>(buf.data(), v.dim() + 1));
    if (rc < r) {
      Subspace cover = Subspace::from_packed(m.ops(), std::span<const uint64_t>(buf.data(), v.dim() + 1));
      rep.violation = AxiomViolation{"R2", {v, cover}, "rank drops from " + std::to_string(r) + " to " + std::to_string(rc)};
      ok = false;
    }
    return ok;
  });
  return ok;
}

inline bool check_r3(const Subspace& a, const Subspace& b, int ra, int rb, int rs, int ri, AxiomReport& rep) {
  if (rs + ri > ra + rb) {
    rep.violation = AxiomViolation{"R3", {a, b},
                                   "rank(U+V)+rank(U^V)=" + std::to_string(rs + ri) + " > " + std::to_string(ra + rb)};
    return false;
  }
  return true;
}

}  // namespace detail

/// Exhaustive mode checks R1 and R2 (on covers, which suffices for
/// monotonicity) for every subspace and R3 for every unordered pair.
/// Sampled mode draws `samples` subspaces and `samples` pairs from `seed`.
inline AxiomReport axiom_check(const RankOracle& m, AxiomMode mode, Budget& budget, uint64_t seed = 0,
                               uint64_t samples = 2000) {
  AxiomReport rep;
  rep.mode = mode;
  const VecOps& ops = m.ops();
  if (mode == AxiomMode::kExhaustive) {
    std::vector<Subspace> all = enumerate_subspaces(m.q(), m.n());
    std::unordered_map<Subspace, int, SubspaceHash> ranks;
    ranks.reserve(all.size());
    for (const auto& v : all) {
      budget.tick();
      const int r = m.rank_rows(v.rows());
      ranks.emplace(v, r);
      ++rep.subspaces_checked;
      if (!detail::check_r1_r2(m, v, r, rep)) {
        rep.passed = false;
        return rep;
      }
    }
    for (size_t i = 0; i < all.size(); ++i) {
      for (size_t j = i + 1; j < all.size(); ++j) {
        budget.tick();
        ++rep.pairs_checked;
        const Subspace s = sum(all[i], all[j]);
        const Subspace t = intersect(all[i], all[j]);
        if (!detail::check_r3(all[i], all[j], ranks.at(all[i]), ranks.at(all[j]), ranks.at(s), ranks.at(t), rep)) {
          rep.passed = false;
          return rep;
        }
      }
    }
    return rep;
  }
  std::mt19937_64 rng(seed);
  {
    const Subspace zero(m.q(), m.n());
    const int r0 = m.rank_rows(zero.rows());
    ++rep.subspaces_checked;
    if (!detail::check_r1_r2(m, zero, r0, rep)) {
      rep.passed = false;
      return rep;
    }
  }
  for (uint64_t s = 0; s < samples; ++s) {
    budget.tick();
    const Subspace v = random_subspace(ops, rng);
    ++rep.subspaces_checked;
    if (!detail::check_r1_r2(m, v, m.rank_rows(v.rows()), rep)) {
      rep.passed = false;
      return rep;
    }
  }
  for (uint64_t s = 0; s < samples; ++s) {
    budget.tick();
    const Subspace a = random_subspace(ops, rng);
    const Subspace b = random_subspace(ops, rng);
    ++rep.pairs_checked;
    const int ra = m.rank_rows(a.rows()), rb = m.rank_rows(b.rows());
    const Subspace su = sum(a, b), in = intersect(a, b);
    if (!detail::check_r3(a, b, ra, rb, m.rank_rows(su.rows()), m.rank_rows(in.rows()), rep)) {
      rep.passed = false;
      return rep;
    }
  }
  return rep;
}

inline AxiomReport axiom_check(const RankOracle& m, AxiomMode mode = AxiomMode::kExhaustive) {
  Budget b;
  return axiom_check(m, mode, b);
}

// ---------------------------------------------------------------------------
// Linear maps

/// alpha as an n x n matrix of entries in GF(q); returns its columns packed.
inline std::vector<uint64_t> matrix_columns(const VecOps& ops, const std::vector<std::vector<uint32_t>>& alpha) {
  const uint32_t n = ops.n();
  if (alpha.size() != n) throw Error(ErrorCode::kDimensionMismatch, "alpha must be n x n");
  std::vector<uint64_t> cols(n, 0);
  for (uint32_t i = 0; i < n; ++i) {
    if (alpha[i].size() != n) throw Error(ErrorCode::kDimensionMismatch, "alpha must be n x n");
    for (uint32_t j = 0; j < n; ++j) {
      if (alpha[i][j] >= ops.q()) throw Error(ErrorCode::kInvalidInput, "alpha entry out of range");
      if (alpha[i][j]) cols[j] = ops.set(cols[j], i, alpha[i][j]);
    }
  }
  return cols;
}

inline std::vector<std::vector<uint32_t>> columns_to_matrix(const VecOps& ops, const std::vector<uint64_t>& cols) {
  const uint32_t n = ops.n();
  std::vector<std::vector<uint32_t>> alpha(n, std::vector<uint32_t>(n, 0));
  for (uint32_t j = 0; j < n; ++j) {
    for (uint32_t i = 0; i < n; ++i) alpha[i][j] = ops.get(cols[j], i);
  }
  return alpha;
}

inline uint64_t apply_columns(const VecOps& ops, const std::vector<uint64_t>& cols, uint64_t v) {
  uint64_t out = 0;
  for (uint32_t i = 0; i < ops.n(); ++i) {
    const uint32_t c = ops.get(v, i);
    if (c) out = ops.axpy(out, c, cols[i]);
  }
  return out;
}

/// True iff rank2(alpha V) = rank1(V) for every V. Stops at the first
/// mismatch.
inline bool equivalent_under_columns(const RankOracle& m1, const RankOracle& m2, const std::vector<uint64_t>& cols,
                                     Budget& budget) {
  if (m1.q() != m2.q() || m1.n() != m2.n()) return false;
  const VecOps& ops = m1.ops();
  Reducer red(ops);
  for (uint64_t c : cols) {
    if (!red.insert(c)) throw Error(ErrorCode::kSingularAlpha, "alpha is not invertible");
  }
  if (m1.rank_full() != m2.rank_full()) return false;
  bool ok = true;
  std::array<uint64_t, 64> img{};
  for_each_subspace(ops, 0, ops.n(), 0, 1, [&](std::span<const uint64_t> rows) {
    budget.tick();
    for (size_t i = 0; i < rows.size(); ++i) img[i] = apply_columns(ops, cols, rows[i]);
    ok = m1.rank_rows(rows) == m2.rank_rows(std::span<const uint64_t>(img.data(), rows.size()));
    return ok;
  });
  return ok;
}

inline bool equivalent_under(const RankOracle& m1, const RankOracle& m2, const std::vector<std::vector<uint32_t>>& alpha) {
  if (m1.q() != m2.q() || m1.n() != m2.n()) throw Error(ErrorCode::kGroundMismatch, "different ground spaces");
  Budget b;
  return equivalent_under_columns(m1, m2, matrix_columns(m1.ops(), alpha), b);
}

/// Outcome of a rank comparison between two oracles on one ground space.
struct CheckReport {
  bool passed = true;
  bool exhaustive = true;
  uint64_t checked = 0;
  std::string detail;
  std::vector<Subspace> witnesses;
};

/// Compares ranks on every subspace, or on `samples` random subspaces plus 0
/// and E when exhaustive is false. Stops at the first mismatch.
inline CheckReport compare_ranks(const RankOracle& a, const RankOracle& b, bool exhaustive, Budget& budget,
                                 uint64_t seed = 0, uint64_t samples = 10000) {
  if (a.q() != b.q() || a.n() != b.n()) throw Error(ErrorCode::kGroundMismatch, "different ground spaces");
  CheckReport rep;
  rep.exhaustive = exhaustive;
  auto test = [&](std::span<const uint64_t> rows) {
    budget.tick();
    ++rep.checked;
    const int ra = a.rank_rows(rows), rb = b.rank_rows(rows);
    if (ra == rb) return true;
    rep.passed = false;
    rep.witnesses.push_back(Subspace::from_packed(a.ops(), rows));
    rep.detail = "ranks " + std::to_string(ra) + " and " + std::to_string(rb) + " differ";
    return false;
  };
  if (exhaustive) {
    for_each_subspace(a.ops(), 0, a.n(), 0, 1, test);
    return rep;
  }
  if (!test(Subspace::zero(a.q(), a.n()).rows()) || !test(Subspace::full(a.q(), a.n()).rows())) return rep;
  std::mt19937_64 rng(seed);
  for (uint64_t i = 0; i < samples; ++i) {
    if (!test(random_subspace(a.ops(), rng).rows())) return rep;
  }
  return rep;
}

inline std::vector<std::vector<uint32_t>> identity_matrix(uint32_t n) {
  std::vector<std::vector<uint32_t>> id(n, std::vector<uint32_t>(n, 0));
  for (uint32_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

}  // namespace qmat
