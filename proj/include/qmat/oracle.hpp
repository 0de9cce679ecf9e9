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

// Rank oracles. A q-matroid is a rank function on the subspace lattice of
// GF(q)^n; every constructor below produces one.
//
// The hot entry point is rank_rows(), which takes any linearly independent
// spanning set and never touches the cache. rank() takes a canonical Subspace
// and goes through the per-oracle memo table.

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qmat/error.hpp"
#include "qmat/field.hpp"
#include "qmat/subspace.hpp"

namespace qmat {

using json = nlohmann::json;

/// Process-wide switch consulted by RankOracle::rank().
inline std::atomic<bool>& cache_enabled_globally() {
  static std::atomic<bool> enabled{true};
  return enabled;
}

class RankOracle {
 public:
  RankOracle(uint32_t q, uint32_t n) : ops_(q, n) {}
  virtual ~RankOracle() = default;
  RankOracle(const RankOracle&) = delete;
  RankOracle& operator=(const RankOracle&) = delete;

  uint32_t q() const { return ops_.q(); }
  uint32_t n() const { return ops_.n(); }
  const VecOps& ops() const { return ops_; }

  virtual std::string kind() const = 0;

  /// rows must be linearly independent; they need not be canonical.
  virtual int rank_rows(std::span<const uint64_t> rows) const = 0;

  virtual json to_spec() const = 0;

  int rank(const Subspace& v) const {
    if (v.q() != q() || v.n() != n()) {
      throw Error(ErrorCode::kDimensionMismatch, "subspace does not live in the ground space");
    }
    const bool use_cache = cache_on_ && cache_enabled_globally().load(std::memory_order_relaxed);
    if (use_cache) {
      std::shared_lock lock(cache_mu_);
      auto it = cache_.find(v);
      if (it != cache_.end()) return it->second;
    }
    const int r = rank_rows(v.rows());
    if (use_cache) {
      std::unique_lock lock(cache_mu_);
      if (cache_.size() < cache_cap_) cache_[v] = r;
    }
    return r;
  }

  int rank_full() const {
    int r = full_rank_.load(std::memory_order_acquire);
    if (r < 0) {
      r = rank_rows(Subspace::full(q(), n()).rows());
      full_rank_.store(r, std::memory_order_release);
    }
    return r;
  }

  void set_cache(bool on, size_t cap = size_t(1) << 20) const {
    std::unique_lock lock(cache_mu_);
    cache_on_ = on;
    cache_cap_ = cap;
    if (!on) cache_.clear();
  }

  size_t cache_size() const {
    std::shared_lock lock(cache_mu_);
    return cache_.size();
  }

 protected:
  VecOps ops_;

 private:
  mutable std::atomic<int> full_rank_{-1};
  mutable std::shared_mutex cache_mu_;
  mutable std::unordered_map<Subspace, int, SubspaceHash> cache_;
  mutable bool cache_on_ = true;
  mutable size_t cache_cap_ = size_t(1) << 20;
};

using Oracle = std::shared_ptr<const RankOracle>;

inline json rows_json(const VecOps& ops, std::span<const uint64_t> rows) {
  json out = json::array();
  for (uint64_t r : rows) out.push_back(ops.to_entries(r));
  return out;
}

inline json field_json(const Field& f) {
  return json{{"p", f.p()}, {"m", f.m()}, {"modulus", f.modulus()}};
}

// ---------------------------------------------------------------------------

class UniformOracle : public RankOracle {
 public:
  UniformOracle(uint32_t q, uint32_t n, uint32_t k) : RankOracle(q, n), k_(k) {
    if (k > n) throw Error(ErrorCode::kKOutOfRange, "k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  }
  uint32_t k() const { return k_; }
  std::string kind() const override { return "uniform"; }
  int rank_rows(std::span<const uint64_t> rows) const override {
    return static_cast<int>(std::min<size_t>(k_, rows.size()));
  }
  json to_spec() const override { return json{{"kind", "uniform"}, {"q", q()}, {"n", n()}, {"k", k_}}; }

 private:
  uint32_t k_;
};

inline Oracle uniform(uint32_t q, uint32_t n, uint32_t k) { return std::make_shared<UniformOracle>(q, n, k); }

// ---------------------------------------------------------------------------

using Matrix = std::vector<std::vector<FieldElement>>;

/// Rank over GF(q^m) of a matrix given as rows of field elements.
inline int matrix_rank(const Field& f, Matrix rows) {
  int rank = 0;
  const size_t cols = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].value == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const FieldElement inv = f.inv(rows[rank][c]);
    for (size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].value == 0) continue;
      const FieldElement factor = f.mul(rows[r][c], inv);
      for (size_t j = c; j < cols; ++j) rows[r][j] = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

/// diag(A, B); the widths are passed so that empty blocks keep their columns.
inline Matrix block_diagonal(const Field& f, const Matrix& a, const Matrix& b, size_t na, size_t nb) {
  Matrix out;
  for (const auto& r : a) {
    auto row = r;
    row.resize(na + nb, f.zero());
    out.push_back(std::move(row));
  }
  for (const auto& r : b) {
    std::vector<FieldElement> row(na, f.zero());
    row.insert(row.end(), r.begin(), r.end());
    out.push_back(std::move(row));
  }
  return out;
}

/// rho(rs(Y)) = rk(G Y^T) for G over an extension of the prime ground field.
class RepresentableOracle : public RankOracle {
 public:
  /// n_hint is only consulted when G has no rows.
  RepresentableOracle(FieldPtr ext, uint32_t q, Matrix g, uint32_t n_hint = 0)
      : RankOracle(q, g.empty() ? n_hint : static_cast<uint32_t>(g[0].size())), ext_(std::move(ext)), g_(std::move(g)) {
    if (ext_->p() != q) {
      throw Error(ErrorCode::kFieldMismatch, "ground field GF(" + std::to_string(q) +
                                                 ") is not the prime subfield of GF(" + std::to_string(ext_->order()) + ")");
    }
    for (const auto& row : g_) {
      if (row.size() != n()) throw Error(ErrorCode::kDimensionMismatch, "G rows have different lengths");
      for (auto e : row) {
        if (!ext_->valid(e)) throw Error(ErrorCode::kInvalidInput, "G entry outside the field");
      }
    }
    if (matrix_rank(*ext_, g_) != static_cast<int>(g_.size())) {
      throw Error(ErrorCode::kRankDeficientG, "G does not have full row rank over GF(" + std::to_string(ext_->order()) + ")");
    }
    uint64_t vectors = 1;
    for (uint32_t i = 0; i < n() && vectors <= (1u << 16); ++i) vectors *= q;
    if (vectors <= (1u << 16)) {
      images_.resize(vectors * k());
      for (uint64_t idx = 0; idx < vectors; ++idx) {
        const auto img = image(ops_.from_index(idx));
        std::copy(img.begin(), img.end(), images_.begin() + idx * k());
      }
    }
  }

  uint32_t k() const { return static_cast<uint32_t>(g_.size()); }
  const Field& ext() const { return *ext_; }
  FieldPtr ext_ptr() const { return ext_; }
  const Matrix& g() const { return g_; }
  std::string kind() const override { return "representable"; }

  /// G y^T for a packed vector y.
  std::vector<FieldElement> image(uint64_t y) const {
    std::vector<FieldElement> out(k(), ext_->zero());
    for (uint32_t j = 0; j < n(); ++j) {
      const uint32_t c = ops_.get(y, j);
      if (!c) continue;
      for (uint32_t r = 0; r < k(); ++r) out[r] = ext_->add(out[r], ext_->mul(FieldElement{c}, g_[r][j]));
    }
    return out;
  }

  int rank_rows(std::span<const uint64_t> rows) const override {
    if (rows.empty() || k() == 0) return 0;
    if (k() <= kFast && !images_.empty()) return rank_fast(rows);
    Matrix m;
    m.reserve(rows.size());
    for (uint64_t y : rows) {
      if (!images_.empty()) {
        const auto base = images_.begin() + ops_.index_of(y) * k();
        m.emplace_back(base, base + k());
      } else {
        m.push_back(image(y));
      }
    }
    return matrix_rank(*ext_, std::move(m));
  }

  json to_spec() const override {
    json g = json::array();
    for (const auto& row : g_) {
      json r = json::array();
      for (auto e : row) r.push_back(ext_->to_power_string(e));
      g.push_back(r);
    }
    json out{{"kind", "representable"}, {"q", q()}, {"ext", field_json(*ext_)}, {"G", g}};
    if (g_.empty()) out["n"] = n();
    return out;
  }

 private:
  static constexpr uint32_t kFast = 32;

  // Incremental echelon form on the images; no allocation.
  int rank_fast(std::span<const uint64_t> rows) const {
    const uint32_t k = this->k();
    std::array<std::array<FieldElement, kFast>, kFast> basis;
    std::array<uint32_t, kFast> pivot{};
    int count = 0;
    for (uint64_t y : rows) {
      std::array<FieldElement, kFast> v;
      const auto base = images_.begin() + ops_.index_of(y) * k;
      std::copy(base, base + k, v.begin());
      for (int b = 0; b < count; ++b) {
        const FieldElement c = v[pivot[b]];
        if (!c.value) continue;
        for (uint32_t j = 0; j < k; ++j) {
          if (basis[b][j].value) v[j] = ext_->sub(v[j], ext_->mul(c, basis[b][j]));
        }
      }
      uint32_t lead = 0;
      while (lead < k && !v[lead].value) ++lead;
      if (lead == k) continue;
      const FieldElement inv = ext_->inv(v[lead]);
      for (uint32_t j = 0; j < k; ++j) basis[count][j] = ext_->mul(inv, v[j]);
      pivot[count++] = lead;
      if (count == static_cast<int>(k)) break;
    }
    return count;
  }

  FieldPtr ext_;
  Matrix g_;
  std::vector<FieldElement> images_;
};

inline Oracle from_representation(FieldPtr ext, uint32_t q, Matrix g, uint32_t n = 0) {
  return std::make_shared<RepresentableOracle>(std::move(ext), q, std::move(g), n);
}

/// Parses entries written as "0", "1", "wK" or decimal indices.
inline Matrix parse_matrix(const Field& f, const std::vector<std::vector<std::string>>& entries) {
  Matrix out;
  for (const auto& row : entries) {
    std::vector<FieldElement> r;
    for (const auto& s : row) r.push_back(f.parse_power_string(s));
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct FamilyMember {
  Subspace space;
  int rank = 0;
};

/// rho(V) = min over members Z of rank(Z) + dim(V+Z) - dim Z.
class ZDefinedOracle : public RankOracle {
 public:
  ZDefinedOracle(uint32_t q, uint32_t n, std::vector<FamilyMember> members) : RankOracle(q, n) {
    if (members.empty()) throw Error(ErrorCode::kEmptyFamily, "a cyclic-flat family needs at least one member");
    std::sort(members.begin(), members.end(),
              [](const FamilyMember& a, const FamilyMember& b) { return a.space < b.space; });
    for (size_t i = 0; i < members.size(); ++i) {
      const auto& m = members[i];
      if (m.space.q() != q || m.space.n() != n) {
        throw Error(ErrorCode::kDimensionMismatch, "family member outside the ground space");
      }
      if (m.rank < 0 || m.rank > static_cast<int>(m.space.dim())) {
        throw Error(ErrorCode::kInconsistentFamily, "member rank outside [0, dim]");
      }
      if (i > 0 && members[i - 1].space == m.space) {
        throw Error(ErrorCode::kInconsistentFamily, "duplicate family member");
      }
    }
    members_ = std::move(members);
    for (const auto& m : members_) {
      Packed p;
      p.rank = m.rank;
      p.dim = static_cast<int>(m.space.dim());
      for (uint64_t r : m.space.rows()) p.rows.emplace_back(ops_.lead(r), r);
      packed_.push_back(std::move(p));
    }
    // The formula must return the assigned rank on each member.
    for (const auto& m : members_) {
      if (rank_rows(m.space.rows()) != m.rank) {
        throw Error(ErrorCode::kInconsistentFamily,
                    "assigned rank of a member is not reproduced by the rank formula");
      }
    }
  }

  const std::vector<FamilyMember>& members() const { return members_; }
  std::string kind() const override { return "zdefined"; }

  int rank_rows(std::span<const uint64_t> rows) const override {
    int best = static_cast<int>(rows.size()) + static_cast<int>(n()) + 1;
    Reducer red(ops_);
    for (const auto& z : packed_) {
      if (z.rank >= best) continue;
      red.clear();
      const int room = best - z.rank;
      for (uint64_t v : rows) {
        for (const auto& [p, r] : z.rows) {
          const uint32_t c = ops_.get(v, p);
          if (c) v = ops_.binary() ? v ^ r : ops_.axpy(v, ops_.q() - c, r);
        }
        if (v && red.insert(v) && red.count() >= room) break;
      }
      best = std::min(best, z.rank + red.count());
    }
    return best;
  }

  json to_spec() const override {
    json flats = json::array();
    for (const auto& m : members_) flats.push_back(json{{"rows", rows_json(ops_, m.space.rows())}, {"rank", m.rank}});
    return json{{"kind", "zdefined"}, {"q", q()}, {"n", n()}, {"flats", flats}};
  }

 private:
  struct Packed {
    int rank = 0;
    int dim = 0;
    std::vector<std::pair<uint32_t, uint64_t>> rows;
  };
  std::vector<FamilyMember> members_;
  std::vector<Packed> packed_;
};

inline Oracle from_cyclic_flats(uint32_t q, uint32_t n, std::vector<FamilyMember> family) {
  return std::make_shared<ZDefinedOracle>(q, n, std::move(family));
}

// ---------------------------------------------------------------------------

/// rho(V) = 1 if V belongs to the partial 2-spread, else min(2, dim V).
class SpreadOracle : public RankOracle {
 public:
  SpreadOracle(uint32_t q, std::vector<Subspace> spread) : RankOracle(q, 4) {
    for (const auto& s : spread) {
      if (s.q() != q) throw Error(ErrorCode::kFieldMismatch, "spread member over the wrong field");
      if (s.n() != 4 || s.dim() != 2) throw Error(ErrorCode::kWrongDimension, "spread members must be 2-dim in GF(q)^4");
    }
    std::sort(spread.begin(), spread.end());
    for (size_t i = 0; i < spread.size(); ++i) {
      for (size_t j = i + 1; j < spread.size(); ++j) {
        if (sum(spread[i], spread[j]).dim() != 4) {
          throw Error(ErrorCode::kNotASpread, "spread members " + std::to_string(i) + " and " + std::to_string(j) +
                                                  " share a nonzero vector");
        }
      }
    }
    spread_ = std::move(spread);
  }

  const std::vector<Subspace>& spread() const { return spread_; }
  std::string kind() const override { return "spread"; }

  bool is_member(const Subspace& v) const { return std::binary_search(spread_.begin(), spread_.end(), v); }

  int rank_rows(std::span<const uint64_t> rows) const override {
    if (rows.size() == 2 && is_member(Subspace::from_packed(ops_, rows))) return 1;
    return static_cast<int>(std::min<size_t>(2, rows.size()));
  }

  json to_spec() const override {
    json members = json::array();
    for (const auto& s : spread_) members.push_back(json{{"rows", rows_json(ops_, s.rows())}});
    return json{{"kind", "spread"}, {"q", q()}, {"spread", members}};
  }

 private:
  std::vector<Subspace> spread_;
};

inline Oracle from_spread(uint32_t q, std::vector<Subspace> spread) {
  return std::make_shared<SpreadOracle>(q, std::move(spread));
}

// ---------------------------------------------------------------------------

/// rho*(V) = dim V + rho(V^perp) - rho(E) for the standard dot product.
class DualOracle : public RankOracle {
 public:
  explicit DualOracle(Oracle inner) : RankOracle(inner->q(), inner->n()), inner_(std::move(inner)) {}
  const Oracle& inner() const { return inner_; }
  std::string kind() const override { return "dual"; }
  int rank_rows(std::span<const uint64_t> rows) const override {
    const Subspace perp = orthogonal(Subspace::from_packed(ops_, rows));
    return static_cast<int>(rows.size()) + inner_->rank_rows(perp.rows()) - inner_->rank_full();
  }
  json to_spec() const override { return json{{"kind", "dual"}, {"of", inner_->to_spec()}}; }

 private:
  Oracle inner_;
};

inline Oracle dual(Oracle m) { return std::make_shared<DualOracle>(std::move(m)); }

// ---------------------------------------------------------------------------

/// M|X on GF(q)^(dim X): coordinate i is the i-th vector of the recorded basis.
class RestrictionOracle : public RankOracle {
 public:
  RestrictionOracle(Oracle inner, std::vector<uint64_t> basis)
      : RankOracle(inner->q(), static_cast<uint32_t>(basis.size())), inner_(std::move(inner)), basis_(std::move(basis)) {
    Reducer red(inner_->ops());
    for (uint64_t b : basis_) {
      if (!red.insert(b)) throw Error(ErrorCode::kNotASubspace, "restriction basis is not linearly independent");
    }
  }

  const Oracle& inner() const { return inner_; }
  const std::vector<uint64_t>& basis() const { return basis_; }
  std::string kind() const override { return "restrict"; }

  uint64_t embed(uint64_t a) const {
    const VecOps& big = inner_->ops();
    uint64_t v = 0;
    for (uint32_t i = 0; i < basis_.size(); ++i) {
      const uint32_t c = ops_.get(a, i);
      if (c) v = big.axpy(v, c, basis_[i]);
    }
    return v;
  }

  Subspace embed(const Subspace& v) const {
    std::vector<uint64_t> rows;
    for (uint64_t r : v.rows()) rows.push_back(embed(r));
    return Subspace::from_packed(inner_->ops(), rows);
  }

  int rank_rows(std::span<const uint64_t> rows) const override {
    std::array<uint64_t, 64> buf{};
    for (size_t i = 0; i < rows.size(); ++i) buf[i] = embed(rows[i]);
    return inner_->rank_rows(std::span<const uint64_t>(buf.data(), rows.size()));
  }

  json to_spec() const override {
    return json{{"kind", "restrict"}, {"of", inner_->to_spec()}, {"X", json{{"rows", rows_json(inner_->ops(), basis_)}}}};
  }

 private:
  Oracle inner_;
  std::vector<uint64_t> basis_;
};

inline Oracle restriction(Oracle m, const Subspace& x) {
  if (x.q() != m->q() || x.n() != m->n()) throw Error(ErrorCode::kNotASubspace, "X is not a subspace of the ground space");
  return std::make_shared<RestrictionOracle>(std::move(m), x.rows());
}

inline Oracle restriction(Oracle m, std::vector<uint64_t> basis) {
  return std::make_shared<RestrictionOracle>(std::move(m), std::move(basis));
}

/// M/X on GF(q)^(n - dim X) through quotient_coords(X).
class ContractionOracle : public RankOracle {
 public:
  ContractionOracle(Oracle inner, Subspace x)
      : RankOracle(inner->q(), inner->n() - x.dim()), inner_(std::move(inner)), quotient_(std::move(x)) {
    x_rank_ = inner_->rank_rows(quotient_.kernel().rows());
  }

  const Oracle& inner() const { return inner_; }
  const Quotient& quotient() const { return quotient_; }
  std::string kind() const override { return "contract"; }

  int rank_rows(std::span<const uint64_t> rows) const override {
    std::array<uint64_t, 64> buf{};
    const auto& xr = quotient_.kernel().rows();
    std::copy(xr.begin(), xr.end(), buf.begin());
    for (size_t i = 0; i < rows.size(); ++i) buf[xr.size() + i] = quotient_.lift_vector(rows[i]);
    return inner_->rank_rows(std::span<const uint64_t>(buf.data(), xr.size() + rows.size())) - x_rank_;
  }

  json to_spec() const override {
    return json{{"kind", "contract"},
                {"of", inner_->to_spec()},
                {"X", json{{"rows", rows_json(inner_->ops(), quotient_.kernel().rows())}}}};
  }

 private:
  Oracle inner_;
  Quotient quotient_;
  int x_rank_ = 0;
};

inline Oracle contraction(Oracle m, const Subspace& x) {
  if (x.q() != m->q() || x.n() != m->n()) throw Error(ErrorCode::kNotASubspace, "X is not a subspace of the ground space");
  return std::make_shared<ContractionOracle>(std::move(m), x);
}

// ---------------------------------------------------------------------------

/// Explicit rank table. Mostly for tests and for rank functions without a
/// closed form; querying a subspace that is not listed is an input error.
class TableOracle : public RankOracle {
 public:
  TableOracle(uint32_t q, uint32_t n, std::map<Subspace, int> table) : RankOracle(q, n), table_(std::move(table)) {}

  std::string kind() const override { return "table"; }

  int rank_rows(std::span<const uint64_t> rows) const override {
    auto it = table_.find(Subspace::from_packed(ops_, rows));
    if (it == table_.end()) throw Error(ErrorCode::kInvalidInput, "subspace missing from rank table");
    return it->second;
  }

  json to_spec() const override {
    json ranks = json::array();
    for (const auto& [s, r] : table_) ranks.push_back(json{{"rows", rows_json(ops_, s.rows())}, {"rank", r}});
    return json{{"kind", "table"}, {"q", q()}, {"n", n()}, {"ranks", ranks}};
  }

 private:
  std::map<Subspace, int> table_;
};

}  // namespace qmat
