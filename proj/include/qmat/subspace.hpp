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

// Subspaces of GF(q)^n for prime q.
//
// A vector is packed into one 64-bit word. Over GF(2) coordinate i is bit i;
// over an odd prime coordinate i is the nibble at bits 4i..4i+3. That bounds
// n by 64 and 16 respectively. Coordinate 0 is e_1.
//
// Canonical form is the reduced row echelon basis where the pivot of a row is
// its first nonzero coordinate and pivots increase down the rows.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmat/error.hpp"
#include "qmat/field.hpp"

namespace qmat {

class VecOps {
 public:
  VecOps() : VecOps(2, 0) {}

  VecOps(uint32_t q, uint32_t n) : q_(q), n_(n), binary_(q == 2) {
    if (!is_prime(q)) throw Error(ErrorCode::kNotPrime, "ground field order " + std::to_string(q) + " is not prime");
    if (!binary_ && q > 13) throw Error(ErrorCode::kInvalidInput, "ground field order must be at most 13");
    if (n > max_n()) {
      throw Error(ErrorCode::kInvalidInput,
                  "ambient dimension " + std::to_string(n) + " exceeds " + std::to_string(max_n()));
    }
    for (uint32_t c = 1; c < q_; ++c) inv_[c] = poly::inv_mod(c, q_);
  }

  uint32_t q() const { return q_; }
  uint32_t n() const { return n_; }
  bool binary() const { return binary_; }
  uint32_t max_n() const { return binary_ ? 64 : 16; }
  uint32_t coord_bits() const { return binary_ ? 1 : 4; }

  /// All coordinates set to 1 over GF(2), or the nibble mask over odd q.
  uint64_t coord_mask() const {
    const uint32_t bits = binary_ ? n_ : 4 * n_;
    return bits >= 64 ? ~uint64_t(0) : (uint64_t(1) << bits) - 1;
  }

  uint32_t get(uint64_t v, uint32_t i) const {
    return binary_ ? uint32_t((v >> i) & 1) : uint32_t((v >> (4 * i)) & 15);
  }

  uint64_t set(uint64_t v, uint32_t i, uint32_t c) const {
    if (binary_) return (v & ~(uint64_t(1) << i)) | (uint64_t(c & 1) << i);
    return (v & ~(uint64_t(15) << (4 * i))) | (uint64_t(c) << (4 * i));
  }

  uint64_t unit(uint32_t i) const { return set(0, i, 1); }

  uint64_t add(uint64_t a, uint64_t b) const {
    if (binary_) return a ^ b;
    if (q_ <= 7) {
      // Nibble sums stay below 16, so one carry-free pass plus a conditional
      // subtraction of q per nibble reduces them.
      const uint64_t s = a + b;
      const uint64_t ge = ((s + (8 - q_) * kOnes) & (8 * kOnes)) >> 3;
      return s - ge * q_;
    }
    uint64_t out = 0;
    for (uint32_t i = 0; i < n_; ++i) out = set(out, i, (get(a, i) + get(b, i)) % q_);
    return out;
  }

  uint64_t neg(uint64_t a) const {
    if (binary_) return a;
    const uint64_t nz = (a | (a >> 1) | (a >> 2) | (a >> 3)) & kOnes;
    return nz * q_ - a;
  }

  uint64_t sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

  uint64_t scale(uint64_t a, uint32_t c) const {
    c %= q_;
    if (c == 0) return 0;
    if (c == 1) return a;
    if (c == q_ - 1) return neg(a);
    uint64_t out = 0;
    for (uint32_t i = 0; i < n_; ++i) out = set(out, i, get(a, i) * c % q_);
    return out;
  }

  /// a + c*b
  uint64_t axpy(uint64_t a, uint32_t c, uint64_t b) const { return add(a, scale(b, c)); }

  /// Index of the first nonzero coordinate; v must be nonzero.
  uint32_t lead(uint64_t v) const {
    const uint32_t t = static_cast<uint32_t>(std::countr_zero(v));
    return binary_ ? t : t / 4;
  }

  /// Bitmask of nonzero coordinates, one bit per coordinate.
  uint64_t support(uint64_t v) const {
    if (binary_) return v;
    uint64_t nz = (v | (v >> 1) | (v >> 2) | (v >> 3)) & kOnes;
    uint64_t out = 0;
    while (nz) {
      const uint32_t t = static_cast<uint32_t>(std::countr_zero(nz));
      out |= uint64_t(1) << (t / 4);
      nz &= nz - 1;
    }
    return out;
  }

  uint32_t inv(uint32_t c) const { return inv_[c]; }

  /// Scales v so that its leading coordinate is 1.
  uint64_t normalize(uint64_t v) const {
    if (binary_ || v == 0) return v;
    const uint32_t c = get(v, lead(v));
    return c == 1 ? v : scale(v, inv_[c]);
  }

  uint32_t dot(uint64_t a, uint64_t b) const {
    if (binary_) return static_cast<uint32_t>(std::popcount(a & b) & 1);
    uint32_t s = 0;
    for (uint32_t i = 0; i < n_; ++i) s += get(a, i) * get(b, i);
    return s % q_;
  }

  uint64_t from_entries(std::span<const uint32_t> entries) const {
    if (entries.size() != n_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "vector of length " + std::to_string(entries.size()) + " in ambient dimension " +
                      std::to_string(n_));
    }
    uint64_t v = 0;
    for (uint32_t i = 0; i < n_; ++i) {
      if (entries[i] >= q_) throw Error(ErrorCode::kInvalidInput, "vector entry out of range");
      v = set(v, i, entries[i]);
    }
    return v;
  }

  std::vector<uint32_t> to_entries(uint64_t v) const {
    std::vector<uint32_t> out(n_);
    for (uint32_t i = 0; i < n_; ++i) out[i] = get(v, i);
    return out;
  }

  /// Base-q integer sum c_i q^i; the packed word itself over GF(2).
  uint64_t index_of(uint64_t v) const {
    if (binary_) return v;
    uint64_t idx = 0;
    for (uint32_t i = n_; i-- > 0;) idx = idx * q_ + get(v, i);
    return idx;
  }

  uint64_t from_index(uint64_t idx) const {
    if (binary_) return idx;
    uint64_t v = 0;
    for (uint32_t i = 0; i < n_; ++i) {
      v = set(v, i, static_cast<uint32_t>(idx % q_));
      idx /= q_;
    }
    return v;
  }

  friend bool operator==(const VecOps& a, const VecOps& b) { return a.q_ == b.q_ && a.n_ == b.n_; }

 private:
  static constexpr uint64_t kOnes = 0x1111111111111111ULL;
  uint32_t q_;
  uint32_t n_;
  bool binary_;
  std::array<uint32_t, 16> inv_{};
};

/// Incremental echelon basis keyed by pivot column. Rows are kept normalized
/// but not fully reduced.
class Reducer {
 public:
  explicit Reducer(const VecOps& ops) : ops_(&ops) {}

  void clear() {
    occupied_ = 0;
    count_ = 0;
  }

  int count() const { return count_; }
  uint64_t pivots() const { return occupied_; }
  uint64_t row(uint32_t pivot) const { return table_[pivot]; }

  uint64_t reduce(uint64_t v) const {
    if (ops_->binary()) {
      uint64_t hit;
      while ((hit = v & occupied_) != 0) v ^= table_[std::countr_zero(hit)];
      return v;
    }
    uint64_t hit;
    while ((hit = ops_->support(v) & occupied_) != 0) {
      const uint32_t p = static_cast<uint32_t>(std::countr_zero(hit));
      v = ops_->axpy(v, ops_->q() - ops_->get(v, p), table_[p]);
    }
    return v;
  }

  bool insert(uint64_t v) {
    v = reduce(v);
    if (v == 0) return false;
    const uint32_t p = ops_->lead(v);
    table_[p] = ops_->normalize(v);
    occupied_ |= uint64_t(1) << p;
    ++count_;
    return true;
  }

  bool contains(uint64_t v) const { return reduce(v) == 0; }

  /// Fully reduced rows sorted by pivot.
  std::vector<uint64_t> rref() const {
    std::vector<uint32_t> piv;
    for (uint64_t m = occupied_; m; m &= m - 1) piv.push_back(static_cast<uint32_t>(std::countr_zero(m)));
    std::array<uint64_t, 64> rows{};
    for (size_t k = piv.size(); k-- > 0;) {
      uint64_t r = table_[piv[k]];
      for (size_t j = k + 1; j < piv.size(); ++j) {
        const uint32_t c = ops_->get(r, piv[j]);
        if (c) r = ops_->axpy(r, ops_->q() - c, rows[j]);
      }
      rows[k] = r;
    }
    return std::vector<uint64_t>(rows.begin(), rows.begin() + piv.size());
  }

 private:
  const VecOps* ops_;
  std::array<uint64_t, 64> table_{};
  uint64_t occupied_ = 0;
  int count_ = 0;
};

/// A subspace of GF(q)^n held in canonical form. Equality is structural.
class Subspace {
 public:
  Subspace() = default;
  Subspace(uint32_t q, uint32_t n) : ops_(q, n) {}

  /// Row space of arbitrary packed vectors.
  static Subspace from_packed(const VecOps& ops, std::span<const uint64_t> rows) {
    Reducer red(ops);
    for (uint64_t r : rows) red.insert(r);
    Subspace s;
    s.ops_ = ops;
    s.rows_ = red.rref();
    return s;
  }

  /// Trusts that rows are already the canonical basis.
  static Subspace from_rref(const VecOps& ops, std::vector<uint64_t> rows) {
    Subspace s;
    s.ops_ = ops;
    s.rows_ = std::move(rows);
    return s;
  }

  static Subspace zero(uint32_t q, uint32_t n) { return Subspace(q, n); }

  static Subspace full(uint32_t q, uint32_t n) {
    Subspace s(q, n);
    for (uint32_t i = 0; i < n; ++i) s.rows_.push_back(s.ops_.unit(i));
    return s;
  }

  /// Span of the coordinate vectors e_{first+1} .. e_{first+count}.
  static Subspace coordinate(uint32_t q, uint32_t n, uint32_t first, uint32_t count) {
    Subspace s(q, n);
    for (uint32_t i = first; i < first + count; ++i) s.rows_.push_back(s.ops_.unit(i));
    return s;
  }

  uint32_t q() const { return ops_.q(); }
  uint32_t n() const { return ops_.n(); }
  uint32_t dim() const { return static_cast<uint32_t>(rows_.size()); }
  bool is_zero() const { return rows_.empty(); }
  bool is_full() const { return rows_.size() == ops_.n(); }
  const VecOps& ops() const { return ops_; }
  const std::vector<uint64_t>& rows() const { return rows_; }

  uint64_t pivot_mask() const {
    uint64_t m = 0;
    for (uint64_t r : rows_) m |= uint64_t(1) << ops_.lead(r);
    return m;
  }

  std::vector<std::vector<uint32_t>> entries() const {
    std::vector<std::vector<uint32_t>> out;
    for (uint64_t r : rows_) out.push_back(ops_.to_entries(r));
    return out;
  }

  /// Reduction against the canonical basis; zero iff v lies in the subspace.
  uint64_t reduce(uint64_t v) const {
    for (uint64_t r : rows_) {
      const uint32_t c = ops_.get(v, ops_.lead(r));
      if (c) v = ops_.axpy(v, ops_.q() - c, r);
    }
    return v;
  }

  bool contains(uint64_t v) const { return reduce(v) == 0; }

  bool contains(const Subspace& other) const {
    for (uint64_t r : other.rows_) {
      if (!contains(r)) return false;
    }
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ops_ == b.ops_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  /// Dimension first, then pivot columns, then entries row by row. This is the
  /// order in which for_each_subspace visits the lattice.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.q() != b.q()) return a.q() < b.q();
    if (a.n() != b.n()) return a.n() < b.n();
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (size_t i = 0; i < a.rows_.size(); ++i) {
      const uint32_t pa = a.ops_.lead(a.rows_[i]), pb = b.ops_.lead(b.rows_[i]);
      if (pa != pb) return pa < pb;
    }
    for (size_t i = 0; i < a.rows_.size(); ++i) {
      for (uint32_t c = 0; c < a.n(); ++c) {
        const uint32_t x = a.ops_.get(a.rows_[i], c), y = b.ops_.get(b.rows_[i], c);
        if (x != y) return x < y;
      }
    }
    return false;
  }

  size_t hash() const {
    size_t h = std::hash<uint64_t>{}((uint64_t(q()) << 32) | n());
    for (uint64_t r : rows_) h ^= std::hash<uint64_t>{}(r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  VecOps ops_;
  std::vector<uint64_t> rows_;
};

struct SubspaceHash {
  size_t operator()(const Subspace& s) const { return s.hash(); }
};

inline void require_same_ground(const Subspace& a, const Subspace& b) {
  if (a.q() != b.q() || a.n() != b.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "subspaces live in different ambient spaces");
  }
}

inline Subspace span(uint32_t q, uint32_t n, const std::vector<std::vector<uint32_t>>& rows) {
  VecOps ops(q, n);
  std::vector<uint64_t> packed;
  for (const auto& r : rows) packed.push_back(ops.from_entries(r));
  return Subspace::from_packed(ops, packed);
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ground(a, b);
  std::vector<uint64_t> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return Subspace::from_packed(a.ops(), rows);
}

/// Right kernel of the canonical basis: the complement under the standard dot
/// product.
inline Subspace orthogonal(const Subspace& v) {
  const VecOps& ops = v.ops();
  const uint64_t piv = v.pivot_mask();
  std::vector<uint64_t> out;
  for (uint32_t f = 0; f < ops.n(); ++f) {
    if (piv >> f & 1) continue;
    uint64_t w = ops.unit(f);
    for (uint64_t r : v.rows()) {
      const uint32_t c = ops.get(r, f);
      if (c) w = ops.set(w, ops.lead(r), (ops.q() - c) % ops.q());
    }
    out.push_back(w);
  }
  return Subspace::from_packed(ops, out);
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ground(a, b);
  if (a.is_zero() || b.is_zero()) return Subspace(a.q(), a.n());
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  return orthogonal(sum(orthogonal(a), orthogonal(b)));
}

/// Image of V under x -> alpha x, alpha given by its columns (alpha e_i).
inline Subspace apply_linear(const std::vector<uint64_t>& columns, const Subspace& v, const VecOps& target) {
  const VecOps& src = v.ops();
  std::vector<uint64_t> out;
  for (uint64_t r : v.rows()) {
    uint64_t img = 0;
    for (uint32_t i = 0; i < src.n(); ++i) {
      const uint32_t c = src.get(r, i);
      if (c) img = target.axpy(img, c, columns[i]);
    }
    out.push_back(img);
  }
  return Subspace::from_packed(target, out);
}

inline uint64_t gaussian_binomial(uint64_t q, uint32_t n, uint32_t k) {
  if (k > n) return 0;
  // [n,k] = [n-1,k-1] + q^k [n-1,k]
  std::vector<uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (uint32_t m = 1; m <= n; ++m) {
    for (uint32_t j = std::min(m, k); j >= 1; --j) {
      uint64_t qj = 1;
      for (uint32_t t = 0; t < j; ++t) qj *= q;
      row[j] = row[j - 1] + qj * row[j];
    }
  }
  return row[k];
}

inline uint64_t subspace_count(uint64_t q, uint32_t n) {
  uint64_t total = 0;
  for (uint32_t k = 0; k <= n; ++k) total += gaussian_binomial(q, n, k);
  return total;
}

/// Visits every projective point of GF(q)^d, i.e. every nonzero vector whose
/// first nonzero coordinate is 1, in increasing lead position.
template <typename Fn>
void for_each_projective(const VecOps& ops, Fn&& fn) {
  const uint32_t d = ops.n(), q = ops.q();
  for (uint32_t j = 0; j < d; ++j) {
    const uint32_t free = d - 1 - j;
    std::vector<uint32_t> digits(free, 0);
    while (true) {
      uint64_t v = ops.unit(j);
      for (uint32_t t = 0; t < free; ++t) {
        if (digits[t]) v = ops.set(v, j + 1 + t, digits[t]);
      }
      if (!fn(v)) return;
      uint32_t t = free;
      while (t > 0) {
        if (++digits[t - 1] < q) break;
        digits[t - 1] = 0;
        --t;
      }
      if (t == 0) break;
    }
  }
}

/// Hyperplanes of the space spanned by the independent rows `basis`. Each is
/// the kernel of a projective functional c on the basis coordinates, and is
/// handed to fn as d-1 independent rows together with c packed in GF(q)^d.
/// fn returns false to stop.
template <typename Fn>
void for_each_hyperplane(const VecOps& ops, std::span<const uint64_t> basis, Fn&& fn) {
  const uint32_t d = static_cast<uint32_t>(basis.size());
  if (d == 0) throw Error(ErrorCode::kZeroSpace, "the zero space has no hyperplanes");
  const VecOps coords(ops.q(), d);
  std::array<uint64_t, 64> h{};
  for_each_projective(coords, [&](uint64_t c) {
    const uint32_t j = coords.lead(c);
    uint32_t k = 0;
    for (uint32_t i = 0; i < d; ++i) {
      if (i == j) continue;
      const uint32_t ci = coords.get(c, i);
      h[k++] = ci ? ops.axpy(basis[i], ops.q() - ci, basis[j]) : basis[i];
    }
    return fn(std::span<const uint64_t>(h.data(), d - 1), c);
  });
}

/// One vector x per cover V + <x> of the canonical space V: the projective
/// points supported on the non-pivot coordinates.
template <typename Fn>
void for_each_cover(const VecOps& ops, uint64_t pivot_mask, Fn&& fn) {
  std::vector<uint32_t> free_cols;
  for (uint32_t c = 0; c < ops.n(); ++c) {
    if (!(pivot_mask >> c & 1)) free_cols.push_back(c);
  }
  if (free_cols.empty()) return;
  const VecOps local(ops.q(), static_cast<uint32_t>(free_cols.size()));
  for_each_projective(local, [&](uint64_t c) {
    uint64_t x = 0;
    for (uint32_t i = 0; i < free_cols.size(); ++i) {
      const uint32_t e = local.get(c, i);
      if (e) x = ops.set(x, free_cols[i], e);
    }
    return fn(x);
  });
}

inline std::vector<Subspace> hyperplanes_of(const Subspace& v) {
  std::vector<Subspace> out;
  for_each_hyperplane(v.ops(), v.rows(), [&](std::span<const uint64_t> rows, uint64_t) {
    out.push_back(Subspace::from_packed(v.ops(), rows));
    return true;
  });
  return out;
}

/// One representative per line not contained in V.
inline std::vector<uint64_t> lines_outside(const Subspace& v) {
  const VecOps& ops = v.ops();
  std::vector<uint64_t> members;
  const VecOps coords(ops.q(), v.dim());
  const uint64_t total = [&] {
    uint64_t t = 1;
    for (uint32_t i = 0; i < v.dim(); ++i) t *= ops.q();
    return t;
  }();
  for (uint64_t idx = 0; idx < total; ++idx) {
    const uint64_t a = coords.from_index(idx);
    uint64_t w = 0;
    for (uint32_t i = 0; i < v.dim(); ++i) {
      const uint32_t c = coords.get(a, i);
      if (c) w = ops.axpy(w, c, v.rows()[i]);
    }
    members.push_back(w);
  }
  std::vector<uint64_t> out;
  for_each_cover(ops, v.pivot_mask(), [&](uint64_t x) {
    for (uint64_t w : members) out.push_back(ops.add(x, w));
    return true;
  });
  return out;
}

/// Streams the canonical bases of all subspaces with dim_lo <= dim <= dim_hi.
/// Subspaces are numbered in visiting order and shard s of S receives those
/// with index = s mod S. fn(rows) returns false to stop.
template <typename Fn>
void for_each_subspace(const VecOps& ops, uint32_t dim_lo, uint32_t dim_hi, uint32_t shard, uint32_t shards,
                       Fn&& fn) {
  const uint32_t n = ops.n(), q = ops.q();
  if (shards == 0) shards = 1;
  dim_hi = std::min(dim_hi, n);
  uint64_t index = 0;
  std::array<uint64_t, 64> rows{};
  std::vector<uint32_t> piv;
  std::vector<std::pair<uint32_t, uint32_t>> free_pos;  // (row, column)
  std::vector<uint32_t> digits;
  for (uint32_t d = dim_lo; d <= dim_hi; ++d) {
    piv.resize(d);
    for (uint32_t i = 0; i < d; ++i) piv[i] = i;
    while (true) {
      free_pos.clear();
      uint64_t pmask = 0;
      for (uint32_t p : piv) pmask |= uint64_t(1) << p;
      for (uint32_t i = 0; i < d; ++i) {
        for (uint32_t c = piv[i] + 1; c < n; ++c) {
          if (!(pmask >> c & 1)) free_pos.emplace_back(i, c);
        }
      }
      digits.assign(free_pos.size(), 0);
      while (true) {
        if (index++ % shards == shard) {
          for (uint32_t i = 0; i < d; ++i) rows[i] = ops.unit(piv[i]);
          for (size_t t = 0; t < free_pos.size(); ++t) {
            if (digits[t]) rows[free_pos[t].first] = ops.set(rows[free_pos[t].first], free_pos[t].second, digits[t]);
          }
          if (!fn(std::span<const uint64_t>(rows.data(), d))) return;
        }
        size_t t = digits.size();
        while (t > 0) {
          if (++digits[t - 1] < q) break;
          digits[t - 1] = 0;
          --t;
        }
        if (t == 0) break;
      }
      // next pivot combination
      int i = static_cast<int>(d) - 1;
      while (i >= 0 && piv[i] == n - d + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (uint32_t j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
    }
  }
}

inline std::vector<Subspace> enumerate_subspaces(uint32_t q, uint32_t n, std::optional<uint32_t> dim = std::nullopt,
                                                 uint32_t shard = 0, uint32_t shards = 1) {
  VecOps ops(q, n);
  std::vector<Subspace> out;
  const uint32_t lo = dim ? *dim : 0, hi = dim ? *dim : n;
  if (lo > n) return out;
  for_each_subspace(ops, lo, hi, shard, shards, [&](std::span<const uint64_t> rows) {
    out.push_back(Subspace::from_rref(ops, std::vector<uint64_t>(rows.begin(), rows.end())));
    return true;
  });
  return out;
}

/// E/X realized as GF(q)^(n - dim X) on the non-pivot coordinates of X.
class Quotient {
 public:
  explicit Quotient(Subspace x) : x_(std::move(x)), target_(x_.q(), x_.n() - x_.dim()) {
    const uint64_t piv = x_.pivot_mask();
    for (uint32_t c = 0; c < x_.n(); ++c) {
      if (!(piv >> c & 1)) free_cols_.push_back(c);
    }
  }

  const Subspace& kernel() const { return x_; }
  const VecOps& target() const { return target_; }
  const std::vector<uint32_t>& free_columns() const { return free_cols_; }

  uint64_t project_vector(uint64_t v) const {
    v = x_.reduce(v);
    uint64_t out = 0;
    for (uint32_t i = 0; i < free_cols_.size(); ++i) out = target_.set(out, i, x_.ops().get(v, free_cols_[i]));
    return out;
  }

  uint64_t lift_vector(uint64_t w) const {
    uint64_t out = 0;
    for (uint32_t i = 0; i < free_cols_.size(); ++i) out = x_.ops().set(out, free_cols_[i], target_.get(w, i));
    return out;
  }

  Subspace project(const Subspace& v) const {
    std::vector<uint64_t> rows;
    for (uint64_t r : v.rows()) rows.push_back(project_vector(r));
    return Subspace::from_packed(target_, rows);
  }

  /// Full preimage, which contains X.
  Subspace lift(const Subspace& w) const {
    std::vector<uint64_t> rows = x_.rows();
    for (uint64_t r : w.rows()) rows.push_back(lift_vector(r));
    return Subspace::from_packed(x_.ops(), rows);
  }

 private:
  Subspace x_;
  VecOps target_;
  std::vector<uint32_t> free_cols_;
};

inline Quotient quotient_coords(const Subspace& x) { return Quotient(x); }

/// Greedy complement of `inner` inside `outer`: scans the canonical rows of
/// `outer` and keeps those independent of what is already there.
inline std::vector<uint64_t> complement_basis(const Subspace& inner, const Subspace& outer) {
  Reducer red(inner.ops());
  for (uint64_t r : inner.rows()) red.insert(r);
  std::vector<uint64_t> out;
  for (uint64_t r : outer.rows()) {
    if (red.insert(r)) out.push_back(r);
  }
  return out;
}

}  // namespace qmat
