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

// Exact arithmetic in GF(p^m).
//
// Elements are encoded as integer indices: the residue c_0 + c_1 x + ... +
// c_{m-1} x^{m-1} modulo the field modulus maps to sum c_i p^i. The prime
// subfield GF(p) is therefore the index range [0, p). Fields of order at most
// 2^16 use log/antilog tables; larger fields fall back to polynomial
// multiplication.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmat/error.hpp"

namespace qmat {

struct FieldElement {
  uint32_t value = 0;

  friend bool operator==(FieldElement a, FieldElement b) { return a.value == b.value; }
  friend bool operator!=(FieldElement a, FieldElement b) { return a.value != b.value; }
  friend bool operator<(FieldElement a, FieldElement b) { return a.value < b.value; }
};

enum class ArithOp { kAdd, kSub, kMul, kDiv };

namespace poly {

// Dense polynomials over GF(p), coefficients from the constant term upward.
using Poly = std::vector<uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline uint32_t inv_mod(uint32_t a, uint32_t p) {
  // p is prime, so a^(p-2) is the inverse.
  uint64_t result = 1, base = a % p;
  uint32_t e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(result);
}

inline Poly sub(Poly a, const Poly& b, uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i] % p) % p;
  trim(a);
  return a;
}

inline Poly mod(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  const uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const uint64_t c = uint64_t(a.back()) * lead_inv % p;
    const size_t shift = a.size() - 1 - dm;
    for (size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - (c * m[i]) % p) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<uint32_t>((r[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
  }
  return mod(std::move(r), m, p);
}

inline Poly powmod(Poly base, uint64_t e, const Poly& m, uint32_t p) {
  Poly result{1};
  result = mod(result, m, p);
  base = mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = mulmod(result, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

inline Poly gcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline std::vector<uint32_t> prime_factors(uint64_t n) {
  std::vector<uint32_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<uint32_t>(n));
  return out;
}

/// Rabin's deterministic test: f of degree m is irreducible over GF(p) iff
/// x^(p^m) = x mod f and gcd(x^(p^(m/r)) - x, f) = 1 for every prime r | m.
inline bool is_irreducible(const Poly& f, uint32_t p) {
  Poly g = f;
  trim(g);
  if (g.size() < 2) return false;
  const size_t m = g.size() - 1;
  if (m == 1) return true;
  const Poly x{0, 1};
  // frob[k] = x^(p^k) mod f
  std::vector<Poly> frob{mod(x, g, p)};
  for (size_t k = 1; k <= m; ++k) frob.push_back(powmod(frob.back(), p, g, p));
  if (sub(frob[m], mod(x, g, p), p) != Poly{}) return false;
  for (uint32_t r : prime_factors(m)) {
    Poly d = gcd(g, sub(frob[m / r], x, p), p);
    if (d.size() != 1) return false;
  }
  return true;
}

}  // namespace poly

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Built-in moduli. Conway polynomials for small (p, m), with the three moduli
/// used by the bundled fixtures pinned verbatim: x^3+x+1 over GF(2),
/// x^16+x^5+x^3+x^2+1 over GF(2) and x^2+2x+2 over GF(3).
inline const std::map<std::pair<uint32_t, uint32_t>, poly::Poly>& default_moduli() {
  static const std::map<std::pair<uint32_t, uint32_t>, poly::Poly> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 16}, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
      {{11, 1}, {9, 1}},
      {{13, 1}, {11, 1}},
  };
  return table;
}

/// An immutable finite field GF(p^m). Share it through FieldPtr; the tables
/// for GF(2^16) are several hundred kilobytes.
class Field {
 public:
  static std::shared_ptr<const Field> create(uint32_t p, uint32_t m,
                                             std::optional<poly::Poly> modulus = std::nullopt) {
    if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
    if (m < 1) throw Error(ErrorCode::kInvalidInput, "extension degree must be >= 1");
    uint64_t order = 1;
    for (uint32_t i = 0; i < m; ++i) {
      order *= p;
      if (order >= (uint64_t(1) << 32)) {
        throw Error(ErrorCode::kInvalidInput, "field order must be below 2^32");
      }
    }
    poly::Poly f;
    if (modulus) {
      f = *modulus;
      for (auto& c : f) {
        if (c >= p) throw Error(ErrorCode::kInvalidInput, "modulus coefficient out of range");
      }
      if (f.size() != m + 1 || f.back() != 1) {
        throw Error(ErrorCode::kInvalidInput, "modulus must be monic of degree " + std::to_string(m));
      }
    } else {
      auto it = default_moduli().find({p, m});
      if (it == default_moduli().end()) {
        throw Error(ErrorCode::kNoDefaultModulus,
                    "no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(m) + ")");
      }
      f = it->second;
    }
    if (!poly::is_irreducible(f, p)) {
      throw Error(ErrorCode::kReducible, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
    return std::shared_ptr<const Field>(new Field(p, m, static_cast<uint32_t>(order), std::move(f)));
  }

  uint32_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint32_t order() const { return order_; }
  const poly::Poly& modulus() const { return modulus_; }
  bool has_tables() const { return !log_.empty(); }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  /// The class of x modulo the modulus (the symbol written as w in matrices).
  FieldElement omega() const { return omega_; }
  /// Embeds c in GF(p), taken modulo p.
  FieldElement from_int(int64_t c) const {
    int64_t r = c % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<uint32_t>(r)};
  }

  bool valid(FieldElement a) const { return a.value < order_; }

  FieldElement add(FieldElement a, FieldElement b) const {
    if (p_ == 2) return {a.value ^ b.value};
    if (!add_table_.empty()) return {add_table_[a.value * order_ + b.value]};
    return digitwise(a, b, false);
  }

  FieldElement sub(FieldElement a, FieldElement b) const {
    if (p_ == 2) return {a.value ^ b.value};
    return digitwise(a, b, true);
  }

  FieldElement neg(FieldElement a) const { return sub(zero(), a); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a.value == 0 || b.value == 0) return {0};
    if (has_tables()) return {exp_[log_[a.value] + log_[b.value]]};
    return from_poly(poly::mulmod(to_poly(a), to_poly(b), modulus_, p_));
  }

  FieldElement inv(FieldElement a) const {
    if (a.value == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
    if (has_tables()) return {exp_[(order_ - 1 - log_[a.value]) % (order_ - 1)]};
    return pow(a, order_ - 2);
  }

  FieldElement div(FieldElement a, FieldElement b) const {
    if (b.value == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
    if (a.value == 0) return {0};
    if (has_tables()) {
      return {exp_[(log_[a.value] + (order_ - 1) - log_[b.value]) % (order_ - 1)]};
    }
    return mul(a, inv(b));
  }

  /// Square-and-multiply; a^0 = 1 including for a = 0.
  FieldElement pow(FieldElement a, uint64_t e) const {
    FieldElement result = one();
    FieldElement base = a;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  FieldElement apply(ArithOp op, FieldElement a, FieldElement b) const {
    switch (op) {
      case ArithOp::kAdd: return add(a, b);
      case ArithOp::kSub: return sub(a, b);
      case ArithOp::kMul: return mul(a, b);
      case ArithOp::kDiv: return div(a, b);
    }
    return zero();
  }

  /// Discrete logarithm base omega when omega generates the unit group.
  std::optional<uint32_t> omega_log(FieldElement a) const {
    if (a.value == 0 || !omega_primitive_) return std::nullopt;
    if (has_tables()) {
      // omega is the table generator whenever it is primitive.
      return log_[a.value];
    }
    FieldElement cur = one();
    for (uint32_t k = 0; k + 1 < order_; ++k) {
      if (cur == a) return k;
      cur = mul(cur, omega_);
    }
    return std::nullopt;
  }

  bool omega_is_primitive() const { return omega_primitive_; }

  /// Multiplicative order of a nonzero element.
  uint64_t element_order(FieldElement a) const {
    if (a.value == 0) throw Error(ErrorCode::kDivisionByZero, "order of zero");
    const uint64_t n = order_ - 1;
    uint64_t ord = n;
    for (uint32_t r : poly::prime_factors(n)) {
      while (ord % r == 0 && pow(a, ord / r) == one()) ord /= r;
    }
    return ord;
  }

  poly::Poly to_poly(FieldElement a) const {
    poly::Poly out;
    uint32_t v = a.value;
    for (uint32_t i = 0; i < m_; ++i) {
      out.push_back(v % p_);
      v /= p_;
    }
    poly::trim(out);
    return out;
  }

  FieldElement from_poly(const poly::Poly& c) const {
    poly::Poly r = poly::mod(c, modulus_, p_);
    uint32_t v = 0;
    for (size_t i = r.size(); i-- > 0;) v = v * p_ + r[i];
    return {v};
  }

  /// "0", "1" or "wK". Falls back to the decimal index when omega is not a
  /// generator.
  std::string to_power_string(FieldElement a) const {
    if (a.value == 0) return "0";
    if (a.value == 1) return "1";
    if (auto k = omega_log(a)) return "w" + std::to_string(*k);
    return std::to_string(a.value);
  }

  /// Accepts "0", "1", "wK" (omega^K) or a decimal element index.
  FieldElement parse_power_string(const std::string& s) const {
    if (s.empty()) throw Error(ErrorCode::kInvalidInput, "empty field element string");
    if (s[0] == 'w') {
      const std::string digits = s.substr(1);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        throw Error(ErrorCode::kInvalidInput, "bad power string '" + s + "'");
      }
      return pow(omega_, std::stoull(digits));
    }
    if (!std::all_of(s.begin(), s.end(), ::isdigit)) {
      throw Error(ErrorCode::kInvalidInput, "bad field element '" + s + "'");
    }
    const uint64_t v = std::stoull(s);
    if (v >= order_) throw Error(ErrorCode::kInvalidInput, "field element out of range: " + s);
    return {static_cast<uint32_t>(v)};
  }

 private:
  Field(uint32_t p, uint32_t m, uint32_t order, poly::Poly modulus)
      : p_(p), m_(m), order_(order), modulus_(std::move(modulus)) {
    omega_ = from_poly(poly::Poly{0, 1});
    if (p_ != 2 && order_ <= 256) build_add_table();
    // Tables do not exist yet, so this runs on the polynomial path.
    omega_primitive_ = omega_.value != 0 && element_order(omega_) == order_ - 1;
    if (order_ <= (1u << 16)) {
      // With omega as the table generator log_ is the omega-logarithm.
      if (omega_primitive_) {
        build_tables_from(omega_);
      } else {
        build_tables();
      }
    }
  }

  FieldElement digitwise(FieldElement a, FieldElement b, bool subtract) const {
    uint32_t x = a.value, y = b.value, out = 0, scale = 1;
    for (uint32_t i = 0; i < m_; ++i) {
      const uint32_t dx = x % p_, dy = y % p_;
      const uint32_t d = subtract ? (dx + p_ - dy) % p_ : (dx + dy) % p_;
      out += d * scale;
      scale *= p_;
      x /= p_;
      y /= p_;
    }
    return {out};
  }

  void build_add_table() {
    add_table_.resize(size_t(order_) * order_);
    for (uint32_t a = 0; a < order_; ++a) {
      for (uint32_t b = 0; b < order_; ++b) {
        add_table_[a * order_ + b] = digitwise({a}, {b}, false).value;
      }
    }
  }

  FieldElement slow_mul(FieldElement a, FieldElement b) const {
    if (a.value == 0 || b.value == 0) return {0};
    return from_poly(poly::mulmod(to_poly(a), to_poly(b), modulus_, p_));
  }

  void build_tables() {
    // Smallest generator by index.
    const uint32_t n = order_ - 1;
    const auto factors = poly::prime_factors(n);
    auto slow_pow = [&](FieldElement a, uint64_t e) {
      FieldElement r{1};
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    for (uint32_t g = 1; g < order_; ++g) {
      bool primitive = true;
      for (uint32_t r : factors) {
        if (slow_pow({g}, n / r).value == 1) {
          primitive = false;
          break;
        }
      }
      if (n == 1 || primitive) {
        build_tables_from({g});
        return;
      }
    }
  }

  void build_tables_from(FieldElement g) {
    const uint32_t n = order_ - 1;
    exp_.assign(2 * size_t(n) + 1, 0);
    log_.assign(order_, 0);
    FieldElement cur{1};
    for (uint32_t k = 0; k < n; ++k) {
      exp_[k] = cur.value;
      log_[cur.value] = k;
      cur = slow_mul(cur, g);
    }
    for (uint32_t k = n; k < exp_.size(); ++k) exp_[k] = exp_[k - n];
  }

  uint32_t p_;
  uint32_t m_;
  uint32_t order_;
  poly::Poly modulus_;
  FieldElement omega_;
  bool omega_primitive_ = false;
  std::vector<uint32_t> exp_;
  std::vector<uint32_t> log_;
  std::vector<uint32_t> add_table_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr create_field(uint32_t p, uint32_t m, std::optional<poly::Poly> modulus = std::nullopt) {
  return Field::create(p, m, std::move(modulus));
}

inline FieldElement field_arithmetic(const Field& field, FieldElement a, FieldElement b, ArithOp op) {
  return field.apply(op, a, b);
}

}  // namespace qmat
