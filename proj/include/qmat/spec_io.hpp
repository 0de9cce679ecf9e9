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

// Matroid spec files: JSON in, oracles out. Serialising goes through
// RankOracle::to_spec().

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmat/decompose.hpp"
#include "qmat/dsum.hpp"
#include "qmat/oracle.hpp"
#include "qmat/subspace.hpp"

namespace qmat {

struct SpecOptions {
  std::optional<SumStrategy> strategy;  // overrides "strategy" in every dsum
};

namespace detail {

[[noreturn]] inline void bad_spec(const std::string& what) { throw Error(ErrorCode::kInvalidInput, what); }

inline const json& field_of(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_spec(std::string("spec is missing \"") + key + "\"");
  return j.at(key);
}

inline uint32_t uint_of(const json& j, const char* key) {
  const json& v = field_of(j, key);
  if (!v.is_number_integer() || v.get<int64_t>() < 0 || v.get<int64_t>() > 1000000) {
    bad_spec(std::string("\"") + key + "\" must be a small nonnegative integer");
  }
  return v.get<uint32_t>();
}

// VecOps rejects non-prime q and oversized n.
inline void check_ground(uint32_t q, uint32_t n) { (void)VecOps(q, n); }

}  // namespace detail

/// {"rows": [[...], ...]} or a bare list of rows.
inline Subspace parse_subspace(const json& j, uint32_t q, uint32_t n) {
  const json& rows = j.is_object() ? detail::field_of(j, "rows") : j;
  if (!rows.is_array()) detail::bad_spec("rows must be a list");
  const VecOps ops(q, n);
  std::vector<uint64_t> packed;
  for (const auto& r : rows) {
    if (!r.is_array()) detail::bad_spec("each row must be a list of integers");
    std::vector<uint32_t> entries;
    for (const auto& e : r) {
      if (!e.is_number_integer() || e.get<int64_t>() < 0) detail::bad_spec("row entries must be integers in [0, q)");
      entries.push_back(e.get<uint32_t>());
    }
    packed.push_back(ops.from_entries(entries));
  }
  return Subspace::from_packed(ops, packed);
}

inline json subspace_json(const Subspace& v) {
  return json{{"q", v.q()}, {"n", v.n()}, {"rows", rows_json(v.ops(), v.rows())}};
}

inline FieldPtr parse_field(const json& j) {
  const uint32_t p = detail::uint_of(j, "p");
  const uint32_t m = j.contains("m") ? detail::uint_of(j, "m") : 1;
  if (j.contains("modulus")) {
    const json& mod = j.at("modulus");
    if (!mod.is_array()) detail::bad_spec("modulus must be a list of coefficients");
    poly::Poly f;
    for (const auto& c : mod) {
      if (!c.is_number_integer() || c.get<int64_t>() < 0) detail::bad_spec("modulus coefficients must be integers");
      f.push_back(c.get<uint32_t>());
    }
    return create_field(p, m, f);
  }
  return create_field(p, m);
}

inline Oracle parse_spec(const json& j, const SpecOptions& opt = {}) {
  try {
    const json& kind_j = detail::field_of(j, "kind");
    if (!kind_j.is_string()) detail::bad_spec("\"kind\" must be a string");
    const std::string kind = kind_j.get<std::string>();

    if (kind == "uniform") {
      const uint32_t q = detail::uint_of(j, "q"), n = detail::uint_of(j, "n"), k = detail::uint_of(j, "k");
      detail::check_ground(q, n);
      if (k > n) throw Error(ErrorCode::kKOutOfRange, "k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
      return uniform(q, n, k);
    }
    if (kind == "representable") {
      const uint32_t q = detail::uint_of(j, "q");
      FieldPtr ext = j.contains("ext") ? parse_field(j.at("ext")) : create_field(q, 1);
      const json& g = detail::field_of(j, "G");
      if (!g.is_array()) detail::bad_spec("G must be a list of rows");
      std::vector<std::vector<std::string>> entries;
      for (const auto& row : g) {
        if (!row.is_array()) detail::bad_spec("G rows must be lists");
        std::vector<std::string> r;
        for (const auto& e : row) {
          if (e.is_string()) {
            r.push_back(e.get<std::string>());
          } else if (e.is_number_integer() && e.get<int64_t>() >= 0) {
            r.push_back(std::to_string(e.get<int64_t>()));
          } else {
            detail::bad_spec("G entries must be strings like \"w5\" or element indices");
          }
        }
        entries.push_back(std::move(r));
      }
      const uint32_t n = entries.empty() ? detail::uint_of(j, "n") : static_cast<uint32_t>(entries[0].size());
      detail::check_ground(q, n);
      return from_representation(ext, q, parse_matrix(*ext, entries), n);
    }
    if (kind == "zdefined") {
      const uint32_t q = detail::uint_of(j, "q"), n = detail::uint_of(j, "n");
      detail::check_ground(q, n);
      const json& flats = detail::field_of(j, "flats");
      if (!flats.is_array()) detail::bad_spec("flats must be a list");
      std::vector<FamilyMember> members;
      for (const auto& f : flats) {
        const json& r = detail::field_of(f, "rank");
        if (!r.is_number_integer()) detail::bad_spec("flat rank must be an integer");
        members.push_back({parse_subspace(f, q, n), r.get<int>()});
      }
      return from_cyclic_flats(q, n, std::move(members));
    }
    if (kind == "spread") {
      const uint32_t q = detail::uint_of(j, "q");
      detail::check_ground(q, 4);
      // Either explicit planes or a spread set of 2x2 matrices.
      if (j.contains("spread_set")) {
        std::vector<Mat2> set;
        for (const auto& a : j.at("spread_set")) {
          if (!a.is_array() || a.size() != 2) throw Error(ErrorCode::kNotASpreadSet, "spread-set entries are 2x2");
          Mat2 m{};
          for (int r = 0; r < 2; ++r) {
            if (!a[r].is_array() || a[r].size() != 2) throw Error(ErrorCode::kNotASpreadSet, "spread-set entries are 2x2");
            for (int c = 0; c < 2; ++c) m[r][c] = a[r][c].get<uint32_t>();
          }
          set.push_back(m);
        }
        return from_spread(q, spread_from_matrices(q, set));
      }
      const json& members = detail::field_of(j, "spread");
      if (!members.is_array()) detail::bad_spec("spread must be a list");
      std::vector<Subspace> planes;
      for (const auto& s : members) planes.push_back(parse_subspace(s, q, 4));
      return from_spread(q, std::move(planes));
    }
    if (kind == "dual") return dual(parse_spec(detail::field_of(j, "of"), opt));
    if (kind == "dsum" || kind == "union") {
      const json& parts_j = detail::field_of(j, "parts");
      if (!parts_j.is_array() || parts_j.size() < 2) detail::bad_spec(kind + " needs at least two parts");
      std::vector<Oracle> parts;
      for (const auto& p : parts_j) parts.push_back(parse_spec(p, opt));
      if (kind == "union") {
        if (parts.size() != 2) detail::bad_spec("union takes exactly two parts");
        return union_of(parts[0], parts[1]);
      }
      SumStrategy s = SumStrategy::kZBased;
      if (j.contains("strategy")) {
        if (!j.at("strategy").is_string()) detail::bad_spec("strategy must be a string");
        s = parse_strategy(j.at("strategy").get<std::string>());
      }
      if (opt.strategy) s = *opt.strategy;
      return direct_sum(parts, s);
    }
    if (kind == "restrict" || kind == "contract") {
      Oracle inner = parse_spec(detail::field_of(j, "of"), opt);
      const json& xj = detail::field_of(j, "X");
      if (kind == "contract") return contraction(inner, parse_subspace(xj, inner->q(), inner->n()));
      // The listed rows are the coordinate basis, so keep their order.
      const json& rows = xj.is_object() ? detail::field_of(xj, "rows") : xj;
      std::vector<uint64_t> basis;
      for (const auto& r : rows) {
        if (!r.is_array()) detail::bad_spec("X rows must be lists");
        basis.push_back(inner->ops().from_entries(r.get<std::vector<uint32_t>>()));
      }
      return restriction(inner, std::move(basis));
    }
    if (kind == "table") {
      const uint32_t q = detail::uint_of(j, "q"), n = detail::uint_of(j, "n");
      detail::check_ground(q, n);
      std::map<Subspace, int> table;
      for (const auto& e : detail::field_of(j, "ranks")) {
        const json& r = detail::field_of(e, "rank");
        if (!r.is_number_integer()) detail::bad_spec("table rank must be an integer");
        table[parse_subspace(e, q, n)] = r.get<int>();
      }
      return std::make_shared<TableOracle>(q, n, std::move(table));
    }
    detail::bad_spec("unknown matroid kind '" + kind + "'");
  } catch (const json::exception& e) {
    detail::bad_spec(std::string("malformed spec: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline Oracle load_spec(const std::string& path, const SpecOptions& opt = {}) {
  return parse_spec(read_json_file(path), opt);
}

}  // namespace qmat
