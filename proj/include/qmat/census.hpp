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

// Whole-lattice counts of flats, cyclic spaces, independent spaces and so on.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "qmat/budget.hpp"
#include "qmat/operators.hpp"
#include "qmat/oracle.hpp"
#include "qmat/parallel.hpp"
#include "qmat/subspace.hpp"

namespace qmat {

struct CensusCounts {
  uint64_t flats = 0, cyclic = 0, cyclic_flats = 0, independent = 0, dependent = 0, circuits = 0, bases = 0;

  CensusCounts& operator+=(const CensusCounts& o) {
    flats += o.flats;
    cyclic += o.cyclic;
    cyclic_flats += o.cyclic_flats;
    independent += o.independent;
    dependent += o.dependent;
    circuits += o.circuits;
    bases += o.bases;
    return *this;
  }

  friend bool operator==(const CensusCounts&, const CensusCounts&) = default;
};

inline Predicates classify(const RankOracle& m, const Subspace& v) { return predicates(m, v); }

/// 64-bit FNV-1a over the compact JSON dump of a spec.
inline std::string spec_digest(const json& spec) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : spec.dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

struct CensusReport {
  json spec;
  uint32_t q = 2, n = 0;
  CensusCounts counts;
  uint64_t total = 0;
  uint32_t shards = 1;
  bool cache = false;
  std::string rank_path;
  double elapsed_ms = 0;

  static std::string csv_header() { return "flats,cyclic,cyclic_flats,independent,dependent,circuits,bases"; }

  std::string csv_row() const {
    const auto& c = counts;
    return std::to_string(c.flats) + "," + std::to_string(c.cyclic) + "," + std::to_string(c.cyclic_flats) + "," +
           std::to_string(c.independent) + "," + std::to_string(c.dependent) + "," + std::to_string(c.circuits) + "," +
           std::to_string(c.bases);
  }

  /// Timing is left out unless asked for, so repeated runs print the same bytes.
  json to_json(bool timing = false) const {
    const auto& c = counts;
    json out{{"q", q},
             {"n", n},
             {"spec_digest", spec_digest(spec)},
             {"subspaces", total},
             {"counts",
              {{"flats", c.flats},
               {"cyclic", c.cyclic},
               {"cyclic_flats", c.cyclic_flats},
               {"independent", c.independent},
               {"dependent", c.dependent},
               {"circuits", c.circuits},
               {"bases", c.bases}}},
             {"notes", {{"cache", cache}, {"rank_path", rank_path}}}};
    if (timing) {
      out["elapsed_ms"] = elapsed_ms;
      out["shards"] = shards;
    }
    return out;
  }
};

namespace detail {

// Routes rank_rows through the memo cache of another oracle.
class CachedView : public RankOracle {
 public:
  explicit CachedView(Oracle inner) : RankOracle(inner->q(), inner->n()), inner_(std::move(inner)) {}
  std::string kind() const override { return inner_->kind(); }
  int rank_rows(std::span<const uint64_t> rows) const override {
    return inner_->rank(Subspace::from_packed(ops_, rows));
  }
  json to_spec() const override { return inner_->to_spec(); }

 private:
  Oracle inner_;
};

inline std::string rank_path_of(const RankOracle& m) {
  if (dynamic_cast<const ZDefinedOracle*>(&m)) return "cyclic-flat formula";
  if (const auto* r = dynamic_cast<const RepresentableOracle*>(&m)) {
    uint64_t vectors = 1;
    for (uint32_t i = 0; i < m.n() && vectors <= (1u << 16); ++i) vectors *= m.q();
    return r->k() <= 32 && vectors <= (1u << 16) ? "image table" : "elimination";
  }
  return m.kind();
}

}  // namespace detail

struct CensusOptions {
  uint32_t shards = 1;
  bool cache = false;  // hit rates are low across V + <x>, so off by default
};

inline CensusReport census(const Oracle& m, const CensusOptions& opt, Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  CensusReport rep;
  rep.spec = m->to_spec();
  rep.q = m->q();
  rep.n = m->n();
  rep.shards = std::max<uint32_t>(1, opt.shards);
  rep.cache = opt.cache;
  rep.rank_path = detail::rank_path_of(*m);
  Oracle view = opt.cache ? std::make_shared<detail::CachedView>(m) : m;
  const int full = m->rank_full();
  std::atomic<uint64_t> done{0};
  std::vector<CensusCounts> parts;
  try {
    parts = run_shards<CensusCounts>(rep.shards, [&](uint32_t shard) {
      CensusCounts c;
      uint64_t local = 0;
      for_each_subspace(view->ops(), 0, view->n(), shard, rep.shards, [&](std::span<const uint64_t> rows) {
        if (++local % 256 == 0) {
          done += 256;
          budget.tick(256);
        }
        uint64_t pmask = 0;
        for (uint64_t r : rows) pmask |= uint64_t(1) << view->ops().lead(r);
        const Predicates p = classify_rows(*view, rows, pmask, full);
        c.flats += p.flat;
        c.cyclic += p.cyclic;
        c.cyclic_flats += p.flat && p.cyclic;
        c.independent += p.independent;
        c.dependent += p.dependent;
        c.circuits += p.circuit;
        c.bases += p.basis;
        return true;
      });
      return c;
    });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExceeded) throw;
    throw Error(ErrorCode::kBudgetExceeded, "census stopped after about " + std::to_string(done.load()) + " of " +
                                                std::to_string(subspace_count(m->q(), m->n())) + " subspaces");
  }
  for (const auto& p : parts) rep.counts += p;
  rep.total = rep.counts.independent + rep.counts.dependent;
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline CensusReport census(const Oracle& m, uint32_t shards = 1) {
  Budget b;
  CensusOptions opt;
  opt.shards = shards;
  return census(m, opt, b);
}

// ---------------------------------------------------------------------------

struct VerifyReport {
  bool passed = true;
  uint64_t checked = 0;
  uint64_t total = 0;
  std::optional<Subspace> mismatch;  // first in lattice order
  int target_rank = 0, rep_rank = 0;

  json to_json() const {
    json out{{"passed", passed}, {"checked", checked}, {"subspaces", total}};
    if (mismatch) {
      out["mismatch"] = json{{"rows", rows_json(mismatch->ops(), mismatch->rows())},
                             {"target_rank", target_rank},
                             {"representation_rank", rep_rank}};
    }
    return out;
  }
};

/// Rank equality of `target` and M_G on every subspace.
inline VerifyReport verify_representation(const Oracle& target, const Oracle& rep, uint32_t shards, Budget& budget) {
  if (target->q() != rep->q() || target->n() != rep->n()) {
    throw Error(ErrorCode::kGroundMismatch, "target and representation live on different ground spaces");
  }
  struct Part {
    uint64_t checked = 0;
    uint64_t first_bad = UINT64_MAX;  // visiting index
    std::optional<Subspace> bad;
    int ra = 0, rb = 0;
  };
  shards = std::max<uint32_t>(1, shards);
  std::atomic<uint64_t> stop_at{UINT64_MAX};
  auto parts = run_shards<Part>(shards, [&](uint32_t shard) {
    Part p;
    uint64_t idx = shard;
    for_each_subspace(target->ops(), 0, target->n(), shard, shards, [&](std::span<const uint64_t> rows) {
      if (idx > stop_at.load(std::memory_order_relaxed)) return false;
      if (++p.checked % 256 == 0) budget.tick(256);
      const int a = target->rank_rows(rows), b = rep->rank_rows(rows);
      if (a != b) {
        p.first_bad = idx;
        p.bad = Subspace::from_packed(target->ops(), rows);
        p.ra = a;
        p.rb = b;
        uint64_t cur = stop_at.load();
        while (idx < cur && !stop_at.compare_exchange_weak(cur, idx)) {
        }
        return false;
      }
      idx += shards;
      return true;
    });
    return p;
  });
  VerifyReport out;
  out.total = subspace_count(target->q(), target->n());
  const Part* worst = nullptr;
  for (const auto& p : parts) {
    out.checked += p.checked;
    if (p.bad && (!worst || p.first_bad < worst->first_bad)) worst = &p;
  }
  if (worst) {
    // Position of the mismatch in lattice order; the raw work count depends on sharding.
    out.checked = worst->first_bad + 1;
    out.passed = false;
    out.mismatch = worst->bad;
    out.target_rank = worst->ra;
    out.rep_rank = worst->rb;
  }
  return out;
}

inline VerifyReport verify_representation(const Oracle& target, const FieldPtr& ext, const Matrix& g, uint32_t shards,
                                          Budget& budget) {
  return verify_representation(target, from_representation(ext, target->q(), g, target->n()), shards, budget);
}

}  // namespace qmat
