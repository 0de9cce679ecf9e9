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

// Splitting a q-matroid into trivial, free and irreducible summands, plus
// the anchored search for linear equivalences and the spread constructions.

#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmat/budget.hpp"
#include "qmat/dsum.hpp"
#include "qmat/operators.hpp"
#include "qmat/oracle.hpp"
#include "qmat/subspace.hpp"
#include "qmat/zflats.hpp"

namespace qmat {

// ---------------------------------------------------------------------------
// Split-off

struct SplitOff {
  uint32_t l = 0;  // dim cl(0)
  uint32_t f = 0;  // dim E - dim cyc(E)
  Subspace loops;  // cl(0)
  Subspace cyc;    // cyc(E)
  std::vector<uint64_t> gamma;  // cyc(E) = cl(0) + Gamma
  std::vector<uint64_t> delta;  // E = cyc(E) + Delta
  Oracle core;                  // M|Gamma in the coordinates of `gamma`; null when Gamma = 0
};

/// Complements are greedy over canonical rows, so the choice is
/// deterministic.
inline SplitOff split_trivial_free(const Oracle& m) {
  SplitOff s;
  s.loops = loop_space(*m);
  s.cyc = cyc_top(*m);
  s.l = s.loops.dim();
  s.f = m->n() - s.cyc.dim();
  s.gamma = complement_basis(s.loops, s.cyc);
  s.delta = complement_basis(s.cyc, Subspace::full(m->q(), m->n()));
  if (!s.gamma.empty()) s.core = restriction(m, s.gamma);
  return s;
}

/// |Z(M)| = 1 means M is trivial plus free; returns (l, f) in that case.
inline std::optional<std::pair<uint32_t, uint32_t>> single_flat_shortcut(const CyclicFlatFamily& fam) {
  if (fam.size() != 1) return std::nullopt;
  const uint32_t l = fam.members[0].space.dim();
  return std::pair{l, fam.n - l};
}

// ---------------------------------------------------------------------------
// Irreducibility

/// A pair of members (Z1, Z2) with Z1 + Z2 = E direct, r1 + r2 = r(E), and
/// (A, B) -> A + B a bijection from Z(M|Z1) x Z(M|Z2) onto Z(M). The family
/// must be Z(M) of a full matroid. Pairs are scanned in member order
/// (dimension first), or backwards when `reverse` is set.
inline std::optional<std::pair<size_t, size_t>> find_split(const CyclicFlatFamily& fam, int full_rank,
                                                            bool reverse = false) {
  const size_t k = fam.size();
  std::vector<std::vector<size_t>> below(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (fam.members[i].space.contains(fam.members[j].space)) below[i].push_back(j);
    }
  }
  auto try_pair = [&](size_t i, size_t j) {
    const auto& z1 = fam.members[i];
    const auto& z2 = fam.members[j];
    if (z1.space.is_zero() || z2.space.is_zero()) return false;
    if (z1.space.dim() + z2.space.dim() != fam.n) return false;
    if (z1.rank + z2.rank != full_rank) return false;
    if (!sum(z1.space, z2.space).is_full()) return false;
    if (below[i].size() * below[j].size() != k) return false;
    for (size_t a : below[i]) {
      for (size_t b : below[j]) {
        if (!fam.contains(sum(fam.members[a].space, fam.members[b].space))) return false;
      }
    }
    return true;
  };
  std::vector<std::pair<size_t, size_t>> order;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) order.emplace_back(i, j);
  }
  if (reverse) std::reverse(order.begin(), order.end());
  for (auto [i, j] : order) {
    if (try_pair(i, j)) return std::pair{i, j};
  }
  return std::nullopt;
}

struct IrreducibilityResult {
  bool irreducible = false;
  std::string reason;
  std::optional<std::pair<FamilyMember, FamilyMember>> witness;
};

inline IrreducibilityResult is_irreducible(const Oracle& m, uint32_t shards, Budget& budget) {
  if (m->n() == 0) throw Error(ErrorCode::kZeroGround, "irreducibility needs a nonzero ground space");
  IrreducibilityResult res;
  if (m->n() == 1) {
    res.irreducible = true;
    res.reason = "one-dimensional ground space";
    return res;
  }
  if (!is_full(*m)) {
    res.reason = "not full: a trivial or free summand splits off";
    return res;
  }
  const auto fam = compute_zflats(m, shards, budget);
  if (auto w = find_split(fam, m->rank_full())) {
    res.reason = "cyclic flats split as a product";
    res.witness = std::pair{fam.members[w->first], fam.members[w->second]};
    return res;
  }
  res.irreducible = true;
  res.reason = "no splitting pair of cyclic flats";
  return res;
}

inline IrreducibilityResult is_irreducible(const Oracle& m) {
  Budget b;
  return is_irreducible(m, 1, b);
}

// ---------------------------------------------------------------------------
// Decomposition

enum class ComponentTag { kTrivial, kFree, kIrreducible };

inline std::string tag_name(ComponentTag t) {
  switch (t) {
    case ComponentTag::kTrivial: return "trivial";
    case ComponentTag::kFree: return "free";
    case ComponentTag::kIrreducible: return "irreducible";
  }
  return "?";
}

struct Component {
  ComponentTag tag = ComponentTag::kIrreducible;
  std::vector<uint64_t> ground_rows;  // in the input's coordinates
  Oracle oracle;                      // restriction to ground_rows, coordinate i = ground_rows[i]
  uint32_t dim = 0;
  int rank = 0;
  std::vector<FamilyMember> zflats;  // irreducible parts only, component coordinates

  std::string label(uint32_t q) const {
    switch (tag) {
      case ComponentTag::kTrivial: return "U_{0,1}";
      case ComponentTag::kFree: return "U_{1,1}";
      case ComponentTag::kIrreducible: break;
    }
    // A full matroid whose only cyclic flats are 0 and E is uniform.
    if (zflats.size() == 2) {
      return "U_" + std::to_string(rank) + "(F_" + std::to_string(q) + "^" + std::to_string(dim) + ")";
    }
    return "Irr(dim " + std::to_string(dim) + ", rank " + std::to_string(rank) + ")";
  }

  json spec(uint32_t q) const {
    if (tag != ComponentTag::kIrreducible) {
      return json{{"kind", "uniform"}, {"q", q}, {"n", 1}, {"k", tag == ComponentTag::kFree ? 1 : 0}};
    }
    json flats = json::array();
    const VecOps ops(q, dim);
    for (const auto& z : zflats) flats.push_back(json{{"rows", rows_json(ops, z.space.rows())}, {"rank", z.rank}});
    return json{{"kind", "zdefined"}, {"q", q}, {"n", dim}, {"flats", flats}};
  }
};

struct DecompositionReport {
  uint32_t q = 2;
  uint32_t n = 0;
  json input;
  uint32_t l = 0;
  uint32_t f = 0;
  std::vector<Component> components;  // trivial, free, then irreducible by (dim, rank)
  json tree;

  std::vector<Component> irreducible() const {
    std::vector<Component> out;
    for (const auto& c : components) {
      if (c.tag == ComponentTag::kIrreducible) out.push_back(c);
    }
    return out;
  }

  std::string summary() const {
    std::string s;
    for (const auto& c : components) {
      if (!s.empty()) s += " ⊕ ";
      s += c.label(q);
    }
    return s;
  }

  json to_json() const {
    const VecOps ops(q, n);
    json comps = json::array();
    for (const auto& c : components) {
      comps.push_back(json{{"ground_rows", rows_json(ops, c.ground_rows)},
                           {"tag", tag_name(c.tag)},
                           {"dim", c.dim},
                           {"rank", c.rank},
                           {"label", c.label(q)},
                           {"spec", c.spec(q)}});
    }
    return json{{"input", input}, {"q", q},         {"n", n},       {"l", l},
                {"f", f},         {"components", comps}, {"tree", tree}, {"summary", summary()}};
  }
};

struct DecomposeOptions {
  uint32_t shards = 1;
  bool reverse_scan = false;  // scan witness pairs backwards; only labels may change
};

namespace detail {

inline std::vector<uint64_t> embed_rows(const VecOps& inner, const std::vector<uint64_t>& basis,
                                        const std::vector<uint64_t>& rows, const VecOps& local) {
  std::vector<uint64_t> out;
  for (uint64_t r : rows) {
    uint64_t v = 0;
    for (uint32_t i = 0; i < basis.size(); ++i) {
      const uint32_t c = local.get(r, i);
      if (c) v = inner.axpy(v, c, basis[i]);
    }
    out.push_back(v);
  }
  return out;
}

// Splits a full matroid given by its family; `basis` maps family
// coordinates into the input's coordinates.
inline json split_full(const Oracle& input, const CyclicFlatFamily& fam, const std::vector<uint64_t>& basis,
                       const DecomposeOptions& opt, Budget& budget, std::vector<Component>& out) {
  budget.tick();
  const VecOps local(fam.q, fam.n);
  const int rank = fam.members[fam.greatest].rank;
  json node{{"dim", fam.n}, {"rank", rank}, {"ground_rows", rows_json(input->ops(), basis)}};
  auto w = fam.n >= 2 ? find_split(fam, rank, opt.reverse_scan) : std::nullopt;
  if (!w) {
    Component c;
    c.tag = ComponentTag::kIrreducible;
    c.ground_rows = basis;
    c.oracle = restriction(input, basis);
    c.dim = fam.n;
    c.rank = rank;
    c.zflats = fam.members;
    out.push_back(std::move(c));
    node["tag"] = "irreducible";
    return node;
  }
  const auto& z1 = fam.members[w->first];
  const auto& z2 = fam.members[w->second];
  node["split"] = json{{"z1", rows_json(local, z1.space.rows())},
                       {"z2", rows_json(local, z2.space.rows())},
                       {"ranks", {z1.rank, z2.rank}}};
  json children = json::array();
  for (size_t idx : {w->first, w->second}) {
    const auto sub = restrict_family(fam, idx);
    const auto sub_basis = embed_rows(input->ops(), basis, fam.members[idx].space.rows(), local);
    children.push_back(split_full(input, sub, sub_basis, opt, budget, out));
  }
  node["children"] = children;
  return node;
}

}  // namespace detail

inline DecompositionReport decompose(const Oracle& m, const DecomposeOptions& opt, Budget& budget) {
  if (m->n() == 0) throw Error(ErrorCode::kZeroGround, "cannot decompose a zero ground space");
  DecompositionReport rep;
  rep.q = m->q();
  rep.n = m->n();
  rep.input = m->to_spec();
  const SplitOff s = split_trivial_free(m);
  rep.l = s.l;
  rep.f = s.f;
  const VecOps& ops = m->ops();
  for (uint64_t r : s.loops.rows()) {
    Component c;
    c.tag = ComponentTag::kTrivial;
    c.ground_rows = {r};
    c.oracle = uniform(m->q(), 1, 0);
    c.dim = 1;
    rep.components.push_back(std::move(c));
  }
  for (uint64_t r : s.delta) {
    Component c;
    c.tag = ComponentTag::kFree;
    c.ground_rows = {r};
    c.oracle = uniform(m->q(), 1, 1);
    c.dim = 1;
    c.rank = 1;
    rep.components.push_back(std::move(c));
  }
  rep.tree = json{{"l", s.l},
                  {"f", s.f},
                  {"loops", rows_json(ops, s.loops.rows())},
                  {"gamma", rows_json(ops, s.gamma)},
                  {"delta", rows_json(ops, s.delta)},
                  {"core", nullptr}};
  if (s.core) {
    const auto fam = compute_zflats(s.core, opt.shards, budget);
    std::vector<Component> irr;
    rep.tree["core"] = detail::split_full(m, fam, s.gamma, opt, budget, irr);
    std::stable_sort(irr.begin(), irr.end(), [](const Component& a, const Component& b) {
      return std::pair{a.dim, a.rank} < std::pair{b.dim, b.rank};
    });
    for (auto& c : irr) rep.components.push_back(std::move(c));
  }
  return rep;
}

inline DecompositionReport decompose(const Oracle& m, const DecomposeOptions& opt = {}) {
  Budget b;
  return decompose(m, opt, b);
}

/// The components summed back together (left fold) and the input pulled back
/// to the component coordinates; the two must be rank-equal.
inline std::pair<Oracle, Oracle> resum(const Oracle& m, const DecompositionReport& rep,
                                       SumStrategy strategy = SumStrategy::kZBased) {
  std::vector<Oracle> parts;
  std::vector<uint64_t> basis;
  for (const auto& c : rep.components) {
    parts.push_back(c.oracle);
    basis.insert(basis.end(), c.ground_rows.begin(), c.ground_rows.end());
  }
  Oracle summed = parts.size() == 1 ? parts[0] : direct_sum(parts, strategy);
  return {summed, restriction(m, basis)};
}

inline CheckReport verify_decomposition(const Oracle& m, const DecompositionReport& rep, bool exhaustive,
                                        Budget& budget, uint64_t seed = 0, uint64_t samples = 10000) {
  auto [summed, pulled] = resum(m, rep);
  return compare_ranks(*summed, *pulled, exhaustive, budget, seed, samples);
}

// ---------------------------------------------------------------------------
// Equivalence search

struct EquivalenceResult {
  bool found = false;
  bool exhausted = false;  // every candidate was tried; "none" is then a proof
  uint64_t candidates = 0;
  std::vector<uint64_t> columns;  // alpha e_i, when found
  std::string note;

  std::string outcome() const { return found ? "found" : (exhausted ? "exhausted-none" : "none"); }
};

namespace detail {

// A partially defined linear map kept in reduced echelon form together with
// the images of its rows.
class PartialMap {
 public:
  explicit PartialMap(const VecOps& ops) : ops_(&ops) {}

  // false if v is already in the domain.
  bool add(uint64_t v, uint64_t img) {
    reduce(v, img);
    if (!v) return false;
    const uint32_t p = ops_->lead(v);
    const uint32_t inv = ops_->inv(ops_->get(v, p));
    v = ops_->scale(v, inv);
    img = ops_->scale(img, inv);
    for (auto& r : rows_) {
      const uint32_t c = ops_->get(r.vec, p);
      if (c) {
        r.vec = ops_->axpy(r.vec, ops_->q() - c, v);
        r.img = ops_->axpy(r.img, ops_->q() - c, img);
      }
    }
    rows_.push_back({p, v, img});
    return true;
  }

  /// alpha(v); v must lie in the domain.
  uint64_t apply(uint64_t v) const {
    uint64_t img = 0;
    reduce(v, img);
    return ops_->neg(img);
  }

 private:
  struct Row {
    uint32_t lead;
    uint64_t vec, img;
  };
  // v -= sum c_r r.vec; img -= sum c_r r.img.
  void reduce(uint64_t& v, uint64_t& img) const {
    for (const auto& r : rows_) {
      const uint32_t c = ops_->get(v, r.lead);
      if (c) {
        v = ops_->axpy(v, ops_->q() - c, r.vec);
        img = ops_->axpy(img, ops_->q() - c, r.img);
      }
    }
  }

  const VecOps* ops_;
  std::vector<Row> rows_;
};

inline std::vector<uint64_t> all_vectors_of(const Subspace& z) {
  const VecOps& ops = z.ops();
  std::vector<uint64_t> out{0};
  for (uint64_t r : z.rows()) {
    const size_t before = out.size();
    for (uint32_t c = 1; c < ops.q(); ++c) {
      for (size_t i = 0; i < before; ++i) out.push_back(ops.axpy(out[i], c, r));
    }
  }
  std::sort(out.begin(), out.end(), [&](uint64_t a, uint64_t b) { return ops.index_of(a) < ops.index_of(b); });
  return out;
}

}  // namespace detail

/// Looks for alpha in GL(n, q) with rank2(alpha V) = rank1(V) for all V.
/// Candidates: images of a span-increasing chain of cyclic flats of M1
/// (anchors) are chosen among members of Z(M2) with the same dimension and
/// rank, with the anchor bases sent to independent vectors; the rest of a
/// basis goes anywhere independent. Each candidate must map Z(M1) into Z(M2)
/// rank-preservingly and is then checked on the whole lattice.
inline EquivalenceResult equivalence_search(const Oracle& m1, const Oracle& m2, Budget& budget, uint32_t shards = 1) {
  if (m1->q() != m2->q() || m1->n() != m2->n()) throw Error(ErrorCode::kGroundMismatch, "different ground spaces");
  EquivalenceResult res;
  const VecOps& ops = m1->ops();
  const uint32_t n = ops.n();
  if (m1->rank_full() != m2->rank_full()) {
    res.exhausted = true;
    res.note = "ranks of E differ";
    return res;
  }
  std::vector<uint64_t> identity;
  for (uint32_t i = 0; i < n; ++i) identity.push_back(ops.unit(i));
  // Cheap first try; not counted as an anchored candidate.
  if (equivalent_under_columns(*m1, *m2, identity, budget)) {
    res.found = true;
    res.candidates = 1;
    res.columns = identity;
    res.note = "identity";
    return res;
  }
  const auto fam1 = compute_zflats(m1, shards, budget);
  const auto fam2 = compute_zflats(m2, shards, budget);
  auto profile1 = family_profile(fam1), profile2 = family_profile(fam2);
  if (profile1 != profile2) {
    res.exhausted = true;
    res.note = "cyclic-flat profiles differ";
    return res;
  }

  struct Anchor {
    size_t member;
    std::vector<uint64_t> known;  // rows of Z cap (span of earlier anchors)
    std::vector<uint64_t> fresh;  // completes `known` to a basis of Z
  };
  std::vector<Anchor> anchors;
  Subspace spanned(ops.q(), n);
  for (size_t i = 0; i < fam1.size() && !spanned.is_full(); ++i) {
    const Subspace& z = fam1.members[i].space;
    if (z.is_zero() || z.is_full() || spanned.contains(z)) continue;
    const Subspace inside = intersect(z, spanned);
    anchors.push_back({i, inside.rows(), complement_basis(inside, z)});
    spanned = sum(spanned, z);
  }
  const std::vector<uint64_t> extension = complement_basis(spanned, Subspace::full(ops.q(), n));
  const auto every_vector = detail::all_vectors_of(Subspace::full(ops.q(), n));
  std::vector<std::vector<uint64_t>> target_vectors(fam2.size());
  for (size_t j = 0; j < fam2.size(); ++j) target_vectors[j] = detail::all_vectors_of(fam2.members[j].space);

  std::vector<uint64_t> cols(n);
  auto finish = [&](const detail::PartialMap& map) {
    ++res.candidates;
    budget.tick();
    for (uint32_t i = 0; i < n; ++i) cols[i] = map.apply(ops.unit(i));
    for (const auto& z : fam1.members) {
      const Subspace img = apply_linear(cols, z.space, ops);
      const size_t j = fam2.index_of(img);
      if (j == kNoMember || fam2.members[j].rank != z.rank) return false;
    }
    return equivalent_under_columns(*m1, *m2, cols, budget);
  };

  // Assigns images to `vecs[pos..]` from `pool`, keeping the images
  // independent of what is already in the map.
  std::function<bool(const detail::PartialMap&, Reducer&, const std::vector<uint64_t>&, size_t,
                     const std::vector<uint64_t>&, const std::function<bool(const detail::PartialMap&, Reducer&)>&)>
      assign = [&](const detail::PartialMap& map, Reducer& images, const std::vector<uint64_t>& vecs, size_t pos,
                   const std::vector<uint64_t>& pool,
                   const std::function<bool(const detail::PartialMap&, Reducer&)>& then) -> bool {
    if (pos == vecs.size()) return then(map, images);
    for (uint64_t x : pool) {
      if (!x || images.contains(x)) continue;
      Reducer next_images = images;
      next_images.insert(x);
      detail::PartialMap next = map;
      next.add(vecs[pos], x);
      if (assign(next, next_images, vecs, pos + 1, pool, then)) return true;
    }
    return false;
  };

  std::function<bool(const detail::PartialMap&, Reducer&, size_t)> place = [&](const detail::PartialMap& map,
                                                                              Reducer& images, size_t ai) -> bool {
    if (ai == anchors.size()) {
      return assign(map, images, extension, 0, every_vector,
                    [&](const detail::PartialMap& full, Reducer&) { return finish(full); });
    }
    const Anchor& a = anchors[ai];
    const auto& z = fam1.members[a.member];
    for (size_t j = 0; j < fam2.size(); ++j) {
      const auto& t = fam2.members[j];
      if (t.space.dim() != z.space.dim() || t.rank != z.rank) continue;
      bool fits = true;
      for (uint64_t v : a.known) fits = fits && t.space.contains(map.apply(v));
      if (!fits) continue;
      if (assign(map, images, a.fresh, 0, target_vectors[j],
                 [&](const detail::PartialMap& next, Reducer& next_images) { return place(next, next_images, ai + 1); })) {
        return true;
      }
    }
    return false;
  };

  detail::PartialMap start(ops);
  Reducer images(ops);
  if (place(start, images, 0)) {
    res.found = true;
    res.columns = cols;
    res.note = std::to_string(anchors.size()) + " anchors";
  } else {
    res.exhausted = true;
    res.note = std::to_string(anchors.size()) + " anchors, anchored candidate space searched";
  }
  return res;
}

inline EquivalenceResult equivalence_search(const Oracle& m1, const Oracle& m2) {
  Budget b;
  return equivalence_search(m1, m2, b);
}

// ---------------------------------------------------------------------------
// Spreads in GF(q)^4

using Mat2 = std::array<std::array<uint32_t, 2>, 2>;

inline bool is_partial_spread(const std::vector<Subspace>& members) {
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i].n() != 4 || members[i].dim() != 2) return false;
    for (size_t j = i + 1; j < members.size(); ++j) {
      if (!intersect(members[i], members[j]).is_zero()) return false;
    }
  }
  return true;
}

/// {rs(0|I)} together with rs(I|A) for each A in the spread set.
inline std::vector<Subspace> spread_from_matrices(uint32_t q, const std::vector<Mat2>& set) {
  const VecOps ops(q, 4);
  for (const auto& a : set) {
    for (const auto& row : a) {
      for (uint32_t e : row) {
        if (e >= q) throw Error(ErrorCode::kNotASpreadSet, "matrix entry outside GF(" + std::to_string(q) + ")");
      }
    }
  }
  for (size_t i = 0; i < set.size(); ++i) {
    for (size_t j = i + 1; j < set.size(); ++j) {
      auto d = [&](int r, int c) { return (set[i][r][c] + q - set[j][r][c]) % q; };
      if ((d(0, 0) * d(1, 1) + q * q - d(0, 1) * d(1, 0)) % q == 0) {
        throw Error(ErrorCode::kNotASpreadSet,
                    "matrices " + std::to_string(i) + " and " + std::to_string(j) + " have a singular difference");
      }
    }
  }
  std::vector<Subspace> out{span(q, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}})};
  for (const auto& a : set) out.push_back(span(q, 4, {{1, 0, a[0][0], a[0][1]}, {0, 1, a[1][0], a[1][1]}}));
  return out;
}

/// Multiplication matrices of GF(q^2) on the basis {1, w}; a spread set of
/// size q^2, hence a full spread of size q^2 + 1.
inline std::vector<Mat2> desarguesian_spread_set(uint32_t q) {
  auto f = create_field(q, 2);
  std::vector<Mat2> set;
  const FieldElement w = f->from_poly({0, 1});
  for (uint32_t x = 0; x < f->order(); ++x) {
    Mat2 a{};
    const FieldElement rows[2] = {FieldElement{x}, f->mul(FieldElement{x}, w)};
    for (int r = 0; r < 2; ++r) {
      auto c = f->to_poly(rows[r]);
      c.resize(2, 0);
      a[r] = {c[0], c[1]};
    }
    set.push_back(a);
  }
  return set;
}

inline std::vector<Subspace> desarguesian_spread(uint32_t q) { return spread_from_matrices(q, desarguesian_spread_set(q)); }

enum class SpreadKind { kDesarguesian, kFromMatrices };

inline std::vector<Subspace> spread_tools(uint32_t q, SpreadKind kind, const std::vector<Mat2>& data = {}) {
  return kind == SpreadKind::kDesarguesian ? desarguesian_spread(q) : spread_from_matrices(q, data);
}

}  // namespace qmat
