#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oscr/oscillator.hpp"

namespace oscr {

// Symmetric matrix acting as a character of the unipotent subgroup, with rank
// and discriminant taken through the radical quotient.
struct NWeight {
  MatrixFq B;
  int rank = 0;
  int disc = 1;  // square-class representative; 1 for rank 0
};

inline NWeight nweight_of(const MatrixFq& B) {
  FormDiagonalization fd = diagonalize_form(B);
  return {B, fd.rank, fd.disc};
}

inline NWeight weight_of_point(const Context& ctx, std::uint64_t idx) {
  return nweight_of(ctx.weight_of(idx));
}

namespace detail {

inline std::vector<int> weight_key(const MatrixFq& B) {
  std::vector<int> key;
  for (int i = 0; i < B.rows(); ++i)
    for (int j = i; j < B.cols(); ++j) key.push_back(B.at(i, j));
  return key;
}

}  // namespace detail

// All indices whose weight matrix equals B; scans the whole index space.
inline std::vector<std::uint64_t> weight_eigenspace_indices(const Context& ctx,
                                                            const MatrixFq& B) {
  require(ctx.dim() <= 2000000, "weight_eigenspace: index space too large");
  std::vector<std::uint64_t> out;
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx)
    if (ctx.weight_of(idx) == B) out.push_back(idx);
  return out;
}

inline SubspaceCyclo weight_eigenspace(const Context& ctx, const MatrixFq& B) {
  SubspaceCyclo S(ctx);
  for (std::uint64_t idx : weight_eigenspace_indices(ctx, B))
    S.insert(PsiVector::delta(ctx, idx));
  return S;
}

struct SpectrumEntry {
  NWeight weight;
  int multiplicity = 0;
};

struct SpectrumReport {
  std::vector<SpectrumEntry> entries;  // sorted by (rank, matrix key)
  int max_rank = 0;
  std::vector<int> discs_at_max_rank;  // distinct square classes, sorted

  std::vector<int> ranks() const {
    std::vector<int> r;
    for (const auto& e : entries)
      if (r.empty() || r.back() != e.weight.rank) r.push_back(e.weight.rank);
    return r;
  }
};

// Checks invariance of K under every upper-unipotent generator; those
// operators are diagonal, so containment tests are cheap.
inline bool is_unipotent_invariant(const SubspaceCyclo& K, std::string* witness = nullptr) {
  const Context& ctx = K.ctx();
  for (const auto& g : sp_generating_set(*ctx.F, ctx.n)) {
    if (g.kind != SympGenerator::Kind::UpperUnipotent) continue;
    for (int i = 0; i < K.dim(); ++i) {
      if (K.contains(apply_generator(g, K.to_psi(i)))) continue;
      if (witness) *witness = "unipotent generator moves basis row " + std::to_string(i);
      return false;
    }
  }
  return true;
}

// Weight decomposition of a unipotent-invariant subspace. The weights
// partition the index set and K splits as the direct sum of its weight
// components, so component dimensions are the ranks of coordinate-masked
// basis rows.
inline SpectrumReport spectrum_of_subspace(const SubspaceCyclo& K) {
  const Context& ctx = K.ctx();
  std::string witness;
  require(is_unipotent_invariant(K, &witness),
          "spectrum_of_subspace: subspace is not unipotent-invariant: " + witness);
  std::map<std::vector<int>, std::pair<MatrixFq, SubspaceCyclo>> buckets;
  for (int i = 0; i < K.dim(); ++i) {
    std::map<std::vector<int>, PsiVector> masked;
    PsiVector row = K.to_psi(i);
    for (const auto& [idx, a] : row.amp) {
      MatrixFq B = ctx.weight_of(idx);
      auto key = detail::weight_key(B);
      auto [it, inserted] = masked.try_emplace(key, PsiVector(ctx));
      it->second.add(idx, a);
      if (inserted) buckets.try_emplace(std::move(key), B, SubspaceCyclo(ctx));
    }
    for (auto& [key, part] : masked) buckets.at(key).second.insert(part);
  }
  SpectrumReport rep;
  int total = 0;
  for (auto& [key, bucket] : buckets) {
    SpectrumEntry e{nweight_of(bucket.first), bucket.second.dim()};
    if (e.multiplicity > 0) {
      total += e.multiplicity;
      rep.entries.push_back(std::move(e));
    }
  }
  require(total == K.dim(), "spectrum_of_subspace: weight multiplicities do not add up");
  std::stable_sort(rep.entries.begin(), rep.entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) {
                     if (a.weight.rank != b.weight.rank) return a.weight.rank < b.weight.rank;
                     return detail::weight_key(a.weight.B) < detail::weight_key(b.weight.B);
                   });
  for (const auto& e : rep.entries) rep.max_rank = std::max(rep.max_rank, e.weight.rank);
  for (const auto& e : rep.entries)
    if (e.weight.rank == rep.max_rank) rep.discs_at_max_rank.push_back(e.weight.disc);
  std::sort(rep.discs_at_max_rank.begin(), rep.discs_at_max_rank.end());
  rep.discs_at_max_rank.erase(
      std::unique(rep.discs_at_max_rank.begin(), rep.discs_at_max_rank.end()),
      rep.discs_at_max_rank.end());
  return rep;
}

// Spectrum of the whole space: multiplicities are plain index counts.
inline SpectrumReport full_spectrum(const Context& ctx) {
  require(ctx.dim() <= 2000000, "full_spectrum: index space too large");
  std::map<std::vector<int>, std::pair<MatrixFq, int>> buckets;
  for (std::uint64_t idx = 0; idx < ctx.dim(); ++idx) {
    MatrixFq B = ctx.weight_of(idx);
    auto [it, inserted] = buckets.try_emplace(detail::weight_key(B), B, 0);
    ++it->second.second;
  }
  SpectrumReport rep;
  for (auto& [key, bucket] : buckets)
    rep.entries.push_back({nweight_of(bucket.first), bucket.second});
  std::stable_sort(rep.entries.begin(), rep.entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) {
                     if (a.weight.rank != b.weight.rank) return a.weight.rank < b.weight.rank;
                     return detail::weight_key(a.weight.B) < detail::weight_key(b.weight.B);
                   });
  for (const auto& e : rep.entries) rep.max_rank = std::max(rep.max_rank, e.weight.rank);
  for (const auto& e : rep.entries)
    if (e.weight.rank == rep.max_rank) rep.discs_at_max_rank.push_back(e.weight.disc);
  std::sort(rep.discs_at_max_rank.begin(), rep.discs_at_max_rank.end());
  rep.discs_at_max_rank.erase(
      std::unique(rep.discs_at_max_rank.begin(), rep.discs_at_max_rank.end()),
      rep.discs_at_max_rank.end());
  return rep;
}

struct RankContiguity {
  bool contiguous = true;
  std::vector<int> ranks;
};

// Rank set of the spectrum of an invariant subspace; verifies invariance
// under the full generating set first.
inline RankContiguity rank_contiguity_check(const SubspaceCyclo& K) {
  const Context& ctx = K.ctx();
  for (const auto& g : sp_generating_set(*ctx.F, ctx.n))
    for (int i = 0; i < K.dim(); ++i)
      require(K.contains(apply_generator(g, K.to_psi(i))),
              "rank_contiguity_check: subspace is not invariant");
  RankContiguity out;
  if (K.dim() == 0) return out;
  out.ranks = spectrum_of_subspace(K).ranks();
  for (size_t i = 1; i < out.ranks.size(); ++i)
    if (out.ranks[i] != out.ranks[i - 1] + 1) out.contiguous = false;
  return out;
}

}  // namespace oscr
