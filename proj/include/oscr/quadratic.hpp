#pragma once

#include <vector>

#include "oscr/check.hpp"
#include "oscr/linalg.hpp"

namespace oscr {

// Nondegenerate orthogonal space (U, beta) over F_q, beta given by a
// symmetric invertible Gram matrix in the working basis. t = 0 is allowed
// (empty space, discriminant 1).
struct OrthogonalSpace {
  const Fq* F = nullptr;
  int t = 0;
  MatrixFq gram;

  OrthogonalSpace() = default;
  OrthogonalSpace(const Fq& field, MatrixFq g) : F(&field), t(g.rows()), gram(std::move(g)) {
    require(gram.is_symmetric(), "OrthogonalSpace: gram not symmetric");
    require(t == 0 || gram.det() != 0, "OrthogonalSpace: gram is degenerate");
  }

  // Square-class representative of det(gram); 1 for t = 0.
  int disc() const { return t == 0 ? 1 : F->square_class(gram.det()); }

  int beta(const std::vector<int>& u, const std::vector<int>& v) const {
    return eval_pairing(gram, u, v);
  }
  int quad(const std::vector<int>& v) const { return eval_form(gram, v); }

  bool operator==(const OrthogonalSpace& o) const { return gram == o.gram; }
};

// diag(1, ..., 1, d) with d replaced by its square-class representative.
inline OrthogonalSpace standard_space(const Fq& F, int t, int d) {
  require(t >= 1, "standard_space: t must be positive");
  require(d != 0, "standard_space: discriminant must be nonzero");
  std::vector<int> diag(t, 1);
  diag[t - 1] = F.square_class(d);
  return OrthogonalSpace(F, MatrixFq::diagonal(F, diag));
}

// The hyperbolic plane: t = 2, discriminant the class of -1.
inline OrthogonalSpace hyperbolic_plane(const Fq& F) {
  return standard_space(F, 2, F.neg(1));
}

// {u in U : beta(u, s) = 0 for all s in S}.
inline SubspaceFq perp(const OrthogonalSpace& U, const SubspaceFq& S) {
  require(S.ambient() == U.t, "perp: ambient mismatch");
  return SubspaceFq::kernel(S.basis() * U.gram);
}

inline bool is_totally_isotropic(const OrthogonalSpace& U, const SubspaceFq& S) {
  return (S.basis() * U.gram * S.basis().transpose()).is_zero();
}

// All k-dimensional subspaces of F^t, enumerated through reduced row echelon
// representatives (each subspace appears exactly once).
inline std::vector<SubspaceFq> enumerate_subspaces(const Fq& F, int t, int k) {
  require(0 <= k && k <= t, "enumerate_subspaces: bad dimension");
  std::vector<SubspaceFq> out;
  if (k == 0) {
    out.push_back(SubspaceFq(F, t));
    return out;
  }
  std::vector<int> piv(k);
  // Choose pivot columns piv[0] < ... < piv[k-1], then run an odometer over
  // the free entries: (i, j) with j > piv[i], j not a pivot column.
  auto next_combination = [&](std::vector<int>& c) {
    int i = k - 1;
    while (i >= 0 && c[i] == t - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
  };
  for (int i = 0; i < k; ++i) piv[i] = i;
  do {
    std::vector<bool> is_piv(t, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < t; ++j)
        if (!is_piv[j]) free_pos.push_back({i, j});
    std::vector<int> vals(free_pos.size(), 0);
    while (true) {
      MatrixFq B(F, k, t);
      for (int i = 0; i < k; ++i) B.at(i, piv[i]) = 1;
      for (size_t m = 0; m < free_pos.size(); ++m) B.at(free_pos[m].first, free_pos[m].second) = vals[m];
      out.push_back(SubspaceFq::span(B));
      size_t i = 0;
      while (i < vals.size() && ++vals[i] == F.q) vals[i++] = 0;
      if (i == vals.size()) break;
    }
  } while (next_combination(piv));
  return out;
}

// All totally isotropic k-dimensional subspaces.
inline std::vector<SubspaceFq> enumerate_isotropic(const OrthogonalSpace& U, int k) {
  std::vector<SubspaceFq> out;
  for (SubspaceFq& S : enumerate_subspaces(*U.F, U.t, k))
    if (is_totally_isotropic(U, S)) out.push_back(std::move(S));
  return out;
}

inline int witt_index(const OrthogonalSpace& U) {
  int w = 0;
  for (int k = 1; 2 * k <= U.t; ++k) {
    if (enumerate_isotropic(U, k).empty()) break;
    w = k;
  }
  return w;
}

// N^perp / N for a totally isotropic N, realized concretely: complete N to
// hyperbolic planes H = span(u_i, u'_i) with beta(u_i, u'_j) = delta_ij and
// beta(u'_i, u'_j) = 0, then take the orthogonal complement U' = H^perp.
// proj maps N^perp onto the coordinates of U' (kills N), lift embeds U' back.
struct QuotientSpace {
  OrthogonalSpace space;   // U' with the Gram matrix of its chosen basis
  MatrixFq lift;           // t x (t-2k), columns = basis of U' inside U
  MatrixFq proj;           // (t-2k) x t, defined on N^perp
  MatrixFq hyper_partners; // t x k, columns u'_i
};

inline QuotientSpace quotient_space(const OrthogonalSpace& U, const SubspaceFq& N) {
  const Fq& F = *U.F;
  require(is_totally_isotropic(U, N), "quotient_space: N is not totally isotropic");
  int t = U.t, k = N.dim();
  // Partners: first solve beta(u_i, w_j) = delta_ij, then correct
  // w_j -> w_j - sum_i 2^{-1} beta(w_i, w_j) u_i to zero the mutual pairings.
  MatrixFq pairing = N.basis() * U.gram;  // k x t, row i = beta(u_i, .)
  MatrixFq W(F, t, k);
  for (int j = 0; j < k; ++j) {
    std::vector<int> e(k, 0);
    e[j] = 1;
    auto w = solve(pairing, e);
    require(w.has_value(), "quotient_space: hyperbolic completion failed");
    W.set_col(j, *w);
  }
  MatrixFq partners(F, t, k);
  int half = F.half();
  for (int j = 0; j < k; ++j) {
    auto wj = W.col(j);
    std::vector<int> uj = wj;
    for (int i = 0; i < k; ++i) {
      int alpha = F.mul(half, U.beta(W.col(i), wj));
      auto ui = N.basis_vector(i);
      for (int m = 0; m < t; ++m) uj[m] = F.sub(uj[m], F.mul(alpha, ui[m]));
    }
    partners.set_col(j, uj);
  }
  // H = N + partners; U' = H^perp.
  SubspaceFq H = SubspaceFq::span(N.basis()).sum(SubspaceFq::span(partners.transpose()));
  require(H.dim() == 2 * k, "quotient_space: hyperbolic block is degenerate");
  SubspaceFq Uprime = perp(U, H);
  require(Uprime.dim() == t - 2 * k, "quotient_space: wrong complement dimension");

  QuotientSpace out;
  out.hyper_partners = partners;
  out.lift = Uprime.basis().transpose();
  out.space = OrthogonalSpace(F, Uprime.basis() * U.gram * out.lift);
  // Coordinates in the basis (u_i | u'_i | U'-basis); rows of the inverse
  // select coordinates, the last t-2k rows give the projection.
  MatrixFq B(F, t, t);
  for (int i = 0; i < k; ++i) B.set_col(i, N.basis_vector(i));
  for (int i = 0; i < k; ++i) B.set_col(k + i, partners.col(i));
  for (int i = 0; i < t - 2 * k; ++i) B.set_col(2 * k + i, out.lift.col(i));
  MatrixFq Binv = B.inverse();
  out.proj = MatrixFq(F, t - 2 * k, t);
  for (int i = 0; i < t - 2 * k; ++i) out.proj.set_row(i, Binv.row(2 * k + i));
  return out;
}

// N_F = range(F) cap range(F)^perp: the radical of the range of an operator
// F in Hom(X -> U), as a subspace of U.
inline SubspaceFq radical_of_range(const OrthogonalSpace& U, const MatrixFq& Fmat) {
  require(Fmat.rows() == U.t, "radical_of_range: operator does not land in U");
  SubspaceFq range = SubspaceFq::image(Fmat);
  return range.intersect(perp(U, range));
}

// |O(U)| by direct enumeration of all t x t matrices (guarded; intended for
// t <= 3 at desk-scale q).
inline long long orthogonal_group_order(const OrthogonalSpace& U) {
  const Fq& F = *U.F;
  if (U.t == 0) return 1;
  require(pow_capped(F.q, U.t * U.t, 25000000) <= 25000000,
          "orthogonal_group_order: enumeration too large");
  long long count = 0;
  int cells = U.t * U.t;
  std::vector<int> v(cells, 0);
  while (true) {
    MatrixFq M(F, U.t, U.t);
    for (int i = 0; i < U.t; ++i)
      for (int j = 0; j < U.t; ++j) M.at(i, j) = v[i * U.t + j];
    if (M.transpose() * U.gram * M == U.gram) ++count;
    int i = 0;
    while (i < cells && ++v[i] == F.q) v[i++] = 0;
    if (i == cells) break;
  }
  return count;
}

}  // namespace oscr
