#pragma once

#include <initializer_list>
#include <vector>

#include "oscr/check.hpp"
#include "oscr/cyclotomic.hpp"
#include "oscr/fq.hpp"

namespace oscr {

// Dense matrix over F_q. Entries are element indices of the bound field.
class MatrixFq {
 public:
  MatrixFq() = default;
  MatrixFq(const Fq& F, int rows, int cols)
      : F_(&F), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {
    require(rows >= 0 && cols >= 0, "MatrixFq: negative shape");
  }
  MatrixFq(const Fq& F, int rows, int cols, std::initializer_list<int> vals) : MatrixFq(F, rows, cols) {
    require(vals.size() == a_.size(), "MatrixFq: wrong number of entries");
    size_t k = 0;
    for (int v : vals) a_[k++] = F.from_int(v);
  }

  static MatrixFq identity(const Fq& F, int n) {
    MatrixFq m(F, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static MatrixFq zero(const Fq& F, int rows, int cols) { return MatrixFq(F, rows, cols); }

  static MatrixFq diagonal(const Fq& F, const std::vector<int>& d) {
    MatrixFq m(F, static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  const Fq& field() const { require(F_, "MatrixFq: unbound"); return *F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int& at(int i, int j) {
    require(0 <= i && i < rows_ && 0 <= j && j < cols_, "MatrixFq: index out of range");
    return a_[static_cast<size_t>(i) * cols_ + j];
  }
  int at(int i, int j) const { return const_cast<MatrixFq*>(this)->at(i, j); }

  bool operator==(const MatrixFq& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const MatrixFq& o) const { return !(*this == o); }

  MatrixFq operator*(const MatrixFq& o) const {
    require(cols_ == o.rows_, "MatrixFq: shape mismatch in product");
    MatrixFq r(*F_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        int aik = at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < o.cols_; ++j)
          r.at(i, j) = F_->add(r.at(i, j), F_->mul(aik, o.at(k, j)));
      }
    return r;
  }

  MatrixFq operator+(const MatrixFq& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "MatrixFq: shape mismatch in sum");
    MatrixFq r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = F_->add(a_[k], o.a_[k]);
    return r;
  }

  MatrixFq operator-(const MatrixFq& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "MatrixFq: shape mismatch in difference");
    MatrixFq r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = F_->sub(a_[k], o.a_[k]);
    return r;
  }

  MatrixFq scaled(int s) const {
    MatrixFq r = *this;
    for (auto& v : r.a_) v = F_->mul(v, s);
    return r;
  }

  MatrixFq negated() const {
    MatrixFq r = *this;
    for (auto& v : r.a_) v = F_->neg(v);
    return r;
  }

  MatrixFq transpose() const {
    MatrixFq r(*F_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_symmetric() const { return rows_ == cols_ && *this == transpose(); }
  bool is_zero() const {
    for (int v : a_)
      if (v) return false;
    return true;
  }

  std::vector<int> row(int i) const {
    std::vector<int> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }
  std::vector<int> col(int j) const {
    std::vector<int> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }
  void set_row(int i, const std::vector<int>& r) {
    require(static_cast<int>(r.size()) == cols_, "MatrixFq: row length mismatch");
    for (int j = 0; j < cols_; ++j) at(i, j) = r[j];
  }
  void set_col(int j, const std::vector<int>& c) {
    require(static_cast<int>(c.size()) == rows_, "MatrixFq: column length mismatch");
    for (int i = 0; i < rows_; ++i) at(i, j) = c[i];
  }

  // A * x for a column vector x.
  std::vector<int> mul_vec(const std::vector<int>& x) const {
    require(static_cast<int>(x.size()) == cols_, "MatrixFq: vector length mismatch");
    std::vector<int> y(rows_, 0);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) y[i] = F_->add(y[i], F_->mul(at(i, j), x[j]));
    return y;
  }

  // Rows of `o` appended below.
  MatrixFq stacked(const MatrixFq& o) const {
    require(cols_ == o.cols_, "MatrixFq: stack width mismatch");
    MatrixFq r(*F_, rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i) r.set_row(i, row(i));
    for (int i = 0; i < o.rows_; ++i) r.set_row(rows_ + i, o.row(i));
    return r;
  }

  // In-place reduced row echelon form; returns pivot column per pivot row.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int pr = -1;
      for (int i = r; i < rows_; ++i)
        if (at(i, c) != 0) { pr = i; break; }
      if (pr < 0) continue;
      if (pr != r)
        for (int j = 0; j < cols_; ++j) std::swap(at(pr, j), at(r, j));
      int s = F_->inv(at(r, c));
      for (int j = 0; j < cols_; ++j) at(r, j) = F_->mul(at(r, j), s);
      for (int i = 0; i < rows_; ++i) {
        if (i == r || at(i, c) == 0) continue;
        int m = at(i, c);
        for (int j = 0; j < cols_; ++j) at(i, j) = F_->sub(at(i, j), F_->mul(m, at(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  int rank() const {
    MatrixFq m = *this;
    return static_cast<int>(m.rref().size());
  }

  int det() const {
    require(rows_ == cols_, "MatrixFq: determinant of non-square matrix");
    MatrixFq m = *this;
    int d = 1;
    for (int c = 0; c < cols_; ++c) {
      int pr = -1;
      for (int i = c; i < rows_; ++i)
        if (m.at(i, c) != 0) { pr = i; break; }
      if (pr < 0) return 0;
      if (pr != c) {
        for (int j = 0; j < cols_; ++j) std::swap(m.at(pr, j), m.at(c, j));
        d = F_->neg(d);
      }
      d = F_->mul(d, m.at(c, c));
      int s = F_->inv(m.at(c, c));
      for (int i = c + 1; i < rows_; ++i) {
        int mfac = F_->mul(m.at(i, c), s);
        if (mfac == 0) continue;
        for (int j = c; j < cols_; ++j) m.at(i, j) = F_->sub(m.at(i, j), F_->mul(mfac, m.at(c, j)));
      }
    }
    return d;
  }

  MatrixFq inverse() const {
    require(rows_ == cols_, "MatrixFq: inverse of non-square matrix");
    MatrixFq aug(*F_, rows_, 2 * cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = 1;
    }
    auto piv = aug.rref();
    require(static_cast<int>(piv.size()) == rows_ && piv.back() < cols_, "MatrixFq: singular matrix");
    MatrixFq inv(*F_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
  }

  MatrixFq inverse_transpose() const { return inverse().transpose(); }

  // Kronecker product (this x o), row-major block layout.
  MatrixFq kron(const MatrixFq& o) const {
    MatrixFq r(*F_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        int s = at(i, j);
        if (s == 0) continue;
        for (int oi = 0; oi < o.rows_; ++oi)
          for (int oj = 0; oj < o.cols_; ++oj)
            r.at(i * o.rows_ + oi, j * o.cols_ + oj) = F_->mul(s, o.at(oi, oj));
      }
    return r;
  }

 private:
  const Fq* F_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<int> a_;
};

// y^T M y.
inline int eval_form(const MatrixFq& M, const std::vector<int>& y) {
  const Fq& F = M.field();
  require(M.rows() == M.cols() && static_cast<int>(y.size()) == M.cols(), "eval_form: shape mismatch");
  int s = 0;
  for (int i = 0; i < M.rows(); ++i) {
    if (y[i] == 0) continue;
    for (int j = 0; j < M.cols(); ++j) s = F.add(s, F.mul(F.mul(y[i], M.at(i, j)), y[j]));
  }
  return s;
}

// x^T M y.
inline int eval_pairing(const MatrixFq& M, const std::vector<int>& x, const std::vector<int>& y) {
  const Fq& F = M.field();
  require(static_cast<int>(x.size()) == M.rows() && static_cast<int>(y.size()) == M.cols(),
          "eval_pairing: shape mismatch");
  int s = 0;
  for (int i = 0; i < M.rows(); ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < M.cols(); ++j) s = F.add(s, F.mul(F.mul(x[i], M.at(i, j)), y[j]));
  }
  return s;
}

// Subspace of F_q^ambient, stored as a reduced-row-echelon basis (canonical:
// equal subspaces have equal basis matrices).
class SubspaceFq {
 public:
  SubspaceFq() = default;
  SubspaceFq(const Fq& F, int ambient) : F_(&F), ambient_(ambient), basis_(F, 0, ambient) {}

  static SubspaceFq span(const MatrixFq& rows) {
    SubspaceFq s(rows.field(), rows.cols());
    MatrixFq m = rows;
    auto piv = m.rref();
    int r = static_cast<int>(piv.size());
    s.basis_ = MatrixFq(rows.field(), r, rows.cols());
    for (int i = 0; i < r; ++i) s.basis_.set_row(i, m.row(i));
    return s;
  }

  static SubspaceFq full(const Fq& F, int ambient) { return span(MatrixFq::identity(F, ambient)); }

  const Fq& field() const { require(F_, "SubspaceFq: unbound"); return *F_; }
  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const MatrixFq& basis() const { return basis_; }
  std::vector<int> basis_vector(int i) const { return basis_.row(i); }

  bool operator==(const SubspaceFq& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }
  bool operator!=(const SubspaceFq& o) const { return !(*this == o); }

  bool contains(const std::vector<int>& v) const {
    require(static_cast<int>(v.size()) == ambient_, "SubspaceFq: vector length mismatch");
    std::vector<int> w = v;
    for (int i = 0; i < basis_.rows(); ++i) {
      int pc = pivot_col(i);
      int c = w[pc];
      if (c == 0) continue;
      for (int j = 0; j < ambient_; ++j) w[j] = F_->sub(w[j], F_->mul(c, basis_.at(i, j)));
    }
    for (int x : w)
      if (x) return false;
    return true;
  }

  bool contains(const SubspaceFq& o) const {
    for (int i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_vector(i))) return false;
    return true;
  }

  SubspaceFq sum(const SubspaceFq& o) const {
    require(ambient_ == o.ambient_, "SubspaceFq: ambient mismatch");
    return span(basis_.stacked(o.basis_));
  }

  // {v : v in this and v in o}, via the kernel of the stacked generating
  // matrix: v = a^T B1 = b^T B2.
  SubspaceFq intersect(const SubspaceFq& o) const {
    require(ambient_ == o.ambient_, "SubspaceFq: ambient mismatch");
    int d1 = dim(), d2 = o.dim();
    // Columns of M are the coefficients (a, b); rows enforce a^T B1 - b^T B2 = 0.
    MatrixFq M(*F_, ambient_, d1 + d2);
    for (int j = 0; j < d1; ++j)
      for (int k = 0; k < ambient_; ++k) M.at(k, j) = basis_.at(j, k);
    for (int j = 0; j < d2; ++j)
      for (int k = 0; k < ambient_; ++k) M.at(k, d1 + j) = F_->neg(o.basis_.at(j, k));
    SubspaceFq ker = kernel(M);
    MatrixFq gens(*F_, ker.dim(), ambient_);
    for (int i = 0; i < ker.dim(); ++i) {
      auto ab = ker.basis_vector(i);
      std::vector<int> v(ambient_, 0);
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < ambient_; ++k) v[k] = F_->add(v[k], F_->mul(ab[j], basis_.at(j, k)));
      gens.set_row(i, v);
    }
    return span(gens);
  }

  // Null space {x : A x = 0}, solutions as rows.
  static SubspaceFq kernel(const MatrixFq& A) {
    const Fq& F = A.field();
    MatrixFq m = A;
    auto piv = m.rref();
    int rank = static_cast<int>(piv.size());
    std::vector<bool> is_piv(A.cols(), false);
    for (int c : piv) is_piv[c] = true;
    MatrixFq rows(F, A.cols() - rank, A.cols());
    int r = 0;
    for (int c = 0; c < A.cols(); ++c) {
      if (is_piv[c]) continue;
      rows.at(r, c) = 1;
      for (int i = 0; i < rank; ++i) rows.at(r, piv[i]) = F.neg(m.at(i, c));
      ++r;
    }
    return span(rows);
  }

  // Column space of A as a subspace of F_q^rows.
  static SubspaceFq image(const MatrixFq& A) { return span(A.transpose()); }

 private:
  const Fq* F_ = nullptr;
  int ambient_ = 0;
  MatrixFq basis_;

  int pivot_col(int i) const {
    for (int j = 0; j < ambient_; ++j)
      if (basis_.at(i, j) != 0) return j;
    fail("SubspaceFq: zero basis row");
  }
};

// One solution x of A x = b, if any.
inline std::optional<std::vector<int>> solve(const MatrixFq& A, const std::vector<int>& b) {
  const Fq& F = A.field();
  require(static_cast<int>(b.size()) == A.rows(), "solve: length mismatch");
  MatrixFq aug(F, A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = b[i];
  }
  auto piv = aug.rref();
  std::vector<int> x(A.cols(), 0);
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == A.cols()) return std::nullopt;  // pivot in the constant column
    x[piv[i]] = aug.at(static_cast<int>(i), A.cols());
  }
  return x;
}

// Congruence diagonalization P^T G P = diag for a symmetric G (possibly
// degenerate). rank counts nonzero diagonal entries; disc is the square class
// of their product (1 for rank 0), i.e. the discriminant of the quotient by
// the radical.
struct FormDiagonalization {
  MatrixFq P;
  std::vector<int> diag;
  int rank = 0;
  int disc = 1;
};

inline FormDiagonalization diagonalize_form(const MatrixFq& G) {
  const Fq& F = G.field();
  require(G.is_symmetric(), "diagonalize_form: matrix not symmetric");
  int t = G.rows();
  // Columns of P carry the working basis; the first `done` columns are
  // pairwise orthogonal with nonzero values.
  MatrixFq P = MatrixFq::identity(F, t);
  auto beta = [&](const std::vector<int>& u, const std::vector<int>& v) {
    return eval_pairing(G, u, v);
  };
  int done = 0;
  while (done < t) {
    int pick = -1;
    for (int j = done; j < t; ++j)
      if (eval_form(G, P.col(j)) != 0) { pick = j; break; }
    if (pick < 0) {
      // No anisotropic vector among the remaining columns; in odd
      // characteristic this forces beta = 0 on their span unless some cross
      // pairing survives, which q(u+v) = 2 beta(u,v) then detects.
      bool found = false;
      for (int j = done; j < t && !found; ++j)
        for (int k = j + 1; k < t && !found; ++k)
          if (beta(P.col(j), P.col(k)) != 0) {
            auto u = P.col(j), v = P.col(k);
            for (int i = 0; i < t; ++i) u[i] = F.add(u[i], v[i]);
            P.set_col(j, u);
            pick = j;
            found = true;
          }
      if (!found) break;  // remaining space is the radical
    }
    if (pick != done) {
      auto tmp = P.col(pick);
      P.set_col(pick, P.col(done));
      P.set_col(done, tmp);
    }
    auto v = P.col(done);
    int qv = eval_form(G, v);
    for (int j = done + 1; j < t; ++j) {
      int c = F.div(beta(v, P.col(j)), qv);
      if (c == 0) continue;
      auto w = P.col(j);
      for (int i = 0; i < t; ++i) w[i] = F.sub(w[i], F.mul(c, v[i]));
      P.set_col(j, w);
    }
    ++done;
  }
  FormDiagonalization out;
  out.P = P;
  out.diag.resize(t);
  int prod = 1;
  for (int j = 0; j < t; ++j) {
    out.diag[j] = eval_form(G, P.col(j));
    if (out.diag[j] != 0) { ++out.rank; prod = F.mul(prod, out.diag[j]); }
  }
  out.disc = out.rank == 0 ? 1 : F.square_class(prod);
  // Nonzero entries first, canonical layout.
  std::vector<int> order;
  for (int j = 0; j < t; ++j)
    if (out.diag[j] != 0) order.push_back(j);
  for (int j = 0; j < t; ++j)
    if (out.diag[j] == 0) order.push_back(j);
  MatrixFq P2(F, t, t);
  std::vector<int> d2(t);
  for (int j = 0; j < t; ++j) { P2.set_col(j, P.col(order[j])); d2[j] = out.diag[order[j]]; }
  out.P = P2;
  out.diag = d2;
  return out;
}

// P with P^T G P = diag(1, ..., 1, d), d in {1, canonical nonsquare}.
// Requires G symmetric invertible.
inline FormDiagonalization normalize_form(const MatrixFq& G) {
  const Fq& F = G.field();
  require(G.rows() == G.cols() && G.det() != 0, "normalize_form: form is degenerate");
  int t = G.rows();
  FormDiagonalization d = diagonalize_form(G);
  MatrixFq P = d.P;
  // Gram of the current basis is diag(d.diag); fix entries left to right.
  std::vector<int> diag = d.diag;
  for (int i = 0; i + 1 < t; ++i) {
    if (diag[i] == 1) continue;
    if (F.sqrt(F.inv(diag[i]))) {
      int s = *F.sqrt(F.inv(diag[i]));
      auto v = P.col(i);
      for (auto& x : v) x = F.mul(x, s);
      P.set_col(i, v);
      diag[i] = 1;
      continue;
    }
    // diag[i] is a nonsquare. If some later entry is in the square class of
    // 1, scale it there and swap it forward.
    bool fixed = false;
    for (int j = i + 1; j < t && !fixed; ++j) {
      if (auto s = F.sqrt(F.inv(diag[j]))) {
        auto vi = P.col(i);
        auto vj = P.col(j);
        for (auto& x : vj) x = F.mul(x, *s);
        P.set_col(i, vj);
        P.set_col(j, vi);
        diag[j] = diag[i];
        diag[i] = 1;
        fixed = true;
      }
    }
    if (fixed) continue;
    // All remaining entries are nonsquares; d_i x^2 + d_j y^2 = 1 then has a
    // solution with x, y both nonzero, and the replacement keeps full rank.
    for (int j = i + 1; j < t && !fixed; ++j)
      for (int x = 1; x < F.q && !fixed; ++x)
        for (int y = 1; y < F.q && !fixed; ++y) {
          int val = F.add(F.mul(diag[i], F.mul(x, x)), F.mul(diag[j], F.mul(y, y)));
          if (val != 1) continue;
          auto vi = P.col(i), vj = P.col(j);
          std::vector<int> w(t);
          for (int k = 0; k < t; ++k) w[k] = F.add(F.mul(x, vi[k]), F.mul(y, vj[k]));
          // Replace basis vector i by w, then re-orthogonalize j against it.
          P.set_col(i, w);
          int bij = eval_pairing(G, w, vj);  // beta(w, v_j), with q(w) = 1
          for (int k = 0; k < t; ++k) vj[k] = F.sub(vj[k], F.mul(bij, w[k]));
          P.set_col(j, vj);
          diag[j] = eval_form(G, P.col(j));
          require(diag[j] != 0, "normalize_form: lost rank");
          diag[i] = 1;
          fixed = true;
        }
    require(fixed, "normalize_form: binary form failed to represent 1");
  }
  // Scale the last vector into its square class representative.
  int dl = diag[t - 1];
  int target = F.square_class(dl);
  int s2 = F.div(target, dl);  // a square
  int s = *F.sqrt(s2);
  auto v = P.col(t - 1);
  for (auto& x : v) x = F.mul(x, s);
  P.set_col(t - 1, v);
  diag[t - 1] = target;

  FormDiagonalization out;
  out.P = P;
  out.diag = diag;
  out.rank = t;
  out.disc = target;
  require(P.transpose() * G * P == MatrixFq::diagonal(F, diag), "normalize_form: verification failed");
  return out;
}

// Gauss sum gamma(B) = sum over y of omega^{(mass)}(-2^{-1} y^T B y) for a
// symmetric invertible B, by direct summation over all q^n points.
inline CycloNum gauss_sum(const MatrixFq& B, int mass) {
  const Fq& F = B.field();
  require(B.is_symmetric(), "gauss_sum: B not symmetric");
  require(B.rows() == 0 || B.det() != 0, "gauss_sum: B not invertible");
  require(mass != 0, "gauss_sum: mass must be nonzero");
  int n = B.rows();
  require(pow_capped(F.q, n, 20000000) <= 20000000, "gauss_sum: domain too large");
  int neg_half = F.neg(F.half());
  CycloNum g(F.p);
  std::vector<int> y(n, 0);
  while (true) {
    g.add_rotated(CycloNum::one(F.p), F.trace(F.mul(mass, F.mul(neg_half, eval_form(B, y)))));
    int i = 0;
    while (i < n && ++y[i] == F.q) y[i++] = 0;
    if (i == n) break;
  }
  return g;
}

}  // namespace oscr
