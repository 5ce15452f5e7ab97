#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "oscr/psi.hpp"

namespace oscr {

// Subspace of L^2(Hom(X -> U)) over Q(zeta_p), kept eagerly in reduced row
// echelon form: rows sorted by pivot index, pivot coefficient 1, pivot
// columns cleared in every other row. The representation is canonical, so
// subspace equality is row-list equality.
class SubspaceCyclo {
 public:
  using Row = std::vector<std::pair<std::uint64_t, CycloNum>>;  // sorted by index

  SubspaceCyclo() = default;
  explicit SubspaceCyclo(Context c) : ctx_(std::move(c)) {}

  const Context& ctx() const { return ctx_; }
  int dim() const { return static_cast<int>(rows_.size()); }

  static Row row_of(const PsiVector& v) {
    Row r;
    for (const auto& [k, val] : v.amp)
      if (!val.is_zero()) r.push_back({k, val});
    return r;
  }

  PsiVector to_psi(int i) const {
    require(0 <= i && i < dim(), "SubspaceCyclo: row index out of range");
    PsiVector v(ctx_);
    for (const auto& [k, val] : rows_[i]) v.amp.emplace(k, val);
    return v;
  }

  std::vector<PsiVector> basis() const {
    std::vector<PsiVector> b;
    for (int i = 0; i < dim(); ++i) b.push_back(to_psi(i));
    return b;
  }

  // Inserts the vector, returns true if the dimension grew.
  bool insert(const PsiVector& v) {
    require(v.ctx == ctx_, "SubspaceCyclo: context mismatch");
    return insert_row(row_of(v));
  }

  bool insert_row(Row r) {
    reduce_in_place(r);
    if (r.empty()) return false;
    scale_content(r);
    CycloNum lead_inv = r.front().second.invert();
    for (auto& [_, c] : r) c *= lead_inv;
    // Clear the new pivot from existing rows, then place the row by pivot order.
    for (auto& row : rows_) {
      const CycloNum* c = coeff_at(row, r.front().first);
      if (c) axpy(row, -*c, r);
    }
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), r.front().first,
                                [](const Row& a, std::uint64_t piv) { return a.front().first < piv; });
    rows_.insert(pos, std::move(r));
    return true;
  }

  // Residual of v after reduction against the basis.
  Row reduce(const PsiVector& v) const {
    Row r = row_of(v);
    reduce_in_place(r);
    return r;
  }

  bool contains(const PsiVector& v) const { return reduce(v).empty(); }

  bool contains(const SubspaceCyclo& o) const {
    for (int i = 0; i < o.dim(); ++i)
      if (!contains(o.to_psi(i))) return false;
    return true;
  }

  bool operator==(const SubspaceCyclo& o) const { return rows_ == o.rows_; }
  bool operator!=(const SubspaceCyclo& o) const { return !(*this == o); }

  SubspaceCyclo sum(const SubspaceCyclo& o) const {
    SubspaceCyclo s = *this;
    for (const auto& r : o.rows_) s.insert_row(r);
    return s;
  }

  // {v in this : v in o}. Reduce each basis row against o; combinations whose
  // residuals cancel span the intersection.
  SubspaceCyclo intersect(const SubspaceCyclo& o) const {
    require(ctx_ == o.ctx_, "SubspaceCyclo: context mismatch");
    int a = dim();
    SubspaceCyclo out(ctx_);
    if (a == 0) return out;
    if (o.dim() == 0) return out;
    // Echelonize the residual rows, tracking the combination of our basis
    // rows that produced each; a vanishing residual row yields a member.
    struct Tracked {
      Row residual;                               // may be empty
      std::vector<std::pair<int, CycloNum>> comb; // coefficients over our rows
    };
    std::vector<Tracked> echelon;  // rows with nonempty residual, unique pivots
    for (int i = 0; i < a; ++i) {
      Tracked t;
      t.residual = o.reduce(to_psi(i));
      t.comb = {{i, CycloNum::one(ctx_.p())}};
      for (const auto& e : echelon) {
        if (t.residual.empty()) break;
        const CycloNum* c = coeff_at(t.residual, e.residual.front().first);
        if (!c) continue;
        CycloNum f = -*c;
        axpy(t.residual, f, e.residual);
        for (const auto& [j, cf] : e.comb) add_comb(t.comb, j, f * cf);
      }
      if (t.residual.empty()) {
        PsiVector v(ctx_);
        for (const auto& [j, cf] : t.comb) {
          if (cf.is_zero()) continue;
          for (const auto& [k, val] : rows_[j]) v.add(k, cf * val);
        }
        v.normalize();
        if (!v.is_zero()) out.insert(v);
      } else {
        CycloNum lead_inv = t.residual.front().second.invert();
        for (auto& [_, c] : t.residual) c *= lead_inv;
        for (auto& [_, c] : t.comb) c *= lead_inv;
        // Keep pivots unique and sorted for the reduction loop above.
        auto pos = std::lower_bound(
            echelon.begin(), echelon.end(), t.residual.front().first,
            [](const Tracked& e, std::uint64_t piv) { return e.residual.front().first < piv; });
        echelon.insert(pos, std::move(t));
      }
    }
    return out;
  }

 private:
  Context ctx_;
  std::vector<Row> rows_;

  static const CycloNum* coeff_at(const Row& r, std::uint64_t idx) {
    auto it = std::lower_bound(r.begin(), r.end(), idx,
                               [](const auto& e, std::uint64_t k) { return e.first < k; });
    return (it != r.end() && it->first == idx) ? &it->second : nullptr;
  }

  // r += c * s (sorted merge), dropping exact zeros.
  static void axpy(Row& r, const CycloNum& c, const Row& s) {
    Row out;
    out.reserve(r.size() + s.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
      if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
        out.push_back(std::move(r[i++]));
      } else if (i == r.size() || s[j].first < r[i].first) {
        out.push_back({s[j].first, c * s[j].second});
        ++j;
      } else {
        CycloNum v = std::move(r[i].second);
        v += c * s[j].second;
        if (!v.is_zero()) out.push_back({r[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    // The tail from s may contain zeros if c is zero; prune uniformly.
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second.is_zero(); }),
              out.end());
    r = std::move(out);
  }

  void reduce_in_place(Row& r) const {
    for (const auto& row : rows_) {
      if (r.empty()) return;
      if (row.front().first > r.back().first) break;  // rows sorted by pivot
      const CycloNum* c = coeff_at(r, row.front().first);
      if (c) axpy(r, -*c, row);
    }
  }

  // Scale to integer coefficients with content 1: keeps the rationals small
  // through long elimination chains. Does not change the span.
  static void scale_content(Row& r) {
    BigInt lcm_den = 1, gcd_num = 0;
    for (const auto& [_, c] : r)
      for (const auto& coeff : c.coeffs()) {
        if (coeff == 0) continue;
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(coeff));
      }
    for (const auto& [_, c] : r)
      for (const auto& coeff : c.coeffs()) {
        if (coeff == 0) continue;
        BigInt scaled_num = numerator(coeff) * (lcm_den / denominator(coeff));
        gcd_num = boost::multiprecision::gcd(gcd_num, abs(scaled_num));
      }
    if (gcd_num == 0) return;
    Rational s(lcm_den, gcd_num);
    if (s == 1) return;
    for (auto& [_, c] : r) c *= s;
  }

  static void add_comb(std::vector<std::pair<int, CycloNum>>& comb, int j, const CycloNum& c) {
    for (auto& [k, v] : comb)
      if (k == j) { v += c; return; }
    comb.push_back({j, c});
  }
};

}  // namespace oscr
