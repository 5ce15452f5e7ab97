#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oscr/clifford.hpp"
#include "oscr/css.hpp"
#include "oscr/invariant.hpp"
#include "oscr/serialize.hpp"
#include "oscr/weight.hpp"

namespace oscr {

struct RunConfig {
  int q = 3;
  int n = 1;
  int t = 1;
  std::string disc = "square";
  int mass = 1;
  std::uint64_t seed = 1;
  std::uint64_t guard_dim = 1000000;
  std::string out_dir = "certs";
};

// Factors q = p^f; rejects even or non-prime-power orders.
inline Fq field_of_order(int q) {
  require(q >= 3, "field_of_order: need q >= 3");
  int p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  require(p % 2 == 1, "field_of_order: characteristic must be odd");
  int f = 0;
  int m = q;
  while (m % p == 0) {
    m /= p;
    ++f;
  }
  require(m == 1, "field_of_order: not a prime power");
  return Fq(p, f);
}

inline int disc_of_config(const Fq& F, const std::string& disc) {
  if (disc == "square") return 1;
  if (disc == "nonsquare") return F.canonical_nonsquare();
  fail("disc must be 'square' or 'nonsquare', got '" + disc + "'");
}

struct ClaimResult {
  std::string verdict = "false";
  Json witnesses = Json::object();
  std::uint64_t op_count = 0;  // deterministic work counter, not wall time
  std::string dims;            // short summary column for the CSV
};

struct Claim {
  std::string id;
  std::string anchor;
  std::function<ClaimResult(const RunConfig&)> run;
};

namespace detail {

inline std::uint64_t pow_u64(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

inline bool guard_skip(const RunConfig& cfg, std::uint64_t needed, ClaimResult& out) {
  if (needed <= cfg.guard_dim) return false;
  out.verdict = "skipped: size guard";
  out.witnesses["guard"] = Json{{"needed", needed}, {"limit", cfg.guard_dim}};
  return true;
}

inline Context config_context(const Fq& F, const RunConfig& cfg) {
  return Context(F, cfg.n, standard_space(F, cfg.t, disc_of_config(F, cfg.disc)), cfg.mass);
}

inline std::vector<int> random_point(const Fq& F, int len, std::mt19937_64& rng) {
  std::vector<int> v(len);
  for (int i = 0; i < len; ++i) v[i] = static_cast<int>(rng() % F.q);
  return v;
}

// Random vector supported on matrices whose columns lie in Uprime.
inline PsiVector random_vector_in(const Context& ctx, const SubspaceFq& Uprime,
                                  std::mt19937_64& rng) {
  const Fq& F = *ctx.F;
  PsiVector v(ctx);
  int points = 1 + static_cast<int>(rng() % 4);
  for (int s = 0; s < points; ++s) {
    MatrixFq M(F, ctx.t(), ctx.n);
    for (int j = 0; j < ctx.n; ++j)
      for (int k = 0; k < Uprime.dim(); ++k) {
        int c = static_cast<int>(rng() % F.q);
        if (c == 0) continue;
        std::vector<int> b = Uprime.basis_vector(k);
        for (int i = 0; i < ctx.t(); ++i) M.at(i, j) = F.add(M.at(i, j), F.mul(c, b[i]));
      }
    v.add(ctx.encode(M), CycloNum::one(ctx.p()) * Rational(1 + static_cast<int>(rng() % 3)));
  }
  v.normalize();
  if (v.is_zero()) v = PsiVector::delta(ctx, 0);
  return v;
}

// A delta whose matrix has at least one column outside Uprime; requires
// dim Uprime < t.
inline PsiVector taint_delta(const Context& ctx, const SubspaceFq& Uprime,
                             std::mt19937_64& rng) {
  const Fq& F = *ctx.F;
  for (;;) {
    MatrixFq M = random_matrix(F, ctx.t(), ctx.n, rng);
    for (int j = 0; j < ctx.n; ++j)
      if (!Uprime.contains(M.col(j))) return PsiVector::delta(ctx, ctx.encode(M));
  }
}

inline std::vector<MatrixFq> all_symmetric_invertible(const Fq& F, int n) {
  std::vector<MatrixFq> out;
  int cells = n * (n + 1) / 2;
  std::vector<int> odo(cells, 0);
  for (;;) {
    MatrixFq B(F, n, n);
    int c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        B.at(i, j) = odo[c];
        B.at(j, i) = odo[c];
        ++c;
      }
    if (B.det() != 0) out.push_back(B);
    int k = 0;
    while (k < cells && odo[k] == F.q - 1) odo[k++] = 0;
    if (k == cells) break;
    ++odo[k];
  }
  return out;
}

}  // namespace detail

namespace claims {

inline ClaimResult weyl_covariance(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx(F, cfg.n, standard_space(F, 1, 1), cfg.mass);
  if (detail::guard_skip(cfg, ctx.dim(), res)) return res;
  std::mt19937_64 rng(cfg.seed);
  bool ok = true;
  std::string witness;
  const int words = 200;
  for (int w = 0; w < words && ok; ++w) {
    GeneratorWord word = random_word(F, cfg.n, rng);
    auto probe = [&](int lam, const std::vector<int>& x, const std::vector<int>& y) {
      ++res.op_count;
      if (weyl_covariance_check(ctx, word, lam, x, y)) return;
      ok = false;
      witness = "word " + std::to_string(w) + " lam " + std::to_string(lam);
    };
    if (cfg.n == 1) {
      for (int lam = 0; lam < F.q && ok; ++lam)
        for (int x = 0; x < F.q && ok; ++x)
          for (int y = 0; y < F.q && ok; ++y) probe(lam, {x}, {y});
    } else {
      for (int trial = 0; trial < 12 && ok; ++trial)
        probe(static_cast<int>(rng() % F.q), detail::random_point(F, cfg.n, rng),
              detail::random_point(F, cfg.n, rng));
    }
  }
  res.verdict = ok ? "true" : "false";
  res.witnesses["words"] = words;
  res.witnesses["checks"] = res.op_count;
  if (!ok) res.witnesses["witness"] = witness;
  res.dims = "checks=" + std::to_string(res.op_count);
  return res;
}

inline ClaimResult word_consistency(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx = detail::config_context(F, cfg);
  if (detail::guard_skip(cfg, ctx.dim(), res)) return res;
  std::mt19937_64 rng(cfg.seed + 1);
  bool ok = true;
  int scalar_pairs = 0;
  bool have_scalar = false;
  CycloNum scalar_seen = CycloNum::one(F.p);
  std::string witness;
  auto check_pair = [&](const GeneratorWord& w1, const GeneratorWord& w2, const char* family) {
    if (!ok) return;
    ++res.op_count;
    WordComparison wc = word_consistency_check(ctx, w1, w2);
    if (!wc.matrices_equal) {
      ok = false;
      witness = std::string(family) + ": matrices differ";
      return;
    }
    if (wc.verdict == WordComparison::Verdict::Different) {
      ok = false;
      witness = std::string(family) + ": operators differ beyond a scalar";
      return;
    }
    if (wc.verdict == WordComparison::Verdict::Scalar) {
      ++scalar_pairs;
      if (!have_scalar) {
        scalar_seen = wc.scalar;
        have_scalar = true;
      } else if (!(scalar_seen == wc.scalar)) {
        ok = false;
        witness = std::string(family) + ": scalar varies between pairs";
      }
    }
  };
  using G = SympGenerator;
  for (int rep = 0; rep < 20 && ok; ++rep) {
    MatrixFq A = random_symmetric(F, cfg.n, rng);
    MatrixFq A2 = random_symmetric(F, cfg.n, rng);
    MatrixFq C = random_invertible(F, cfg.n, rng);
    MatrixFq C2 = random_invertible(F, cfg.n, rng);
    MatrixFq B = random_symmetric_invertible(F, cfg.n, rng);
    MatrixFq B2 = random_symmetric_invertible(F, cfg.n, rng);
    check_pair({G::upper_unipotent(A), G::upper_unipotent(A2)},
               {G::upper_unipotent(A + A2)}, "unipotent sum");
    check_pair({G::diagonal(C), G::diagonal(C2)}, {G::diagonal(C * C2)}, "diagonal product");
    check_pair({G::fourier(B), G::fourier(B2)},
               {G::diagonal((B * B2.inverse()).negated())}, "fourier pair");
    check_pair({G::diagonal(C), G::fourier(B)},
               {G::fourier(C * B * C.transpose()), G::diagonal(C)}, "fourier conjugation");
    check_pair({G::diagonal(C), G::upper_unipotent(A)},
               {G::upper_unipotent(C * A * C.transpose()), G::diagonal(C)},
               "unipotent conjugation");
  }
  res.verdict = ok ? "true" : "false";
  res.witnesses["pairs"] = res.op_count;
  res.witnesses["scalar_pairs"] = scalar_pairs;
  if (have_scalar) res.witnesses["scalar"] = cyclo_to_json(scalar_seen);
  if (!ok) res.witnesses["witness"] = witness;
  res.dims = "pairs=" + std::to_string(res.op_count) +
             ",scalar_pairs=" + std::to_string(scalar_pairs);
  return res;
}

inline ClaimResult n_spectrum(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx = detail::config_context(F, cfg);
  if (detail::guard_skip(cfg, ctx.dim(), res)) return res;
  SpectrumReport rep = full_spectrum(ctx);
  res.op_count = ctx.dim();
  long long total = 0;
  for (const auto& e : rep.entries) total += e.multiplicity;
  bool ok = total == static_cast<long long>(ctx.dim());
  ok = ok && rep.max_rank <= std::min(cfg.n, cfg.t);
  if (cfg.q == 3 && cfg.n == 1 && cfg.t == 1 && cfg.disc == "square") {
    bool frozen = rep.entries.size() == 2 && rep.entries[0].weight.rank == 0 &&
                  rep.entries[0].multiplicity == 1 && rep.entries[1].weight.rank == 1 &&
                  rep.entries[1].weight.disc == F.canonical_nonsquare() &&
                  rep.entries[1].multiplicity == 2;
    res.witnesses["frozen_case"] = frozen;
    ok = ok && frozen;
  }
  res.witnesses["spectrum"] = spectrum_to_json(rep);
  res.verdict = ok ? "true" : "false";
  res.dims = "entries=" + std::to_string(rep.entries.size()) +
             ",max_rank=" + std::to_string(rep.max_rank);
  return res;
}

inline ClaimResult hyperbolic_permutation(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx(F, cfg.n, hyperbolic_plane(F), cfg.mass);
  if (detail::guard_skip(cfg, ctx.dim(), res)) return res;
  std::mt19937_64 rng(cfg.seed + 2);
  bool ok = true;
  int failed_at = -1;
  const int words = 100;
  for (int w = 0; w < words && ok; ++w) {
    GeneratorWord word = random_word(F, cfg.n, rng);
    res.op_count += ctx.dim();
    if (!hyperbolic_trace_check(ctx, word)) {
      ok = false;
      failed_at = w;
    }
  }
  res.verdict = ok ? "true" : "false";
  res.witnesses["words"] = words;
  if (!ok) res.witnesses["witness"] = "trace mismatch at word " + std::to_string(failed_at);
  res.dims = "words=" + std::to_string(words) + ",dim=" + std::to_string(ctx.dim());
  return res;
}

inline ClaimResult fixed_space_claim(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx(F, cfg.n, hyperbolic_plane(F), cfg.mass);
  if (detail::guard_skip(cfg, ctx.dim() * 2, res)) return res;
  SubspaceCyclo fixed = fixed_space(ctx);
  std::vector<SubspaceFq> lines = enumerate_isotropic(ctx.U, 1);
  SubspaceCyclo predicted(ctx);
  for (const auto& line : lines) predicted.insert(psi_isotropic(ctx, line));
  res.op_count = ctx.dim();
  bool ok = fixed.dim() == 2 && static_cast<int>(lines.size()) == 2 && fixed == predicted;
  res.verdict = ok ? "true" : "false";
  res.witnesses["fixed_dim"] = fixed.dim();
  res.witnesses["isotropic_lines"] = lines.size();
  res.witnesses["equals_isotropic_span"] = (fixed == predicted);
  res.dims = "fixed_dim=" + std::to_string(fixed.dim());
  return res;
}

inline ClaimResult main_theorem(const RunConfig& cfg) {
  ClaimResult res;
  if (cfg.t > cfg.n) {
    res.verdict = "skipped: outside stable range (t > n)";
    res.witnesses["hypothesis"] = Json{{"t", cfg.t}, {"n", cfg.n}};
    return res;
  }
  Fq F = field_of_order(cfg.q);
  Context ctx = detail::config_context(F, cfg);
  if (detail::guard_skip(cfg, ctx.dim() * ctx.dim(), res)) return res;
  MainTheoremReport rep = verify_main_theorem(ctx);
  res.op_count = ctx.dim() * rep.rows.size();
  bool ok = rep.all_equal && rep.parity_ok;
  res.verdict = ok ? "true" : "false";
  Json rows = Json::array();
  std::string dims;
  for (const auto& row : rep.rows) {
    rows.push_back(Json{{"r", row.r},
                        {"dim_rank_span", row.dim_rank_span},
                        {"dim_invariant", row.dim_invariant},
                        {"dim_css", row.dim_css},
                        {"equal", row.equal}});
    if (!dims.empty()) dims += ";";
    dims += "r" + std::to_string(row.r) + "=" + std::to_string(row.dim_invariant) + "/" +
            std::to_string(row.dim_css);
  }
  res.witnesses["rows"] = rows;
  res.witnesses["parity_ok"] = rep.parity_ok;
  res.dims = dims;
  return res;
}

inline ClaimResult commutant_eq(const RunConfig& cfg) {
  ClaimResult res;
  if (cfg.n < 2) {
    res.verdict = "skipped: outside stable range (needs n >= 2)";
    res.witnesses["hypothesis"] = Json{{"t", 2}, {"n", cfg.n}};
    return res;
  }
  Fq F = field_of_order(cfg.q);
  OrthogonalSpace U = hyperbolic_plane(F);
  std::uint64_t tuples = detail::pow_u64(static_cast<std::uint64_t>(cfg.q), 4 * cfg.n);
  if (detail::guard_skip(cfg, tuples, res)) return res;
  long long orbits = sp_orbit_count_on_tuples(F, cfg.n, 2, static_cast<long long>(tuples));
  DecompositionLedger led = predicted_commutant_dim(U);
  res.op_count = tuples;
  bool ok = orbits == led.total && led.total == 2LL * cfg.q + 2;
  res.verdict = ok ? "true" : "false";
  res.witnesses["orbits"] = orbits;
  res.witnesses["predicted"] = led.total;
  Json rows = Json::array();
  for (const auto& e : led.entries)
    rows.push_back(Json{{"k", e.k},
                        {"rank", e.rank},
                        {"num_isotropic", e.num_isotropic},
                        {"orthogonal_order", e.orthogonal_order},
                        {"contribution", e.contribution}});
  res.witnesses["ledger"] = rows;
  res.dims = "orbits=" + std::to_string(orbits) + ",predicted=" + std::to_string(led.total);
  return res;
}

inline ClaimResult css_lemma(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx = detail::config_context(F, cfg);
  if (detail::guard_skip(cfg, ctx.dim(), res)) return res;
  bool ok = true;
  std::string witness;
  Json codes = Json::array();
  int checked = 0;
  for (int k = 0; k <= witt_index(ctx.U) && ok; ++k)
    for (const auto& N : enumerate_isotropic(ctx.U, k)) {
      CSSIntertwinerReport rep = css_intertwiner_check(ctx, N);
      ++checked;
      res.op_count += rep.code_dim;
      Json entry = code_to_json(ctx, N);
      entry["intertwines"] = rep.intertwines;
      entry["disc_law_ok"] = rep.disc_law_ok;
      codes.push_back(entry);
      if (!rep.intertwines || !rep.disc_law_ok) {
        ok = false;
        witness = "k=" + std::to_string(k) + " N=" + format_subspace(N) + " " + rep.witness;
        break;
      }
    }
  res.verdict = ok ? "true" : "false";
  res.witnesses["codes"] = codes;
  if (!ok) res.witnesses["witness"] = witness;
  res.dims = "codes=" + std::to_string(checked);
  return res;
}

inline ClaimResult counterexample(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  std::uint64_t dim = detail::pow_u64(static_cast<std::uint64_t>(cfg.q), 3);
  if (detail::guard_skip(cfg, dim, res)) return res;
  CounterexampleReport rep = verify_counterexample(F, cfg.mass);
  res.op_count = dim;
  bool ok = rep.psi_nonzero && rep.fixed_by_all && rep.rank_zero && rep.support_matches &&
            rep.parity_clause_fails;
  res.verdict = ok ? "true" : "false";
  res.witnesses["support_size"] = rep.support_size;
  res.witnesses["quadric_size"] = rep.quadric_size;
  res.witnesses["fixed_dim"] = rep.fixed_dim;
  res.witnesses["rank_zero"] = rep.rank_zero;
  res.witnesses["parity_clause_fails"] = rep.parity_clause_fails;
  if (!rep.witness.empty()) res.witnesses["witness"] = rep.witness;
  res.dims = "support=" + std::to_string(rep.support_size);
  return res;
}

inline ClaimResult fourier_duality(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx = detail::config_context(F, cfg);
  if (detail::guard_skip(cfg, ctx.dim(), res)) return res;
  std::mt19937_64 rng(cfg.seed + 3);
  bool ok = true;
  std::string witness;
  int trials = 0, indicators = 0;
  auto run_trial = [&](const SubspaceFq& Uprime, const MatrixFq& B, const PsiVector& Phi,
                       bool expect_contained) {
    if (!ok) return;
    ++trials;
    res.op_count += ctx.dim();
    FourierDualTrial trial = fourier_dual_equiv(ctx, Uprime, B, Phi);
    if (!trial.consistent() || trial.support_contained != expect_contained) {
      ok = false;
      witness = "duality trial " + std::to_string(trials) + " dim U'=" +
                std::to_string(Uprime.dim());
    }
  };
  auto run_indicator = [&](const SubspaceFq& Uprime, const MatrixFq& B) {
    if (!ok) return;
    ++indicators;
    res.op_count += ctx.dim();
    if (!fourier_dual_indicator(ctx, Uprime, B)) {
      ok = false;
      witness = "indicator identity failed at dim U'=" + std::to_string(Uprime.dim());
    }
  };
  bool exhaustive = cfg.q == 3 && cfg.n == 1 && cfg.t == 2;
  if (exhaustive) {
    std::vector<MatrixFq> bs = detail::all_symmetric_invertible(F, cfg.n);
    for (int k = 0; k <= cfg.t && ok; ++k)
      for (const auto& Uprime : enumerate_subspaces(F, cfg.t, k))
        for (const auto& B : bs) {
          run_indicator(Uprime, B);
          run_trial(Uprime, B, detail::random_vector_in(ctx, Uprime, rng), true);
          if (k < cfg.t) {
            PsiVector tainted = detail::random_vector_in(ctx, Uprime, rng) +
                                detail::taint_delta(ctx, Uprime, rng);
            tainted.normalize();
            run_trial(Uprime, B, tainted, false);
          }
          if (!ok) break;
        }
  } else {
    for (int trial = 0; trial < 200 && ok; ++trial) {
      int k = static_cast<int>(rng() % (cfg.t + 1));
      std::vector<SubspaceFq> subs = enumerate_subspaces(F, cfg.t, k);
      SubspaceFq Uprime = subs[rng() % subs.size()];
      MatrixFq B = random_symmetric_invertible(F, cfg.n, rng);
      bool taint = (trial % 2 == 1) && k < cfg.t;
      PsiVector Phi = detail::random_vector_in(ctx, Uprime, rng);
      if (taint) {
        Phi = Phi + detail::taint_delta(ctx, Uprime, rng);
        Phi.normalize();
      }
      run_trial(Uprime, B, Phi, !taint);
      if (trial % 10 == 0) run_indicator(Uprime, B);
    }
  }
  res.verdict = ok ? "true" : "false";
  res.witnesses["trials"] = trials;
  res.witnesses["indicator_checks"] = indicators;
  res.witnesses["exhaustive"] = exhaustive;
  if (!ok) res.witnesses["witness"] = witness;
  res.dims = "trials=" + std::to_string(trials) + ",indicators=" + std::to_string(indicators);
  return res;
}

inline ClaimResult rank_contiguity(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  Context ctx = detail::config_context(F, cfg);
  if (detail::guard_skip(cfg, ctx.dim(), res)) return res;
  bool ok = true;
  Json spaces = Json::array();
  auto is_interval = [](const std::vector<int>& ranks) {
    for (size_t i = 1; i < ranks.size(); ++i)
      if (ranks[i] != ranks[i - 1] + 1) return false;
    return true;
  };
  auto record = [&](const std::string& name, const std::vector<int>& ranks, bool contiguous) {
    spaces.push_back(Json{{"space", name}, {"ranks", ranks}, {"contiguous", contiguous}});
    ok = ok && contiguous;
  };
  std::vector<int> full_ranks = full_spectrum(ctx).ranks();
  res.op_count += ctx.dim();
  record("full", full_ranks, is_interval(full_ranks));
  RankContiguity rc = rank_contiguity_check(fixed_space(ctx));
  res.op_count += ctx.dim();
  record("fixed", rc.ranks, rc.contiguous);
  for (int k = 1; k <= witt_index(ctx.U); ++k) {
    SubspaceCyclo S = code_span(ctx, k);
    if (S.dim() == 0) continue;
    RankContiguity rck = rank_contiguity_check(S);
    res.op_count += S.dim();
    record("codes_k" + std::to_string(k), rck.ranks, rck.contiguous);
  }
  res.verdict = ok ? "true" : "false";
  res.witnesses["spaces"] = spaces;
  res.dims = "spaces=" + std::to_string(spaces.size());
  return res;
}

inline ClaimResult two_design(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  std::uint64_t dim = detail::pow_u64(static_cast<std::uint64_t>(cfg.q), 2 * cfg.n);
  if (detail::guard_skip(cfg, dim, res)) return res;
  TwoDesignReport rep = two_design_check(F, cfg.n, cfg.seed + 4);
  res.op_count = dim * 100;
  res.verdict = rep.ok() ? "true" : "false";
  res.witnesses["dim_sym"] = rep.dim_sym;
  res.witnesses["dim_antisym"] = rep.dim_antisym;
  res.witnesses["expected_sym"] = rep.expected_sym;
  res.witnesses["expected_antisym"] = rep.expected_antisym;
  res.witnesses["invariant_ok"] = rep.invariant_ok;
  res.witnesses["swap_commutes"] = rep.swap_commutes;
  res.witnesses["closure_ok"] = rep.closure_ok;
  if (!rep.witness.empty()) res.witnesses["witness"] = rep.witness;
  res.dims = "sym=" + std::to_string(rep.dim_sym) + ",antisym=" + std::to_string(rep.dim_antisym);
  return res;
}

inline ClaimResult parity_subspaces(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  std::uint64_t dim = detail::pow_u64(static_cast<std::uint64_t>(cfg.q), cfg.n);
  if (detail::guard_skip(cfg, dim, res)) return res;
  ParityReport rep = parity_check(F, cfg.n);
  res.op_count = dim;
  res.verdict = rep.ok() ? "true" : "false";
  res.witnesses["dim_even"] = rep.dim_even;
  res.witnesses["dim_odd"] = rep.dim_odd;
  res.witnesses["expected_even"] = rep.expected_even;
  res.witnesses["expected_odd"] = rep.expected_odd;
  res.witnesses["invariant_ok"] = rep.invariant_ok;
  res.dims = "even=" + std::to_string(rep.dim_even) + ",odd=" + std::to_string(rep.dim_odd);
  return res;
}

inline ClaimResult symplectoclifford(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  std::uint64_t dim = detail::pow_u64(static_cast<std::uint64_t>(cfg.q), 2 * cfg.n);
  if (detail::guard_skip(cfg, dim, res)) return res;
  SymplectocliffordReport rep = symplectoclifford_check(F, cfg.n, cfg.seed + 5);
  res.op_count = dim * 20;
  res.verdict = rep.ok() ? "true" : "false";
  res.witnesses["quotient_dims"] = rep.quotient_dims;
  res.witnesses["lifted_dims"] = rep.lifted_dims;
  res.witnesses["quotient_invariant"] = rep.quotient_invariant;
  res.witnesses["lifted_invariant"] = rep.lifted_invariant;
  res.witnesses["closure_matches"] = rep.closure_matches;
  if (!rep.witness.empty()) res.witnesses["witness"] = rep.witness;
  std::string d;
  for (size_t i = 0; i < rep.lifted_dims.size(); ++i) {
    if (i) d += "+";
    d += std::to_string(rep.lifted_dims[i]);
  }
  res.dims = "lifted=" + d;
  return res;
}

inline ClaimResult mass_inequivalence(const RunConfig& cfg) {
  ClaimResult res;
  Fq F = field_of_order(cfg.q);
  std::uint64_t dim = detail::pow_u64(static_cast<std::uint64_t>(cfg.q), cfg.n);
  if (detail::guard_skip(cfg, dim * dim, res)) return res;
  bool ok = true;
  Json table = Json::array();
  for (int m = 1; m < F.q && ok; ++m) {
    int got = heisenberg_intertwiner_dim(F, cfg.n, 1, m);
    int expected = (m == 1) ? 1 : 0;
    table.push_back(Json{{"mass", m},
                         {"square_class", F.square_class(m)},
                         {"intertwiner_dim", got},
                         {"expected", expected}});
    res.op_count += dim * dim;
    if (got != expected) ok = false;
  }
  res.verdict = ok ? "true" : "false";
  res.witnesses["table"] = table;
  res.dims = "masses=" + std::to_string(F.q - 1);
  return res;
}

}  // namespace claims

inline const std::vector<Claim>& claim_registry() {
  static const std::vector<Claim> registry = {
      {"weyl-covariance",
       "every generator word moves a Weyl operator to the Weyl operator of the transformed "
       "group element, exactly",
       claims::weyl_covariance},
      {"word-consistency",
       "generator words with equal symplectic matrices act by equal operators, up to one "
       "recorded constant scalar",
       claims::word_consistency},
      {"n-spectrum",
       "the diagonal subgroup characters stratify the index space by symmetric-matrix "
       "weights of bounded rank",
       claims::n_spectrum},
      {"hyperbolic-permutation",
       "over a hyperbolic plane the representation permutes coordinates, so every word "
       "trace counts fixed vectors",
       claims::hyperbolic_permutation},
      {"fixed-space",
       "over a hyperbolic plane the fixed vectors form exactly the span of the two "
       "isotropic-line indicators",
       claims::fixed_space_claim},
      {"main-theorem",
       "in the stable range, every invariant subspace of bounded weight rank equals the "
       "span of the code spaces of matching rank, and dimension grows only at even rank "
       "defect",
       claims::main_theorem},
      {"commutant-eq",
       "the orbit count of the symplectic group on pairs of vectors equals the predicted "
       "commutant dimension 2q+2",
       claims::commutant_eq},
      {"css-lemma",
       "each code space is carried onto the quotient-space model by an exact "
       "coset-to-delta intertwiner, and the quotient discriminant alternates with the "
       "isotropic dimension",
       claims::css_lemma},
      {"counterexample",
       "outside the stable range a fixed vector exists whose rank defect is odd, so the "
       "code-span description fails there",
       claims::counterexample},
      {"fourier-duality",
       "support inside maps to a subspace is equivalent to translation invariance of the "
       "Fourier image along maps to the orthogonal complement, exactly on indicators",
       claims::fourier_duality},
      {"rank-contiguity",
       "the weight ranks appearing in an invariant subspace form a contiguous range of "
       "integers",
       claims::rank_contiguity},
      {"2-design",
       "the swap-symmetric and swap-antisymmetric subspaces, of dimensions q^n(q^n+1)/2 "
       "and q^n(q^n-1)/2, are invariant under the doubled Clifford action with no smaller "
       "invariant subspace found",
       claims::two_design},
      {"parity-subspaces",
       "the even and odd function subspaces, of dimensions (q^n+1)/2 and (q^n-1)/2, are "
       "invariant under the base oscillator action",
       claims::parity_subspaces},
      {"symplectoclifford",
       "at a non-isotropic vector, invariant subspaces of the perpendicular model "
       "correspond one-to-one with Clifford-invariant subspaces after tensoring by the "
       "base space",
       claims::symplectoclifford},
      {"mass-inequivalence",
       "Weyl representations of different mass admit no nonzero intertwiner; equal masses "
       "admit a one-dimensional space",
       claims::mass_inequivalence},
  };
  return registry;
}

inline const Claim* find_claim(const std::string& id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return &c;
  return nullptr;
}

inline ClaimResult run_claim(const Claim& claim, const RunConfig& cfg) {
  try {
    return claim.run(cfg);
  } catch (const std::exception& e) {
    ClaimResult res;
    res.verdict = std::string("error: ") + e.what();
    return res;
  }
}

inline Json certificate_json(const Claim& claim, const RunConfig& cfg, const ClaimResult& res) {
  Json cert;
  cert["schema"] = 1;
  cert["claim_id"] = claim.id;
  cert["anchor"] = claim.anchor;
  cert["context"] = Json{
      {"q", cfg.q}, {"n", cfg.n}, {"t", cfg.t}, {"disc", cfg.disc}, {"mass", cfg.mass}};
  cert["seed"] = cfg.seed;
  cert["verdict"] = res.verdict;
  cert["witnesses"] = res.witnesses;
  cert["timings"] = Json{{"op_count", res.op_count}};
  return cert;
}

}  // namespace oscr
