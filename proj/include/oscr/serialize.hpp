#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oscr/css.hpp"

namespace oscr {

using Json = nlohmann::json;

inline Json cyclo_to_json(const CycloNum& c) {
  Json coeffs = Json::array();
  for (const Rational& r : c.coeffs()) coeffs.push_back(rational_to_string(r));
  return Json{{"p", c.p()}, {"coeffs", coeffs}};
}

inline CycloNum cyclo_from_json(const Json& j) {
  std::vector<Rational> coeffs;
  for (const auto& s : j.at("coeffs")) coeffs.push_back(rational_from_string(s.get<std::string>()));
  return CycloNum::from_coeffs(j.at("p").get<int>(), std::move(coeffs));
}

inline Json matrix_to_json(const MatrixFq& M) {
  Json rows = Json::array();
  for (int i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Json context_to_json(const Context& ctx) {
  return Json{{"q", ctx.q()},
              {"n", ctx.n},
              {"t", ctx.t()},
              {"mass", ctx.mass},
              {"gram", matrix_to_json(ctx.U.gram)}};
}

inline Json psi_to_json(const PsiVector& v) {
  Json amps = Json::array();
  for (const auto& [idx, a] : v.amp) {
    if (a.is_zero()) continue;
    Json flat = Json::array();
    MatrixFq M = v.ctx.decode(idx);
    for (int i = 0; i < M.rows(); ++i)
      for (int j = 0; j < M.cols(); ++j) flat.push_back(M.at(i, j));
    amps.push_back(Json{{"index", flat}, {"value", cyclo_to_json(a)}});
  }
  return Json{{"context", context_to_json(v.ctx)}, {"amplitudes", amps}};
}

inline PsiVector psi_from_json(const Fq& F, const Json& j) {
  const Json& c = j.at("context");
  require(c.at("q").get<int>() == F.q, "psi_from_json: field mismatch");
  Json gram = c.at("gram");
  int t = c.at("t").get<int>();
  MatrixFq G(F, t, t);
  for (int i = 0; i < t; ++i)
    for (int k = 0; k < t; ++k) G.at(i, k) = gram.at(i).at(k).get<int>();
  Context ctx(F, c.at("n").get<int>(), OrthogonalSpace(F, G), c.at("mass").get<int>());
  PsiVector v(ctx);
  for (const auto& entry : j.at("amplitudes")) {
    MatrixFq M(F, t, ctx.n);
    const Json& flat = entry.at("index");
    for (int i = 0; i < t; ++i)
      for (int k = 0; k < ctx.n; ++k) M.at(i, k) = flat.at(i * ctx.n + k).get<int>();
    v.add(ctx.encode(M), cyclo_from_json(entry.at("value")));
  }
  v.normalize();
  return v;
}

inline Json spectrum_to_json(const SpectrumReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back(Json{{"B", matrix_to_json(e.weight.B)},
                           {"rank", e.weight.rank},
                           {"disc", e.weight.disc},
                           {"multiplicity", e.multiplicity}});
  return Json{{"entries", entries},
              {"max_rank", rep.max_rank},
              {"discs_at_max_rank", rep.discs_at_max_rank}};
}

// "1,0;0,1" style: semicolon-separated basis rows of comma-separated entries.
inline std::string format_subspace(const SubspaceFq& S) {
  std::string out;
  for (int i = 0; i < S.dim(); ++i) {
    if (i > 0) out += ";";
    std::vector<int> row = S.basis_vector(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += ",";
      out += std::to_string(row[j]);
    }
  }
  return out;
}

inline Json code_to_json(const Context& ctx, const SubspaceFq& N) {
  CSSCode code = build_code(ctx, N);
  QuotientSpace qs = quotient_space(ctx.U, N);
  return Json{{"N_basis", format_subspace(N)},
              {"dim", code.dim()},
              {"rank", code.rank()},
              {"disc_quotient", qs.space.disc()},
              {"n_coset_states", code.reps.size()}};
}

// Writes through a temporary in the same directory, then renames into place.
inline void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "atomic_write: cannot open " + tmp);
    out << content;
    out.flush();
    require(out.good(), "atomic_write: write failed for " + tmp);
  }
  require(std::rename(tmp.c_str(), path.c_str()) == 0, "atomic_write: rename failed for " + path);
}

inline std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace oscr
