#include <chrono>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oscr/certify.hpp"

namespace {

struct ClaimOutcome {
  std::string id;
  oscr::ClaimResult result;
  long long runtime_ms = 0;
};

bool verdict_passes(const std::string& v) {
  return v == "true" || v.rfind("skipped", 0) == 0;
}

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_run(const oscr::RunConfig& cfg, const std::string& claims_csv) {
  std::vector<const oscr::Claim*> selected;
  if (claims_csv.empty() || claims_csv == "all") {
    for (const auto& c : oscr::claim_registry()) selected.push_back(&c);
  } else {
    for (const auto& id : split_ids(claims_csv)) {
      const oscr::Claim* c = oscr::find_claim(id);
      if (!c) {
        std::cerr << "unknown claim id: " << id << "\n";
        return 2;
      }
      selected.push_back(c);
    }
  }

  std::filesystem::create_directories(cfg.out_dir);

  std::vector<std::future<ClaimOutcome>> jobs;
  for (const oscr::Claim* c : selected)
    jobs.push_back(std::async(std::launch::async, [c, cfg]() {
      auto start = std::chrono::steady_clock::now();
      ClaimOutcome out;
      out.id = c->id;
      out.result = oscr::run_claim(*c, cfg);
      out.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      oscr::Json cert = oscr::certificate_json(*c, cfg, out.result);
      oscr::atomic_write(cfg.out_dir + "/claim-" + c->id + ".json", cert.dump(2) + "\n");
      return out;
    }));

  std::vector<ClaimOutcome> outcomes;
  for (auto& job : jobs) outcomes.push_back(job.get());

  std::string csv = "claim,q,n,t,disc,verdict,dims,runtime_ms\n";
  bool all_ok = true;
  for (const auto& out : outcomes) {
    std::printf("%-24s %-22s %-36s %8lld ms\n", out.id.c_str(), out.result.verdict.c_str(),
                out.result.dims.c_str(), out.runtime_ms);
    csv += oscr::csv_escape(out.id) + "," + std::to_string(cfg.q) + "," +
           std::to_string(cfg.n) + "," + std::to_string(cfg.t) + "," +
           oscr::csv_escape(cfg.disc) + "," + oscr::csv_escape(out.result.verdict) + "," +
           oscr::csv_escape(out.result.dims) + "," + std::to_string(out.runtime_ms) + "\n";
    all_ok = all_ok && verdict_passes(out.result.verdict);
  }
  oscr::atomic_write(cfg.out_dir + "/summary.csv", csv);
  return all_ok ? 0 : 1;
}

int cmd_list_claims() {
  for (const auto& c : oscr::claim_registry())
    std::printf("%-24s %s\n", c.id.c_str(), c.anchor.c_str());
  return 0;
}

int cmd_isotropic(const oscr::RunConfig& cfg, int k) {
  oscr::Fq F = oscr::field_of_order(cfg.q);
  oscr::OrthogonalSpace U =
      oscr::standard_space(F, cfg.t, oscr::disc_of_config(F, cfg.disc));
  for (const auto& N : oscr::enumerate_isotropic(U, k))
    std::cout << oscr::format_subspace(N) << "\n";
  return 0;
}

int cmd_codes(const oscr::RunConfig& cfg, int k) {
  oscr::Fq F = oscr::field_of_order(cfg.q);
  oscr::Context ctx(F, cfg.n,
                    oscr::standard_space(F, cfg.t, oscr::disc_of_config(F, cfg.disc)),
                    cfg.mass);
  oscr::Json out = oscr::Json::array();
  int lo = (k >= 0) ? k : 0;
  int hi = (k >= 0) ? k : oscr::witt_index(ctx.U);
  for (int kk = lo; kk <= hi; ++kk)
    for (const auto& N : oscr::enumerate_isotropic(ctx.U, kk))
      out.push_back(oscr::code_to_json(ctx, N));
  std::cout << out.dump(2) << "\n";
  return 0;
}

// Exploratory sweep over the base-point and discriminant choices of the
// out-of-range fixed vector; prints a table, makes no pass/fail judgment.
int cmd_explore(const oscr::RunConfig& cfg) {
  oscr::Fq F = oscr::field_of_order(cfg.q);
  std::printf("%-10s %-6s %-8s %-8s %-6s %-6s\n", "disc", "x0", "support", "quadric",
              "fixed", "dim");
  for (int disc : {1, F.canonical_nonsquare()}) {
    oscr::Context ctx(F, 1, oscr::standard_space(F, 3, disc), cfg.mass);
    int lines = static_cast<int>(oscr::isotropic_line_reps(ctx).size());
    for (int which = 0; which < lines; ++which) {
      oscr::CounterexampleReport rep =
          oscr::verify_counterexample(F, cfg.mass, disc, which);
      std::printf("%-10s %-6d %-8llu %-8llu %-6s %-6d\n",
                  disc == 1 ? "square" : "nonsquare", which,
                  static_cast<unsigned long long>(rep.support_size),
                  static_cast<unsigned long long>(rep.quadric_size),
                  rep.fixed_by_all ? "yes" : "no", rep.fixed_dim);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact oscillator-representation certificates over odd finite fields"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  oscr::RunConfig cfg;
  std::string claims_csv = "all";
  app.set_config("--config", "", "config file with key=value lines");
  app.add_option("--q", cfg.q, "field size (odd prime power)");
  app.add_option("--n", cfg.n, "number of hyperbolic pairs in V");
  app.add_option("--t", cfg.t, "dimension of the quadratic space U");
  app.add_option("--disc", cfg.disc, "discriminant class of U: square|nonsquare");
  app.add_option("--mass", cfg.mass, "mass (central character scale), nonzero");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--claims", claims_csv, "comma-separated claim ids, or 'all'");
  app.add_option("--out", cfg.out_dir, "output directory for certificates");
  app.add_option("--guard-dim", cfg.guard_dim, "skip claims whose work exceeds this size");

  CLI::App* run = app.add_subcommand("run", "run claims and write certificates");
  CLI::App* list = app.add_subcommand("list-claims", "print the claim registry");
  CLI::App* iso = app.add_subcommand("isotropic", "list totally isotropic subspaces of U");
  int iso_k = 1;
  iso->add_option("--k", iso_k, "isotropic dimension");
  CLI::App* codes = app.add_subcommand("codes", "print code spaces of U as JSON");
  int codes_k = -1;
  codes->add_option("--k", codes_k, "isotropic dimension, -1 for all");
  CLI::App* explore =
      app.add_subcommand("explore", "sweep the out-of-range fixed vector (exploratory)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmd_list_claims();
    if (iso->parsed()) return cmd_isotropic(cfg, iso_k);
    if (codes->parsed()) return cmd_codes(cfg, codes_k);
    if (explore->parsed()) return cmd_explore(cfg);
    (void)run;
    return cmd_run(cfg, claims_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
