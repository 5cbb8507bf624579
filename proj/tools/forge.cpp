// forge: build distance-symmetric sphere configurations from layerings of
// complete graphs and certify the uniformity of the resulting measures.
//
// Exit codes: 0 all-pass, 1 verification/screen failure, 2 input error,
// 3 numeric error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "forge/catalog.hpp"
#include "forge/embedding.hpp"
#include "forge/geometry.hpp"
#include "json.hpp"
#include "forge/layering.hpp"
#include "forge/measure.hpp"
#include "forge/spectral.hpp"

namespace {

using nlohmann::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << text;
}

int thread_budget() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("FORGE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && (unsigned long)cap < n) n = unsigned(cap);
  }
  return int(n);
}

int cmd_enumerate(int m, std::uint64_t limit, bool antipodal_filter,
                  const std::string& out_path) {
  if (m < 2 || m % 2 != 0 || m > forge::kEnumerationCap)
    throw std::invalid_argument("enumerate: m must be even, 2 <= m <= " +
                                std::to_string(forge::kEnumerationCap));
  std::ostringstream out;
  std::uint64_t emitted = 0;
  forge::enumerate_layerings(m, [&](const forge::Layering& l) {
    if (antipodal_filter && !forge::check_antipodal_structure(l).ok)
      return true;
    out << json(l).dump() << "\n";
    return ++emitted < limit;
  });
  write_text(out_path, out.str());
  std::cerr << emitted << " layerings\n";
  return 0;
}

int cmd_check_layering(const std::string& path) {
  const auto l = read_json_file(path).get<forge::Layering>();
  const auto report = forge::validate_layering(l);
  std::cout << json(report).dump(2) << "\n";
  return report.valid ? 0 : 1;
}

int cmd_spectral(const std::string& path, bool as_json) {
  const auto l = read_json_file(path).get<forge::Layering>();
  const auto report = forge::spectral_report(l);
  if (as_json) {
    std::cout << json(report).dump(2) << "\n";
  } else {
    std::cout << "gap        " << report.gap << "\n"
              << "threshold  " << report.threshold << "\n"
              << "delta_rank " << report.delta_rank << "\n"
              << "embeddable " << (report.embeddable ? "yes" : "no") << "\n";
  }
  return report.embeddable ? 0 : 1;
}

int cmd_embed(const std::string& path, const std::string& out_path,
              const std::string& csv_path) {
  const auto l = read_json_file(path).get<forge::Layering>();
  const auto report = forge::spectral_report(l);
  const auto centers = forge::embed(l, report);
  const auto check = forge::verify_center_set(centers, l);
  if (!check.valid) throw std::runtime_error("embed: center set check failed");
  write_text(out_path, json(centers).dump(2) + "\n");
  if (!csv_path.empty()) {
    std::ostringstream csv;
    csv.precision(17);
    for (const auto& pt : centers.points) {
      for (std::size_t k = 0; k < pt.size(); ++k)
        csv << (k ? "," : "") << pt[k];
      csv << "\n";
    }
    write_text(csv_path, csv.str());
  }
  return 0;
}

int cmd_build_cone(const std::string& path, const std::string& out_path) {
  const auto centers = read_json_file(path).get<forge::CenterSet>();
  const auto config = forge::build_config(centers);
  write_text(out_path, json(config).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& path, int trials, std::uint64_t samples,
               std::uint64_t seed, double nu_tol, bool as_json,
               const std::string& out_path) {
  forge::ConeSupport cone{read_json_file(path).get<forge::SphereConfig>()};
  forge::VerifyOptions options;
  options.trials = trials;
  options.samples = samples;
  options.seed = seed;
  if (nu_tol > 0.0) options.nu_abs_tol = nu_tol;
  const auto reports = forge::verify_uniformity(cone, options);
  const bool ok = forge::all_pass(reports);
  if (as_json || !out_path.empty()) {
    write_text(out_path, json(reports).dump(2) + "\n");
  } else {
    for (const auto& rep : reports)
      std::cout << rep.kind << " R=" << rep.query_radius
                << " analytic=" << rep.analytic << " mc=" << rep.mc_estimate
                << "+-" << rep.mc_stderr << " target=" << rep.target << " "
                << (rep.pass ? "pass" : "FAIL") << "\n";
  }
  std::cerr << (ok ? "all reports pass" : "verification FAILED") << "\n";
  return ok ? 0 : 1;
}

int cmd_catalog(const std::string& which, int k, const std::string& out_path) {
  forge::CatalogEntry entry;
  if (which == "kp") entry = forge::kp_cone();
  else if (which == "ck") entry = forge::ck_cone(k);
  else if (which == "tetra8") entry = forge::tetra8();
  else if (which == "rect4") entry = forge::rectangle4();
  else throw std::invalid_argument("catalog: unknown entry " + which);
  write_text(out_path, json(entry).dump(2) + "\n");
  return 0;
}

int cmd_pipeline(int m, std::uint64_t seed, std::uint64_t samples, int trials,
                 const std::string& out_path) {
  if (m < 2 || m % 2 != 0 || m > forge::kEnumerationCap)
    throw std::invalid_argument("pipeline: m must be even, 2 <= m <= " +
                                std::to_string(forge::kEnumerationCap));
  const auto layerings = forge::enumerate_layerings(m);
  std::vector<std::string> rows(layerings.size());
  std::vector<int> verdicts(layerings.size(), 0);  // 0 dropped, 1 pass, -1 fail

  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < layerings.size(); i += step) {
      json row;
      row["index"] = i + 1;
      try {
        const auto spectral = forge::spectral_report(layerings[i]);
        row["gap"] = spectral.gap;
        row["threshold"] = spectral.threshold;
        row["delta_rank"] = spectral.delta_rank;
        row["embeddable"] = spectral.embeddable;
        if (spectral.embeddable) {
          const auto centers = forge::embed(layerings[i], spectral);
          forge::ConeSupport cone{forge::build_config(centers)};
          forge::VerifyOptions options;
          options.trials = trials;
          options.samples = samples;
          options.seed = seed;
          const auto reports = forge::verify_uniformity(cone, options);
          const bool ok = forge::all_pass(reports);
          row["dim"] = cone.config.dim;
          row["verified"] = ok;
          verdicts[i] = ok ? 1 : -1;
        }
      } catch (const std::exception& e) {
        row["error"] = e.what();
        verdicts[i] = -1;
      }
      rows[i] = row.dump();
    }
  };

  const int threads = thread_budget();
  if (threads <= 1 || layerings.size() < 2) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(work, std::size_t(t), std::size_t(threads));
    for (auto& t : pool) t.join();
  }

  std::size_t embeddable = 0, passed = 0, failed = 0;
  for (int v : verdicts) {
    if (v != 0) ++embeddable;
    if (v == 1) ++passed;
    if (v == -1) ++failed;
  }
  std::ostringstream out;
  for (const auto& row : rows) out << row << "\n";
  json summary{{"m", m},
               {"layerings", layerings.size()},
               {"embeddable", embeddable},
               {"verified", passed},
               {"failed", failed},
               {"seed", seed},
               {"samples", samples},
               {"trials", trials}};
  out << summary.dump() << "\n";
  write_text(out_path, out.str());
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance-symmetric sphere configurations from graph layerings"};
  app.require_subcommand(1);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "emit all layerings of K_m as JSONL");
  int en_m = 4;
  std::uint64_t en_limit = UINT64_MAX;
  bool en_anti = false;
  std::string en_out;
  enumerate->add_option("--m", en_m, "number of points (even)")->required();
  enumerate->add_option("--limit", en_limit, "stop after N layerings");
  enumerate->add_flag("--antipodal-filter", en_anti,
                      "keep only layerings passing the antipodal pre-filter");
  enumerate->add_option("-o,--output", en_out, "output path (default stdout)");

  // check-layering
  auto* check = app.add_subcommand("check-layering", "validate a layering file");
  std::string ch_file;
  check->add_option("file", ch_file, "layering JSON")->required();

  // spectral
  auto* spectral = app.add_subcommand("spectral", "spectral embeddability screen");
  std::string sp_file;
  bool sp_json = false;
  spectral->add_option("file", sp_file, "layering JSON")->required();
  spectral->add_flag("--json", sp_json, "machine-readable report");

  // embed
  auto* embed = app.add_subcommand("embed", "embed a layering as sphere centers");
  std::string em_file, em_out, em_csv;
  embed->add_option("file", em_file, "layering JSON")->required();
  embed->add_option("-o,--output", em_out, "centers JSON path (default stdout)");
  embed->add_option("--csv", em_csv, "also export points as CSV");

  // build-cone
  auto* build = app.add_subcommand("build-cone", "build the sphere union from centers");
  std::string bc_file, bc_out;
  build->add_option("file", bc_file, "centers JSON")->required();
  build->add_option("-o,--output", bc_out, "config JSON path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "certify 2-/3-uniformity of a cone");
  std::string ve_file, ve_out;
  int ve_trials = 20;
  std::uint64_t ve_samples = 1000000, ve_seed = 42;
  double ve_tol = -1.0;
  bool ve_json = false;
  verify->add_option("file", ve_file, "config JSON")->required();
  verify->add_option("--trials", ve_trials, "number of random trials");
  verify->add_option("--samples", ve_samples, "MC samples per estimate");
  verify->add_option("--seed", ve_seed, "RNG seed");
  verify->add_option("--tol", ve_tol, "absolute tolerance for the 3-D measure");
  verify->add_flag("--json", ve_json, "machine-readable report");
  verify->add_option("-o,--output", ve_out, "report path (default stdout)");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "emit a named example configuration");
  std::string ca_which, ca_out;
  int ca_k = 1;
  catalog->add_option("entry", ca_which, "one of kp, ck, tetra8, rect4")->required();
  catalog->add_option("--k", ca_k, "family parameter for ck");
  catalog->add_option("-o,--output", ca_out, "entry JSON path (default stdout)");

  // pipeline
  auto* pipeline = app.add_subcommand(
      "pipeline", "enumerate, screen, embed, build, and verify end to end");
  int pi_m = 4, pi_trials = 5;
  std::uint64_t pi_seed = 42, pi_samples = 100000;
  std::string pi_out;
  pipeline->add_option("--m", pi_m, "number of points (even)")->required();
  pipeline->add_option("--seed", pi_seed, "RNG seed");
  pipeline->add_option("--samples", pi_samples, "MC samples per estimate");
  pipeline->add_option("--trials", pi_trials, "verification trials per survivor");
  pipeline->add_option("-o,--output", pi_out, "JSONL path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) return cmd_enumerate(en_m, en_limit, en_anti, en_out);
    if (*check) return cmd_check_layering(ch_file);
    if (*spectral) return cmd_spectral(sp_file, sp_json);
    if (*embed) return cmd_embed(em_file, em_out, em_csv);
    if (*build) return cmd_build_cone(bc_file, bc_out);
    if (*verify)
      return cmd_verify(ve_file, ve_trials, ve_samples, ve_seed, ve_tol,
                        ve_json, ve_out);
    if (*catalog) return cmd_catalog(ca_which, ca_k, ca_out);
    if (*pipeline)
      return cmd_pipeline(pi_m, pi_seed, pi_samples, pi_trials, pi_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
