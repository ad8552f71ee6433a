// Command-line harness: instance generation, solver comparison, stability
// analysis, and Monte Carlo aggregation.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eamp/datagen.hpp"
#include "eamp/errors.hpp"
#include "eamp/io.hpp"
#include "eamp/problem.hpp"
#include "eamp/solvers.hpp"
#include "eamp/stability.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw eamp::IoError("cannot open: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw eamp::IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw eamp::IoError("write failed: " + path.string());
}

std::size_t worker_count() {
  if (const char* env = std::getenv("EAMP_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

struct StoredInstance {
  eamp::InstanceSpec spec;
  eamp::LassoProblem problem;
  eamp::Vector x0;
};

fs::path write_instance(const eamp::InstanceSpec& spec, const fs::path& dir) {
  const eamp::GeneratedInstance inst = eamp::make_instance(spec);
  fs::create_directories(dir);
  eamp::write_matrix(dir / "A.txt", inst.problem.A);
  eamp::write_vector(dir / "y.txt", inst.problem.y);
  eamp::write_vector(dir / "x0.txt", inst.x0);
  eamp::write_vector(dir / "w.txt", inst.w);
  json manifest{{"spec", json::parse(eamp::instance_spec_to_json(spec))},
                {"gamma", inst.problem.gamma},
                {"sigma_w2", inst.sigma_w2},
                {"files", {{"A", "A.txt"}, {"y", "y.txt"}, {"x0", "x0.txt"}, {"w", "w.txt"}}}};
  const fs::path manifest_path = dir / "manifest.json";
  write_text_file(manifest_path, manifest.dump(2) + "\n");
  return manifest_path;
}

StoredInstance load_instance(const fs::path& dir) {
  const json manifest = json::parse(read_text_file(dir / "manifest.json"));
  eamp::InstanceSpec spec = eamp::instance_spec_from_json(manifest.at("spec").dump());
  eamp::DenseMatrix a = eamp::read_matrix(dir / "A.txt");
  eamp::Vector y = eamp::read_vector(dir / "y.txt");
  eamp::Vector x0 = eamp::read_vector(dir / "x0.txt");
  const double gamma = manifest.at("gamma").get<double>();
  return StoredInstance{spec, eamp::LassoProblem(std::move(a), std::move(y), gamma),
                        std::move(x0)};
}

std::size_t iterations_to_tol(const eamp::SolveTrace& trace, double tol) {
  for (const eamp::TraceRow& row : trace.rows)
    if (row.kkt <= tol) return row.t;
  return trace.rows.empty() ? 0 : trace.rows.back().t;
}

eamp::SolveResult run_named_solver(const std::string& name, const eamp::LassoProblem& p,
                                   eamp::SolveConfig cfg, const eamp::Vector* ref) {
  if (name == "eamp") return eamp::eamp_run(p, cfg, eamp::zero_init(p), ref);
  if (name == "amp_e1") {
    cfg.e = 1.0;
    return eamp::eamp_run(p, cfg, eamp::zero_init(p), ref);
  }
  if (name == "fista") return eamp::fista_run(p, cfg, ref);
  if (name == "pdhg") return eamp::pdhg_fixed_run(p, cfg, ref);
  throw std::invalid_argument("unknown solver: " + name);
}

int cmd_gen(const fs::path& spec_path, const fs::path& out_dir) {
  const eamp::InstanceSpec spec = eamp::instance_spec_from_json(read_text_file(spec_path));
  const fs::path manifest = write_instance(spec, out_dir);
  std::cout << manifest.string() << "\n";
  return kExitOk;
}

struct CompareOptions {
  std::vector<std::string> solvers{"eamp", "amp_e1", "fista", "pdhg"};
  double e = -1.0;  // < 0: use min{1, 4/(L+2)}
  std::size_t max_iter = 100000;
  double kkt_tol = 1e-8;
  double step_tol = 1e-10;
  double ref_tol = 1e-10;
};

void apply_config_json(const fs::path& path, CompareOptions& opt) {
  const json j = json::parse(read_text_file(path));
  if (j.contains("solvers")) opt.solvers = j["solvers"].get<std::vector<std::string>>();
  if (j.contains("e")) opt.e = j["e"].get<double>();
  if (j.contains("max_iter")) opt.max_iter = j["max_iter"].get<std::size_t>();
  if (j.contains("kkt_tol")) opt.kkt_tol = j["kkt_tol"].get<double>();
  if (j.contains("step_tol")) opt.step_tol = j["step_tol"].get<double>();
  if (j.contains("ref_tol")) opt.ref_tol = j["ref_tol"].get<double>();
}

int cmd_compare(const fs::path& instance_dir, const fs::path& out_dir,
                const CompareOptions& opt) {
  const StoredInstance inst = load_instance(instance_dir);
  fs::create_directories(out_dir);

  const eamp::ReferenceResult ref = eamp::reference_solve(inst.problem, opt.ref_tol);
  eamp::write_vector(out_dir / "x_ref.txt", ref.x);

  json summary;
  summary["reference"] = {{"kkt", ref.kkt},
                          {"converged", ref.converged},
                          {"iterations", ref.iterations}};
  for (const std::string& name : opt.solvers) {
    eamp::SolveConfig cfg;
    cfg.e = opt.e > 0.0 ? opt.e : eamp::default_e(inst.problem);
    cfg.max_iter = opt.max_iter;
    cfg.kkt_tol = opt.kkt_tol;
    cfg.step_tol = opt.step_tol;
    const eamp::SolveResult res = run_named_solver(name, inst.problem, cfg, &ref.x);
    eamp::write_trace_csv(out_dir / (name + "_trace.csv"), res.trace);
    summary["solvers"][name] = {{"status", eamp::to_string(res.trace.status)},
                                {"iterations", res.iterations},
                                {"final_kkt", res.kkt},
                                {"iterations_to_kkt_tol",
                                 iterations_to_tol(res.trace, opt.kkt_tol)}};
  }
  write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
  std::cout << (out_dir / "summary.json").string() << "\n";
  return kExitOk;
}

int cmd_stability(const fs::path& instance_dir, std::vector<double> e_values,
                  const fs::path& out_dir) {
  const StoredInstance inst = load_instance(instance_dir);
  if (e_values.empty()) e_values.push_back(eamp::e_global_bound(inst.problem));

  // Equilibrium: converge once with a safe e; the fixed point itself does not
  // depend on which admissible e found it.
  eamp::SolveConfig cfg;
  cfg.kkt_tol = 1e-10;
  cfg.max_iter = 200000;
  eamp::SolveResult solved;
  bool have_equilibrium = false;
  std::vector<double> attempts = e_values;
  attempts.insert(attempts.begin(), eamp::e_global_bound(inst.problem));
  for (double e : attempts) {
    if (!(e > 0.0) || e > 1.0) continue;
    cfg.e = e;
    solved = eamp::eamp_run(inst.problem, cfg, eamp::zero_init(inst.problem));
    if (solved.trace.status == eamp::SolveStatus::Converged) {
      have_equilibrium = true;
      break;
    }
  }
  if (!have_equilibrium) {
    std::cerr << "stability: no e in the list converged; no equilibrium available\n";
    return kExitNumerical;
  }

  const eamp::EquilibriumPoint eq =
      eamp::equilibrium_from_state(inst.problem, solved.final_state, 1e-6);

  fs::create_directories(out_dir);
  json index = json::array();
  for (std::size_t i = 0; i < e_values.size(); ++i) {
    const eamp::StabilityReport rep = eamp::analytic_spectrum(inst.problem, eq, e_values[i]);
    std::ostringstream name;
    name << "stability_e" << i << ".json";
    json body = json::parse(eamp::stability_report_to_json(rep));
    body["e"] = e_values[i];
    write_text_file(out_dir / name.str(), body.dump(2) + "\n");
    index.push_back({{"e", e_values[i]},
                     {"file", name.str()},
                     {"stable", rep.stable},
                     {"spectral_radius", rep.spectral_radius}});
  }
  write_text_file(out_dir / "stability_index.json", index.dump(2) + "\n");
  std::cout << (out_dir / "stability_index.json").string() << "\n";
  return kExitOk;
}

int cmd_montecarlo(const fs::path& spec_path, std::size_t trials, const std::string& solver,
                   double e, double kkt_tol, std::size_t max_iter, const fs::path& out_path) {
  const eamp::InstanceSpec base = eamp::instance_spec_from_json(read_text_file(spec_path));

  struct TrialResult {
    std::uint64_t seed;
    std::string status;
    double kkt;
    std::size_t iterations;
  };
  std::vector<TrialResult> results(trials);

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials) return;
      eamp::InstanceSpec spec = base;
      spec.seed = base.seed + 1000 * static_cast<std::uint64_t>(i);
      const eamp::GeneratedInstance inst = eamp::make_instance(spec);
      eamp::SolveConfig cfg;
      cfg.e = e > 0.0 ? e : eamp::default_e(inst.problem);
      cfg.kkt_tol = kkt_tol;
      cfg.max_iter = max_iter;
      cfg.record_trace = false;
      const eamp::SolveResult res = run_named_solver(solver, inst.problem, cfg, nullptr);
      results[i] = {spec.seed, eamp::to_string(res.trace.status), res.kkt, res.iterations};
    }
  };
  std::vector<std::thread> pool;
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(trials, 1));
  for (std::size_t i = 0; i + 1 < workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();

  std::vector<double> kkts, iters;
  std::size_t converged = 0;
  json trials_json = json::array();
  for (const TrialResult& r : results) {
    if (r.status == "Converged") ++converged;
    kkts.push_back(r.kkt);
    iters.push_back(static_cast<double>(r.iterations));
    trials_json.push_back(
        {{"seed", r.seed}, {"status", r.status}, {"kkt", r.kkt}, {"iterations", r.iterations}});
  }
  std::sort(kkts.begin(), kkts.end());
  std::sort(iters.begin(), iters.end());
  auto quantiles = [](const std::vector<double>& v) {
    auto at = [&](double q) {
      const std::size_t idx =
          static_cast<std::size_t>(q * static_cast<double>(v.size() - 1) + 0.5);
      return v[idx];
    };
    return json{{"min", v.front()}, {"q25", at(0.25)}, {"median", at(0.5)},
                {"q75", at(0.75)},  {"max", v.back()}};
  };

  json out{{"solver", solver},
           {"trials", trials},
           {"converged_fraction", static_cast<double>(converged) / static_cast<double>(trials)},
           {"kkt_quantiles", quantiles(kkts)},
           {"iteration_quantiles", quantiles(iters)},
           {"per_trial", trials_json}};
  write_text_file(out_path, out.dump(2) + "\n");
  std::cout << out_path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eAMP LASSO solver and stability analyzer"};
  app.require_subcommand(1);

  std::string spec_path, instance_dir, out_dir = ".", out_file = "montecarlo.json";
  std::string solver = "eamp";
  std::string config_path;
  std::vector<double> e_values;
  CompareOptions compare_opt;
  std::size_t trials = 50;
  double mc_e = -1.0, mc_kkt_tol = 1e-8;
  std::size_t mc_max_iter = 10000;

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance from a JSON spec");
  gen->add_option("--spec", spec_path, "InstanceSpec JSON file")->required();
  gen->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* compare = app.add_subcommand("compare", "Run solvers against the reference");
  compare->add_option("--instance", instance_dir, "Instance directory")->required();
  compare->add_option("--out", out_dir, "Output directory")->required();
  compare->add_option("--solvers", compare_opt.solvers,
                      "Subset of eamp, amp_e1, fista, pdhg");
  compare->add_option("--e", compare_opt.e, "eAMP parameter (default: min{1,4/(L+2)})");
  compare->add_option("--max-iter", compare_opt.max_iter, "Iteration cap");
  compare->add_option("--kkt-tol", compare_opt.kkt_tol, "KKT stopping tolerance");
  compare->add_option("--step-tol", compare_opt.step_tol, "Relative step tolerance");
  compare->add_option("--ref-tol", compare_opt.ref_tol, "Reference solver tolerance");
  compare->add_option("--config", config_path, "JSON config; overrides flags when given");

  CLI::App* stability = app.add_subcommand("stability", "Analytic stability reports");
  stability->add_option("--instance", instance_dir, "Instance directory")->required();
  stability->add_option("--e", e_values, "e values to analyze");
  stability->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* montecarlo = app.add_subcommand("montecarlo", "Seeded multi-trial aggregate");
  montecarlo->add_option("--spec", spec_path, "InstanceSpec JSON file")->required();
  montecarlo->add_option("--trials", trials, "Number of trials");
  montecarlo->add_option("--solver", solver, "One of eamp, amp_e1, fista, pdhg");
  montecarlo->add_option("--e", mc_e, "eAMP parameter (default: min{1,4/(L+2)})");
  montecarlo->add_option("--kkt-tol", mc_kkt_tol, "Convergence tolerance");
  montecarlo->add_option("--max-iter", mc_max_iter, "Iteration cap per trial");
  montecarlo->add_option("--out", out_file, "Output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(spec_path, out_dir);
    if (compare->parsed()) {
      if (!config_path.empty()) apply_config_json(config_path, compare_opt);
      return cmd_compare(instance_dir, out_dir, compare_opt);
    }
    if (stability->parsed()) return cmd_stability(instance_dir, e_values, out_dir);
    if (montecarlo->parsed())
      return cmd_montecarlo(spec_path, trials, solver, mc_e, mc_kkt_tol, mc_max_iter, out_file);
  } catch (const eamp::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
