// npg: instance generation, solving, benchmarking and certification.
//
// Exit codes: 0 success, 1 usage error, 2 solver or configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "npg/bench.hpp"
#include "npg/io.hpp"
#include "npg/solvers.hpp"
#include "npg/stationarity.hpp"

namespace {

struct GenerationFlags {
  std::string family = "cs-least-squares";
  long m = 120;
  long n = 512;
  long s = 20;
  double sigma = 0.1;
  std::uint64_t seed = 1;
};

void add_generation_flags(CLI::App* cmd, GenerationFlags& flags) {
  cmd->add_option("--family", flags.family, "cs-least-squares | logistic | simplex-least-squares")
      ->capture_default_str();
  cmd->add_option("--m", flags.m, "number of rows / samples")->capture_default_str();
  cmd->add_option("--n", flags.n, "dimension")->capture_default_str();
  cmd->add_option("--s", flags.s, "sparsity (cs-least-squares only; other families use n/100)")
      ->capture_default_str();
  cmd->add_option("--sigma", flags.sigma, "noise level (cs-least-squares)")->capture_default_str();
  cmd->add_option("--seed", flags.seed, "random seed")->capture_default_str();
}

npg::Instance generate(const GenerationFlags& flags) {
  return npg::make_instance(npg::parse_family(flags.family), {flags.m, flags.n, flags.s}, flags.seed, flags.sigma);
}

// Writes to the given path, or stdout when the path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw npg::Error("cannot open '" + path + "' for writing");
  out << text;
}

std::vector<npg::Method> parse_methods(const std::string& text) {
  if (text == "pg") return {npg::Method::kPg};
  if (text == "npg") return {npg::Method::kNpg};
  return {npg::Method::kPg, npg::Method::kNpg};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse projected gradient solvers over symmetric sets"};
  app.require_subcommand(1);

  GenerationFlags gen_flags;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write an instance file");
  add_generation_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "instance file path")->required();

  GenerationFlags solve_flags;
  std::string solve_instance, solve_out, solve_point_out, solve_method = "npg";
  npg::CertifyOptions solve_certify;
  double solve_f_tol = 1e-8;
  long solve_max_iter = 100'000;
  auto* solve = app.add_subcommand("solve", "solve one instance and print the iterate trace as JSON");
  add_generation_flags(solve, solve_flags);
  solve->add_option("--instance", solve_instance, "instance file (otherwise generated from the flags)");
  solve->add_option("--method", solve_method, "pg | npg | both")
      ->check(CLI::IsMember({"pg", "npg", "both"}))
      ->capture_default_str();
  solve->add_option("--out", solve_out, "JSON output path (default stdout)");
  solve->add_option("--point-out", solve_point_out, "write the final point (last method) to this file");
  solve->add_option("--grid-points", solve_certify.grid_points, "certificate grid size")->capture_default_str();
  solve->add_option("--tol", solve_certify.tol, "certificate tolerance")->capture_default_str();
  solve->add_option("--f-tol", solve_f_tol, "stop when |f(x^k) - f(x^{k-1})| <= f-tol")->capture_default_str();
  solve->add_option("--max-iter", solve_max_iter, "iteration cap")->capture_default_str();

  GenerationFlags bench_flags;
  std::vector<std::string> bench_families;
  long bench_seed_count = 1;
  std::string bench_method = "both", bench_out, bench_format = "csv";
  bool bench_no_time = false;
  npg::BenchOptions bench_options;
  auto* bench = app.add_subcommand("bench", "run PG and NPG over generated instances");
  add_generation_flags(bench, bench_flags);
  bench->add_option("--families", bench_families, "several families, comma separated")->delimiter(',');
  bench->add_option("--seeds", bench_seed_count, "run this many consecutive seeds starting at --seed")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--method", bench_method, "pg | npg | both")
      ->check(CLI::IsMember({"pg", "npg", "both"}))
      ->capture_default_str();
  bench->add_option("--out", bench_out, "output path (default stdout)");
  bench->add_option("--format", bench_format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  bench->add_option("--grid-points", bench_options.certify.grid_points, "certificate grid size")->capture_default_str();
  bench->add_option("--tol", bench_options.certify.tol, "certificate tolerance")->capture_default_str();
  bench->add_option("--f-tol", bench_options.f_tol, "termination tolerance")->capture_default_str();
  bench->add_option("--max-iter", bench_options.max_iter, "iteration cap")->capture_default_str();
  bench->add_flag("--no-time", bench_no_time, "leave the time column empty (reproducible output)");

  std::string cert_instance, cert_point, cert_out;
  std::optional<double> cert_tbar;
  int cert_grid = 50;
  double cert_tol = 1e-6;
  auto* cert = app.add_subcommand("certify", "stationarity report for a point");
  cert->add_option("--instance", cert_instance, "instance file")->required();
  cert->add_option("--point", cert_point, "point file, one value per line")->required();
  cert->add_option("--tbar", cert_tbar, "grid upper end (default 0.995/L)");
  cert->add_option("--grid-points", cert_grid, "grid size")->capture_default_str();
  cert->add_option("--tol", cert_tol, "tolerance")->capture_default_str();
  cert->add_option("--out", cert_out, "JSON output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*gen) {
      npg::save_instance(gen_out, generate(gen_flags));
    } else if (*solve) {
      const npg::Instance instance = solve_instance.empty() ? generate(solve_flags) : npg::load_instance(solve_instance);
      npg::BenchOptions options;
      options.f_tol = solve_f_tol;
      options.max_iter = solve_max_iter;
      options.certify = solve_certify;
      nlohmann::json result = nlohmann::json::object();
      npg::Vector last_point;
      for (npg::Method method : parse_methods(solve_method)) {
        npg::IterateTrace trace;
        const npg::BenchRow row = npg::run_method(instance, method, options, &trace);
        if (!row.error.empty()) {
          std::cerr << "error: " << npg::to_string(method) << ": " << row.error << '\n';
          return 2;
        }
        result[npg::to_string(method)] = npg::to_json(trace);
        last_point = trace.x_final;
      }
      emit(solve_out, result.dump(2) + "\n");
      if (!solve_point_out.empty()) npg::save_point(solve_point_out, last_point);
    } else if (*bench) {
      if (bench_families.empty()) bench_families.push_back(bench_flags.family);
      for (const auto& f : bench_families) bench_options.families.push_back(npg::parse_family(f));
      bench_options.sizes = {{bench_flags.m, bench_flags.n, bench_flags.s}};
      for (long k = 0; k < bench_seed_count; ++k) bench_options.seeds.push_back(bench_flags.seed + static_cast<std::uint64_t>(k));
      bench_options.methods = parse_methods(bench_method);
      bench_options.sigma = bench_flags.sigma;
      const npg::BenchReport report = npg::run_benchmark(bench_options);
      std::ostringstream text;
      if (bench_format == "csv") {
        npg::write_csv(text, report, !bench_no_time);
      } else {
        text << npg::to_json(report, !bench_no_time).dump(2) << '\n';
      }
      emit(bench_out, text.str());
      for (const auto& row : report.rows) {
        if (!row.error.empty()) {
          std::cerr << "error: " << npg::to_string(row.family) << " seed " << row.seed << ": " << row.error << '\n';
          return 2;
        }
      }
    } else if (*cert) {
      const npg::Instance instance = npg::load_instance(cert_instance);
      const npg::Vector x = npg::load_point(cert_point);
      if (x.size() != instance.objective.dim()) throw npg::DimensionMismatch("point length differs from n");
      const double tbar = cert_tbar.value_or(0.995 / instance.objective.lipschitz());
      const auto report = npg::certify(instance.objective, instance.set, instance.s, x, npg::uniform_grid(tbar, cert_grid),
                                       cert_tol);
      emit(cert_out, npg::to_json(report).dump(2) + "\n");
    }
  } catch (const npg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
