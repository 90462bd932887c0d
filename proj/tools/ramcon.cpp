// Command-line front end: graph generation, spectra, consensus and detection
// runs, the stopping rule, and declarative experiments.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ramcon/consensus.hpp"
#include "ramcon/detection.hpp"
#include "ramcon/error.hpp"
#include "ramcon/experiments.hpp"
#include "ramcon/generators.hpp"
#include "ramcon/graph_io.hpp"
#include "ramcon/rng.hpp"
#include "ramcon/spectral.hpp"

namespace {

using namespace ramcon;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct GraphSource {
  std::string graph_file;
  std::string family;
  std::size_t n = 0;
  std::size_t k = 0;
  double pw = 0.0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::optional<std::uint64_t> swaps;
  std::uint64_t seed = 0;

  void attach(CLI::App* app, bool needs_graph) {
    auto* file = app->add_option("--graph", graph_file, "Edge-list file to read");
    auto* fam = app->add_option("--family", family, "Generator: rrl, ws1, er, lps1, lps2, r3l");
    if (needs_graph) {
      file->excludes(fam);
    } else {
      fam->required();
    }
    app->add_option("--n", n, "Vertex count");
    app->add_option("--k", k, "Degree (average degree for er)");
    app->add_option("--pw", pw, "WS-I rewiring probability");
    app->add_option("--p", p, "LPS prime p");
    app->add_option("--q", q, "LPS prime q");
    app->add_option("--swaps", swaps, "R3L swap count (default 10 nk/2)");
    app->add_option("--seed", seed, "Random seed");
  }

  GeneratorParams params() const {
    GeneratorParams gp;
    gp.family = parse_family(family);
    gp.n = n;
    gp.k = k;
    gp.pw = pw;
    gp.p = p;
    gp.q = q;
    gp.swaps = swaps;
    gp.seed = seed;
    return gp;
  }

  Graph load() const {
    if (!graph_file.empty()) return read_edge_list(std::filesystem::path(graph_file));
    if (family.empty()) throw InvalidArgument("give either --graph or --family");
    return generate(params());
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    for (char& c : token)
      if (c == ',') c = ' ';
    std::istringstream parts(token);
    double v;
    while (parts >> v) out.push_back(v);
    if (!parts.eof()) throw InvalidArgument(path + ": not a number: " + token);
  }
  return out;
}

void cmd_gen(const GraphSource& src, const std::string& out) {
  GeneratorStats stats;
  const Graph g = generate(src.params(), &stats);
  std::ostringstream text;
  write_edge_list(text, g);
  write_output(out, text.str());
  if (!out.empty() && out != "-") {
    const DegreeProfile d = degree_profile(g);
    std::cout << "vertices " << g.vertex_count() << " edges " << g.edge_count() << " loops_dropped "
              << g.dropped_loop_count() << " degree " << d.min_degree << ".." << d.max_degree << " connected "
              << (is_connected(g) ? "yes" : "no") << "\n";
  }
}

void cmd_spectrum(const GraphSource& src, const std::string& out) {
  const Graph g = src.load();
  const SpectralSummary s = spectral_summary(g);
  std::ostringstream text;
  text << "lambda2 " << num(s.lambda2) << "\n"
       << "lambda_n " << num(s.lambda_n) << "\n"
       << "gamma " << num(s.gamma) << "\n"
       << "gamma2 " << num(s.gamma2) << "\n"
       << "alpha_star " << num(s.alpha_star) << "\n";
  if (s.adjacency_second) text << "lambda_g " << num(*s.adjacency_second) << "\n";
  if (s.is_ramanujan) text << "ramanujan " << (*s.is_ramanujan ? "yes" : "no") << "\n";
  write_output(out, text.str());
}

struct ConsensusArgs {
  std::size_t iterations = 100;
  std::optional<double> alpha;
  std::string x0_file;
  std::optional<double> noise_stddev;
  std::string noise_file;
  std::uint64_t run_seed = 1;
  std::string out;
};

void cmd_consensus(const GraphSource& src, const ConsensusArgs& a) {
  const Graph g = src.load();
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::VectorXd x0(n);
  if (!a.x0_file.empty()) {
    const auto values = read_numbers(a.x0_file);
    if (static_cast<Eigen::Index>(values.size()) != n)
      throw InvalidArgument(a.x0_file + ": " + std::to_string(values.size()) + " values for " + std::to_string(n) +
                            " vertices");
    for (Eigen::Index v = 0; v < n; ++v) x0[v] = values[v];
  } else {
    Rng rng(Rng::split(a.run_seed, 0));
    for (Eigen::Index v = 0; v < n; ++v) x0[v] = rng.uniform01();
  }

  ConsensusConfig cfg;
  cfg.alpha = a.alpha;
  cfg.max_iterations = a.iterations;
  cfg.seed = Rng::split(a.run_seed, 1);
  if (a.noise_stddev) cfg.noise_stddevs = std::vector<double>(g.vertex_count(), *a.noise_stddev);
  if (!a.noise_file.empty()) cfg.noise_stddevs = read_numbers(a.noise_file);

  const ConsensusRun run = run_consensus(g, cfg, x0);
  std::ostringstream text;
  text << "iteration,deviation_norm,bound_value\n";
  for (std::size_t i = 0; i < run.deviation_norms.size(); ++i)
    text << i << ',' << num(run.deviation_norms[i]) << ',' << num(run.bound_values[i]) << '\n';
  write_output(a.out, text.str());
}

struct DetectArgs {
  double mu = 1.0;
  double sigma2 = 1.0;
  double phi = 0.0;
  std::string phi_file;
  std::size_t iterations = 30;
  std::size_t trials = 0;
  std::uint64_t run_seed = 1;
  std::string out;
};

void cmd_detect(const GraphSource& src, const DetectArgs& a) {
  const Graph g = src.load();
  DetectionModel model;
  model.mu = a.mu;
  model.sigma2 = a.sigma2;
  model.n_sensors = g.vertex_count();
  if (!a.phi_file.empty()) {
    model.phi = read_numbers(a.phi_file);
  } else if (a.phi > 0.0) {
    model.phi.assign(g.vertex_count(), a.phi);
  }
  model.validate();

  const PeCurve curve = empirical_pe_curve(g, model, a.iterations, a.trials, a.run_seed);
  const double gamma2 = spectral_summary(g).gamma2;
  std::ostringstream text;
  text << "iteration,mean_pe_analytic,mean_pe_empirical,var_bound,var_max_actual\n";
  for (std::size_t i = 0; i <= a.iterations; ++i) {
    text << i << ',' << num(curve.mean_analytic(i)) << ',' << (a.trials > 0 ? num(curve.mean_empirical(i)) : "")
         << ',' << num(variance_upper_bound(gamma2, model, i)) << ',' << num(curve.variances[i].maxCoeff()) << '\n';
  }
  write_output(a.out, text.str());
}

struct StoppingArgs {
  std::size_t n = 1000;
  double snr = 1.0;
  double gamma2 = 0.7;
  double phimax = 0.1;
  std::string out;
};

void cmd_stopping(const StoppingArgs& a) {
  DetectionModel model;
  model.mu = std::sqrt(a.snr);
  model.sigma2 = 1.0;
  model.n_sensors = a.n;
  if (a.phimax > 0.0) model.phi.assign(a.n, a.phimax);
  model.validate();
  const StoppingAnalysis s = optimal_stopping(a.gamma2, model);

  std::ostringstream text;
  text << "assumption_holds " << (s.assumption_holds ? "yes" : "no") << "\n";
  if (s.z_star) text << "z_star " << num(*s.z_star) << "\n";
  if (s.assumption_holds) {
    text << "i_star " << s.i_star << "\n"
         << "f_floor " << num(s.f_floor) << "\n"
         << "f_ceil " << num(s.f_ceil) << "\n"
         << "reduction_factor " << num(s.reduction_factor) << "\n"
         << "reduction_db " << num(10.0 * std::log10(s.reduction_factor)) << "\n"
         << "worthwhile " << (s.worthwhile ? "yes" : "no") << "\n";
  } else {
    text << "noise floor phi_max^2/(1-gamma2^2) exceeds 4 mu^2/sigma^2: iterating does not help\n";
  }
  write_output(a.out, text.str());
}

void cmd_experiment(const std::string& spec_path, const std::string& out, unsigned threads) {
  const ExperimentSpec spec = load_experiment_spec(spec_path);
  const ExperimentResult result = run_experiment(spec, {}, threads);
  serialize_result(result, out);
  std::size_t rejected = 0;
  for (const auto& p : result.points)
    for (const auto& c : p.competitors) rejected += c.rejected;
  std::cout << "points " << result.points.size() << " rejected_draws " << rejected << " written " << out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus topologies: Ramanujan graphs, spectra, consensus and distributed detection"};
  app.require_subcommand(1);

  GraphSource gen_src;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a graph and write its edge list");
  gen_src.attach(gen, false);
  gen->add_option("--out", gen_out, "Output edge-list file (stdout if omitted)");

  GraphSource spec_src;
  std::string spec_out;
  auto* spectrum = app.add_subcommand("spectrum", "Laplacian extremes, eigenratio and Ramanujan check");
  spec_src.attach(spectrum, true);
  spectrum->add_option("--out", spec_out, "Output file (stdout if omitted)");

  GraphSource cons_src;
  ConsensusArgs cons;
  auto* consensus = app.add_subcommand("consensus", "Run average consensus and write the deviation trace");
  cons_src.attach(consensus, true);
  consensus->add_option("--iters", cons.iterations, "Iterations")->capture_default_str();
  consensus->add_option("--alpha", cons.alpha, "Edge weight (default alpha*)");
  consensus->add_option("--x0", cons.x0_file, "Initial state file (default uniform [0,1) from --run-seed)");
  auto* nstd = consensus->add_option("--noise-stddev", cons.noise_stddev, "Equal channel noise std dev");
  consensus->add_option("--noise-file", cons.noise_file, "Per-node channel noise std devs")->excludes(nstd);
  consensus->add_option("--run-seed", cons.run_seed, "Seed for x0 and noise")->capture_default_str();
  consensus->add_option("--out", cons.out, "CSV output (stdout if omitted)");

  GraphSource det_src;
  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "Distributed detection error curves");
  det_src.attach(detect, true);
  detect->add_option("--mu", det.mu, "Signal level")->capture_default_str();
  detect->add_option("--sigma2", det.sigma2, "Measurement noise variance")->capture_default_str();
  auto* phi = detect->add_option("--phi", det.phi, "Equal channel noise std dev");
  detect->add_option("--phi-file", det.phi_file, "Per-node channel noise std devs")->excludes(phi);
  detect->add_option("--iters", det.iterations, "Iterations")->capture_default_str();
  detect->add_option("--trials", det.trials, "Monte Carlo trials (0 = analytic only)")->capture_default_str();
  detect->add_option("--run-seed", det.run_seed, "Monte Carlo seed")->capture_default_str();
  detect->add_option("--out", det.out, "CSV output (stdout if omitted)");

  StoppingArgs stop;
  auto* stopping = app.add_subcommand("stopping", "Optimal stopping iteration under noisy links");
  stopping->add_option("--n", stop.n, "Sensor count")->capture_default_str();
  stopping->add_option("--snr", stop.snr, "mu^2 / sigma^2")->capture_default_str();
  stopping->add_option("--gamma2", stop.gamma2, "Contraction factor gamma2")->capture_default_str();
  stopping->add_option("--phimax", stop.phimax, "Largest channel noise std dev")->capture_default_str();
  stopping->add_option("--out", stop.out, "Output file (stdout if omitted)");

  std::string exp_spec, exp_out;
  unsigned threads = 0;
  auto* experiment = app.add_subcommand("experiment", "Run a YAML experiment spec");
  experiment->add_option("--spec", exp_spec, "Experiment spec (YAML)")->required();
  experiment->add_option("--out", exp_out, "Output directory")->required();
  experiment->add_option("--threads", threads, "Worker threads (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) cmd_gen(gen_src, gen_out);
    if (*spectrum) cmd_spectrum(spec_src, spec_out);
    if (*consensus) cmd_consensus(cons_src, cons);
    if (*detect) cmd_detect(det_src, det);
    if (*stopping) cmd_stopping(stop);
    if (*experiment) cmd_experiment(exp_spec, exp_out, threads);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
