#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ramcon/error.hpp"
#include "ramcon/experiments.hpp"
#include "ramcon/spectral.hpp"

using namespace ramcon;

namespace {

GeneratorParams lps2(std::int64_t q) {
  GeneratorParams p;
  p.family = Family::LPS2;
  p.p = 5;
  p.q = q;
  return p;
}

GeneratorParams family(Family f, std::size_t n, std::size_t k) {
  GeneratorParams p;
  p.family = f;
  p.n = n;
  p.k = k;
  return p;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ramcon-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("baseline against itself gives unit ratios") {
  ExperimentSpec spec;
  spec.baseline = lps2(41);
  spec.competitors.push_back({lps2(41), 1, "self"});
  spec.metrics = {Metric::Gamma, Metric::Lambda2, Metric::Gamma2, Metric::Sc};
  const auto r = run_experiment(spec);
  REQUIRE(r.points.size() == 1);
  const auto& c = r.points[0].competitors[0];
  CHECK(*c.psi == doctest::Approx(1.0));
  CHECK(*c.nu == doctest::Approx(1.0));
  CHECK(*c.eta == doctest::Approx(1.0));
  CHECK(r.points[0].baseline.find(Metric::Gamma)->mean ==
        doctest::Approx(spectral_summary(gen_lps2(5, 41)).gamma));
}

TEST_CASE("LPS-II beats the lattice and the random graphs on average") {
  ExperimentSpec spec;
  spec.baseline = lps2(41);
  spec.competitors.push_back({family(Family::RRL, 42, 6), 1, "rrl"});
  spec.competitors.push_back({family(Family::ER, 42, 6), 200, "er"});
  spec.master_seed = 11;
  const auto r = run_experiment(spec);
  const auto& p = r.points[0];
  CHECK(*p.competitors[0].nu > 1.0);
  CHECK(*p.competitors[1].nu > 1.0);
  CHECK(p.competitors[1].find(Metric::Gamma)->mean < p.baseline.find(Metric::Gamma)->mean);
  CHECK(p.competitors[1].seeds == 200);
  for (const auto& f : p.competitors) {
    for (const auto& m : f.metrics) {
      if (maximized(m.metric)) {
        CHECK(m.envelope.best >= m.envelope.mean);
        CHECK(m.envelope.mean >= m.envelope.worst);
      } else {
        CHECK(m.envelope.best <= m.envelope.mean);
        CHECK(m.envelope.mean <= m.envelope.worst);
      }
    }
  }
}

TEST_CASE("results do not depend on the thread count") {
  ExperimentSpec spec;
  spec.baseline = lps2(29);
  spec.competitors.push_back({family(Family::R3L, 30, 6), 12, "r3l"});
  spec.competitors.push_back({family(Family::ER, 30, 6), 12, "er"});
  spec.master_seed = 5;
  CHECK(run_experiment(spec, {}, 1) == run_experiment(spec, {}, 4));
}

TEST_CASE("mismatched sizes are rejected before any work") {
  ExperimentSpec spec;
  spec.baseline = lps2(41);
  spec.competitors.push_back({family(Family::RRL, 40, 6), 1, "rrl"});
  CHECK_THROWS_AS(run_experiment(spec), InvalidArgument);
  spec.competitors[0].params.n = 42;
  spec.competitors[0].n_seeds = 0;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.competitors[0].n_seeds = 1;
  spec.baseline.q = 43;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
}

TEST_CASE("sweeps over n") {
  ExperimentSpec spec;
  spec.baseline = lps2(29);
  spec.competitors.push_back({family(Family::RRL, 0, 6), 1, "rrl"});
  spec.competitors.push_back({family(Family::WS1, 0, 6), 3, "ws1"});
  spec.competitors.back().params.pw = 0.5;
  spec.sweep = Sweep{SweepParameter::N, {30, 42, 62}};
  const auto r = run_experiment(spec);
  REQUIRE(r.points.size() == 3);
  CHECK(r.points[1].n == 42);
  CHECK(r.points[1].baseline.params.q == 41);
  CHECK(r.points[2].competitors[0].params.n == 62);

  spec.sweep = Sweep{SweepParameter::N, {42, 30}};
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.sweep = Sweep{SweepParameter::N, {42, 44}};
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);  // q = 43 is not admissible
}

TEST_CASE("serialization round trip and file layout") {
  ExperimentSpec spec;
  spec.baseline = lps2(29);
  spec.competitors.push_back({family(Family::WS1, 30, 6), 4, "ws1"});
  spec.competitors.push_back({family(Family::R3L, 30, 6), 4, "r3l"});
  spec.sweep = Sweep{SweepParameter::Pw, {0.1, 0.5}};
  spec.metrics = {Metric::Gamma, Metric::Sc};
  spec.master_seed = 3;
  const auto r = run_experiment(spec);

  const auto dir = scratch("roundtrip");
  serialize_result(r, dir);
  CHECK(read_result(dir / "result.json") == r);
  CHECK(result_from_json(result_to_json(r)) == r);
  // Header plus points x families x envelopes.
  CHECK(lines(slurp(dir / "gamma.csv")) == 1 + 2 * 3 * 3);
  CHECK(lines(slurp(dir / "S_c.csv")) == 1 + 2 * 3 * 3);
  CHECK(std::filesystem::exists(dir / "plots" / "gamma.dat"));
  CHECK(std::filesystem::exists(dir / "plots" / "ratios.dat"));
  CHECK_FALSE(std::filesystem::exists(dir / "lambda2.csv"));

  const auto again = scratch("roundtrip2");
  serialize_result(run_experiment(spec), again);
  CHECK(slurp(dir / "result.json") == slurp(again / "result.json"));
  CHECK(slurp(dir / "gamma.csv") == slurp(again / "gamma.csv"));
}

TEST_CASE("empty competitor list") {
  ExperimentSpec spec;
  spec.baseline = lps2(41);
  const auto r = run_experiment(spec);
  CHECK(r.points[0].competitors.empty());
  const auto dir = scratch("empty");
  serialize_result(r, dir);
  CHECK(read_result(dir / "result.json") == r);
  CHECK(lines(slurp(dir / "gamma.csv")) == 1 + 3);
}

TEST_CASE("io errors carry the path") {
  try {
    read_result("/nonexistent/dir/result.json");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/result.json") != std::string::npos);
  }
  CHECK_THROWS_AS(result_from_json("{\"schema_version\": 99}"), InvalidArgument);
}

TEST_CASE("yaml spec") {
  const auto spec = parse_experiment_spec(R"(
master_seed: 2024
metrics: [gamma, gamma2, S_c]
baseline: {family: lps2, p: 5, q: 41}
competitors:
  - {family: rrl, n: 42, k: 6}
  - {family: er, n: 42, k: 6, seeds: 20, label: erdos}
sweep: {parameter: n, values: [42, 62]}
detection: {mu: 1.0, sigma2: 2.0}
)");
  CHECK(spec.master_seed == 2024);
  CHECK(spec.metrics == std::vector<Metric>{Metric::Gamma, Metric::Gamma2, Metric::Sc});
  CHECK(spec.baseline == lps2(41));
  REQUIRE(spec.competitors.size() == 2);
  CHECK(spec.competitors[0].label == "rrl");
  CHECK(spec.competitors[1].label == "erdos");
  CHECK(spec.competitors[1].n_seeds == 20);
  CHECK(spec.sweep->values == std::vector<double>{42, 62});
  CHECK(spec.detection_model->sigma2 == 2.0);

  CHECK_THROWS_AS(parse_experiment_spec("baseline: {family: lps2, p: 5, q: 41}\ncolour: red\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_spec("baseline: {family: lps2, p: 5, q: 41}\nmetrics: [speed]\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_spec("master_seed: 1\n"), InvalidArgument);
  CHECK_THROWS_AS(load_experiment_spec("/nonexistent/spec.yaml"), IoError);
}

TEST_CASE("cancellation") {
  ExperimentSpec spec;
  spec.baseline = lps2(41);
  spec.competitors.push_back({family(Family::ER, 42, 6), 50, "er"});
  std::stop_source source;
  source.request_stop();
  CHECK_THROWS_AS(run_experiment(spec, source.get_token()), ExperimentCancelled);
}
