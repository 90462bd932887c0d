#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <string_view>
#include <vector>

#include "ramcon/detection.hpp"
#include "ramcon/generators.hpp"

namespace ramcon {

enum class Metric { Gamma, Lambda2, Gamma2, Sc };

std::string_view to_string(Metric m);
/// gamma, lambda2, gamma2, S_c (also accepts "sc").
Metric parse_metric(std::string_view name);
/// gamma2 is a contraction factor: smaller is better.
inline bool maximized(Metric m) { return m != Metric::Gamma2; }

enum class SweepParameter { N, Pw, Swaps };

std::string_view to_string(SweepParameter s);
SweepParameter parse_sweep_parameter(std::string_view name);

struct Sweep {
  SweepParameter parameter = SweepParameter::N;
  std::vector<double> values;

  bool operator==(const Sweep&) const = default;
};

struct Competitor {
  GeneratorParams params;
  std::size_t n_seeds = 1;
  std::string label;  ///< defaults to the family name
};

struct ExperimentSpec {
  GeneratorParams baseline;
  std::vector<Competitor> competitors;
  std::optional<Sweep> sweep;
  std::vector<Metric> metrics{Metric::Gamma, Metric::Lambda2, Metric::Gamma2};
  /// mu and sigma2 for S_c; n_sensors is set per graph and phi is ignored.
  std::optional<DetectionModel> detection_model;
  std::uint64_t master_seed = 0;
  /// Disconnected ER draws tolerated per seed before giving up.
  std::size_t max_rejections = 10000;

  /// Checks seed counts, sweep ordering, generator admissibility and matched
  /// (N, k) at every sweep point. Throws InvalidArgument.
  void validate() const;
  /// The generator parameters of baseline and competitors at sweep point i.
  GeneratorParams baseline_at(std::size_t point) const;
  GeneratorParams competitor_at(std::size_t competitor, std::size_t point) const;
  std::size_t point_count() const { return sweep ? sweep->values.size() : 1; }
};

/// Reads the YAML experiment document; see README for the schema.
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);
ExperimentSpec parse_experiment_spec(std::string_view yaml_text);

struct Envelope {
  double best = 0.0;
  double mean = 0.0;
  double worst = 0.0;

  bool operator==(const Envelope&) const = default;
};

struct MetricEnvelope {
  Metric metric = Metric::Gamma;
  Envelope envelope;

  bool operator==(const MetricEnvelope&) const = default;
};

struct FamilyResult {
  std::string label;
  GeneratorParams params;  ///< seed field holds the family stream seed
  std::size_t seeds = 1;
  std::uint64_t rejected = 0;  ///< disconnected draws thrown away
  std::vector<MetricEnvelope> metrics;
  std::optional<double> psi;  ///< S_c(baseline) / S_c(family)
  std::optional<double> nu;   ///< gamma(baseline) / gamma(family)
  std::optional<double> eta;  ///< lambda2(baseline) / lambda2(family)

  const Envelope* find(Metric m) const;
  bool operator==(const FamilyResult&) const = default;
};

struct PointResult {
  std::optional<double> sweep_value;
  std::size_t n = 0;
  std::size_t k = 0;
  FamilyResult baseline;
  std::vector<FamilyResult> competitors;

  bool operator==(const PointResult&) const = default;
};

inline constexpr int kResultSchemaVersion = 1;

struct ExperimentResult {
  int schema_version = kResultSchemaVersion;
  std::uint64_t master_seed = 0;
  std::vector<Metric> metrics;
  std::optional<SweepParameter> sweep_parameter;
  std::vector<PointResult> points;

  bool operator==(const ExperimentResult&) const = default;
};

class ExperimentCancelled : public std::runtime_error {
 public:
  ExperimentCancelled() : std::runtime_error("experiment cancelled") {}
};

/// Seed s of competitor c at point i is built from
/// Rng::split(master_seed, i, c + 1) mixed with s; the baseline uses stream 0.
/// Work is spread over `threads` workers (0 = hardware concurrency) and reduced
/// in seed order, so the result does not depend on the thread count. A stop
/// request is honoured between seeds by throwing ExperimentCancelled.
ExperimentResult run_experiment(const ExperimentSpec& spec, std::stop_token stop = {}, unsigned threads = 0);

/// Writes <dir>/result.json, <dir>/<metric>.csv and <dir>/plots/*.dat.
void serialize_result(const ExperimentResult& result, const std::filesystem::path& dir);
ExperimentResult read_result(const std::filesystem::path& result_json);

std::string result_to_json(const ExperimentResult& result);
ExperimentResult result_from_json(std::string_view text);
/// Columns: sweep_value,n,k,family,envelope,value. One row per point, family
/// (baseline first) and envelope.
std::string metric_csv(const ExperimentResult& result, Metric m);

}  // namespace ramcon
