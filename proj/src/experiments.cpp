#include "ramcon/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <yaml-cpp/yaml.h>

#include "json.hpp"
#include "ramcon/error.hpp"
#include "ramcon/rng.hpp"
#include "ramcon/spectral.hpp"

namespace ramcon {

using Json = nlohmann::ordered_json;

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Gamma: return "gamma";
    case Metric::Lambda2: return "lambda2";
    case Metric::Gamma2: return "gamma2";
    case Metric::Sc: return "S_c";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  if (name == "sc") return Metric::Sc;
  for (Metric m : {Metric::Gamma, Metric::Lambda2, Metric::Gamma2, Metric::Sc})
    if (to_string(m) == name) return m;
  throw InvalidArgument("unknown metric '" + std::string(name) + "' (expected gamma, lambda2, gamma2 or S_c)");
}

std::string_view to_string(SweepParameter s) {
  switch (s) {
    case SweepParameter::N: return "n";
    case SweepParameter::Pw: return "pw";
    case SweepParameter::Swaps: return "swaps";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  for (SweepParameter s : {SweepParameter::N, SweepParameter::Pw, SweepParameter::Swaps})
    if (to_string(s) == name) return s;
  throw InvalidArgument("unknown sweep parameter '" + std::string(name) + "' (expected n, pw or swaps)");
}

const Envelope* FamilyResult::find(Metric m) const {
  for (const auto& e : metrics)
    if (e.metric == m) return &e.envelope;
  return nullptr;
}

namespace {

GeneratorParams apply_sweep(GeneratorParams params, const std::optional<Sweep>& sweep, std::size_t point,
                            const std::string& who) {
  if (!sweep) return params;
  const double value = sweep->values.at(point);
  switch (sweep->parameter) {
    case SweepParameter::N: {
      const auto n = static_cast<std::size_t>(value);
      if (params.family == Family::LPS2) {
        params.q = static_cast<std::int64_t>(n) - 1;
      } else if (params.family == Family::LPS1) {
        throw InvalidArgument(who + ": an N sweep cannot drive an LPS-I graph");
      } else {
        params.n = n;
      }
      break;
    }
    case SweepParameter::Pw:
      if (params.family == Family::WS1) params.pw = value;
      break;
    case SweepParameter::Swaps:
      if (params.family == Family::R3L) params.swaps = static_cast<std::uint64_t>(value);
      break;
  }
  return params;
}

bool is_random(Family f) { return f == Family::WS1 || f == Family::ER || f == Family::R3L; }

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GeneratorParams ExperimentSpec::baseline_at(std::size_t point) const {
  return apply_sweep(baseline, sweep, point, "baseline");
}

GeneratorParams ExperimentSpec::competitor_at(std::size_t competitor, std::size_t point) const {
  return apply_sweep(competitors.at(competitor).params, sweep, point,
                     "competitor " + std::to_string(competitor));
}

void ExperimentSpec::validate() const {
  if (metrics.empty()) throw InvalidArgument("experiment: no metrics requested");
  for (std::size_t i = 0; i < metrics.size(); ++i)
    for (std::size_t j = i + 1; j < metrics.size(); ++j)
      if (metrics[i] == metrics[j])
        throw InvalidArgument("experiment: metric " + std::string(to_string(metrics[i])) + " listed twice");
  for (std::size_t c = 0; c < competitors.size(); ++c)
    if (competitors[c].n_seeds < 1)
      throw InvalidArgument("experiment: competitor " + std::to_string(c) + " needs at least one seed");
  if (sweep) {
    if (sweep->values.empty()) throw InvalidArgument("experiment: sweep has no values");
    for (std::size_t i = 1; i < sweep->values.size(); ++i)
      if (!(sweep->values[i] > sweep->values[i - 1]))
        throw InvalidArgument("experiment: sweep values must be strictly increasing");
    for (double v : sweep->values) {
      if (sweep->parameter != SweepParameter::Pw && (v < 0 || v != std::floor(v)))
        throw InvalidArgument("experiment: sweep over " + std::string(to_string(sweep->parameter)) +
                              " needs non-negative integers");
    }
  }
  if (detection_model) {
    DetectionModel m = *detection_model;
    m.n_sensors = 1;
    m.phi.clear();
    m.validate();
  }

  for (std::size_t i = 0; i < point_count(); ++i) {
    const GeneratorParams base = baseline_at(i);
    ramcon::validate(base);
    const auto base_size = nominal_size(base);
    for (std::size_t c = 0; c < competitors.size(); ++c) {
      const GeneratorParams comp = competitor_at(c, i);
      ramcon::validate(comp);
      const auto size = nominal_size(comp);
      if (size != base_size)
        throw InvalidArgument("experiment: competitor " + std::to_string(c) + " (" +
                              std::string(ramcon::to_string(comp.family)) + ") has (N, k) = (" +
                              std::to_string(size.first) + ", " + std::to_string(size.second) +
                              ") but the baseline has (" + std::to_string(base_size.first) + ", " +
                              std::to_string(base_size.second) + ")");
    }
  }
}

// ---------------------------------------------------------------- config ---

namespace {

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw InvalidArgument("experiment spec: bad value for '" + key + "'");
  }
}

void reject_unknown(const YAML::Node& node, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InvalidArgument("experiment spec: unknown key '" + key + "' in " + where);
  }
}

GeneratorParams parse_params(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) throw InvalidArgument("experiment spec: " + where + " must be a table");
  if (!node["family"]) throw InvalidArgument("experiment spec: " + where + " has no family");
  GeneratorParams p;
  p.family = parse_family(scalar<std::string>(node["family"], "family"));
  if (node["n"]) p.n = scalar<std::size_t>(node["n"], "n");
  if (node["k"]) p.k = scalar<std::size_t>(node["k"], "k");
  if (node["pw"]) p.pw = scalar<double>(node["pw"], "pw");
  if (node["p"]) p.p = scalar<std::int64_t>(node["p"], "p");
  if (node["q"]) p.q = scalar<std::int64_t>(node["q"], "q");
  if (node["swaps"]) p.swaps = scalar<std::uint64_t>(node["swaps"], "swaps");
  return p;
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw InvalidArgument(std::string("experiment spec: ") + e.what());
  }
  if (!root.IsMap()) throw InvalidArgument("experiment spec: top level must be a table");
  reject_unknown(root, {"master_seed", "metrics", "baseline", "competitors", "sweep", "detection", "max_rejections"},
                 "the top level");

  ExperimentSpec spec;
  if (!root["baseline"]) throw InvalidArgument("experiment spec: missing baseline");
  reject_unknown(root["baseline"], {"family", "n", "k", "pw", "p", "q", "swaps"}, "baseline");
  spec.baseline = parse_params(root["baseline"], "baseline");
  if (root["master_seed"]) spec.master_seed = scalar<std::uint64_t>(root["master_seed"], "master_seed");
  if (root["max_rejections"]) spec.max_rejections = scalar<std::size_t>(root["max_rejections"], "max_rejections");

  if (root["metrics"]) {
    spec.metrics.clear();
    for (const auto& m : root["metrics"]) spec.metrics.push_back(parse_metric(scalar<std::string>(m, "metrics")));
  }
  if (const auto comps = root["competitors"]) {
    std::size_t index = 0;
    for (const auto& c : comps) {
      const std::string where = "competitor " + std::to_string(index++);
      reject_unknown(c, {"family", "n", "k", "pw", "p", "q", "swaps", "seeds", "label"}, where);
      Competitor comp;
      comp.params = parse_params(c, where);
      if (c["seeds"]) comp.n_seeds = scalar<std::size_t>(c["seeds"], "seeds");
      comp.label = c["label"] ? scalar<std::string>(c["label"], "label")
                              : std::string(ramcon::to_string(comp.params.family));
      spec.competitors.push_back(std::move(comp));
    }
  }
  if (const auto s = root["sweep"]) {
    reject_unknown(s, {"parameter", "values"}, "sweep");
    if (!s["parameter"] || !s["values"]) throw InvalidArgument("experiment spec: sweep needs parameter and values");
    Sweep sweep;
    sweep.parameter = parse_sweep_parameter(scalar<std::string>(s["parameter"], "sweep.parameter"));
    for (const auto& v : s["values"]) sweep.values.push_back(scalar<double>(v, "sweep.values"));
    spec.sweep = std::move(sweep);
  }
  if (const auto d = root["detection"]) {
    reject_unknown(d, {"mu", "sigma2", "threshold"}, "detection");
    DetectionModel m;
    if (d["mu"]) m.mu = scalar<double>(d["mu"], "detection.mu");
    if (d["sigma2"]) m.sigma2 = scalar<double>(d["sigma2"], "detection.sigma2");
    if (d["threshold"]) m.threshold = scalar<double>(d["threshold"], "detection.threshold");
    spec.detection_model = m;
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open experiment spec " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_experiment_spec(buf.str());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------- runner ---

namespace {

struct Task {
  std::size_t point;
  std::size_t family;  // 0 = baseline, c + 1 = competitor c
  std::size_t seed;
  GeneratorParams params;
};

struct Sample {
  std::vector<double> values;  // in spec.metrics order
  std::uint64_t rejected = 0;
};

Sample evaluate(const ExperimentSpec& spec, const Task& task) {
  Sample out;
  GeneratorParams params = task.params;
  std::optional<Graph> graph;
  for (std::uint64_t attempt = 0;; ++attempt) {
    params.seed = Rng::split(task.params.seed, task.seed, attempt);
    Graph g = generate(params);
    if (is_connected(g)) {
      graph.emplace(std::move(g));
      break;
    }
    if (!is_random(params.family))
      throw DisconnectedGraph("experiment: " + std::string(to_string(params.family)) + " graph is disconnected");
    if (++out.rejected > spec.max_rejections)
      throw InvalidArgument("experiment: more than " + std::to_string(spec.max_rejections) +
                            " disconnected draws for " + std::string(to_string(params.family)));
  }

  const SpectralSummary s = summarize(extreme_laplacian_eigenvalues(*graph));
  for (Metric m : spec.metrics) {
    switch (m) {
      case Metric::Gamma: out.values.push_back(s.gamma); break;
      case Metric::Lambda2: out.values.push_back(s.lambda2); break;
      case Metric::Gamma2: out.values.push_back(s.gamma2); break;
      case Metric::Sc: {
        DetectionModel model = spec.detection_model.value_or(DetectionModel{});
        model.n_sensors = graph->vertex_count();
        model.phi.clear();
        const auto tc = detection_convergence_time(*graph, model);
        out.values.push_back(tc ? 1.0 / static_cast<double>(std::max<std::size_t>(*tc, 1)) : 0.0);
        break;
      }
    }
  }
  return out;
}

std::optional<double> ratio(const FamilyResult& base, const FamilyResult& fam, Metric m) {
  const Envelope* b = base.find(m);
  const Envelope* f = fam.find(m);
  if (!b || !f || f->mean == 0.0) return std::nullopt;
  return b->mean / f->mean;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, std::stop_token stop, unsigned threads) {
  spec.validate();

  // Family stream seeds live in params.seed; per-seed draws split further.
  std::vector<Task> tasks;
  std::vector<std::vector<std::size_t>> first_task(spec.point_count());
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    for (std::size_t f = 0; f <= spec.competitors.size(); ++f) {
      GeneratorParams params = f == 0 ? spec.baseline_at(i) : spec.competitor_at(f - 1, i);
      params.seed = Rng::split(spec.master_seed, i, f);
      const std::size_t seeds = f == 0 ? 1 : spec.competitors[f - 1].n_seeds;
      first_task[i].push_back(tasks.size());
      for (std::size_t s = 0; s < seeds; ++s) tasks.push_back({i, f, s, params});
    }
  }

  std::vector<Sample> samples(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      if (stop.stop_requested() || failed) return;
      const std::size_t t = next++;
      if (t >= tasks.size()) return;
      try {
        samples[t] = evaluate(spec, tasks[t]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed = true;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (stop.stop_requested()) throw ExperimentCancelled();

  ExperimentResult result;
  result.master_seed = spec.master_seed;
  result.metrics = spec.metrics;
  if (spec.sweep) result.sweep_parameter = spec.sweep->parameter;
  for (std::size_t i = 0; i < spec.point_count(); ++i) {
    PointResult point;
    if (spec.sweep) point.sweep_value = spec.sweep->values[i];
    const GeneratorParams base_params = spec.baseline_at(i);
    std::tie(point.n, point.k) = nominal_size(base_params);

    std::vector<FamilyResult> families;
    for (std::size_t f = 0; f <= spec.competitors.size(); ++f) {
      const std::size_t begin = first_task[i][f];
      const Task& head = tasks[begin];
      FamilyResult fam;
      fam.label = f == 0 ? "baseline" : spec.competitors[f - 1].label;
      fam.params = head.params;
      fam.seeds = f == 0 ? 1 : spec.competitors[f - 1].n_seeds;
      for (std::size_t m = 0; m < spec.metrics.size(); ++m) {
        const bool up = maximized(spec.metrics[m]);
        Envelope env{samples[begin].values[m], 0.0, samples[begin].values[m]};
        double sum = 0.0;
        for (std::size_t s = 0; s < fam.seeds; ++s) {
          const double v = samples[begin + s].values[m];
          sum += v;
          env.best = up ? std::max(env.best, v) : std::min(env.best, v);
          env.worst = up ? std::min(env.worst, v) : std::max(env.worst, v);
        }
        env.mean = sum / static_cast<double>(fam.seeds);
        fam.metrics.push_back({spec.metrics[m], env});
      }
      for (std::size_t s = 0; s < fam.seeds; ++s) fam.rejected += samples[begin + s].rejected;
      families.push_back(std::move(fam));
    }
    for (auto& fam : families) {
      fam.psi = ratio(families.front(), fam, Metric::Sc);
      fam.nu = ratio(families.front(), fam, Metric::Gamma);
      fam.eta = ratio(families.front(), fam, Metric::Lambda2);
    }
    point.baseline = std::move(families.front());
    point.competitors.assign(std::make_move_iterator(families.begin() + 1), std::make_move_iterator(families.end()));
    result.points.push_back(std::move(point));
  }
  return result;
}

// --------------------------------------------------------- serialization ---

namespace {

Json params_json(const GeneratorParams& p) {
  Json j;
  j["family"] = std::string(to_string(p.family));
  j["n"] = p.n;
  j["k"] = p.k;
  j["pw"] = p.pw;
  j["p"] = p.p;
  j["q"] = p.q;
  j["swaps"] = p.swaps ? Json(*p.swaps) : Json(nullptr);
  j["seed"] = p.seed;
  return j;
}

GeneratorParams params_from(const Json& j) {
  GeneratorParams p;
  p.family = parse_family(j.at("family").get<std::string>());
  p.n = j.at("n").get<std::size_t>();
  p.k = j.at("k").get<std::size_t>();
  p.pw = j.at("pw").get<double>();
  p.p = j.at("p").get<std::int64_t>();
  p.q = j.at("q").get<std::int64_t>();
  if (!j.at("swaps").is_null()) p.swaps = j.at("swaps").get<std::uint64_t>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json family_json(const FamilyResult& f) {
  Json j;
  j["label"] = f.label;
  j["params"] = params_json(f.params);
  j["seeds"] = f.seeds;
  j["rejected"] = f.rejected;
  Json metrics = Json::object();
  for (const auto& m : f.metrics)
    metrics[std::string(to_string(m.metric))] = {
        {"best", m.envelope.best}, {"mean", m.envelope.mean}, {"worst", m.envelope.worst}};
  j["metrics"] = std::move(metrics);
  j["psi"] = optional_json(f.psi);
  j["nu"] = optional_json(f.nu);
  j["eta"] = optional_json(f.eta);
  return j;
}

FamilyResult family_from(const Json& j) {
  FamilyResult f;
  f.label = j.at("label").get<std::string>();
  f.params = params_from(j.at("params"));
  f.seeds = j.at("seeds").get<std::size_t>();
  f.rejected = j.at("rejected").get<std::uint64_t>();
  for (const auto& [name, env] : j.at("metrics").items())
    f.metrics.push_back({parse_metric(name),
                         {env.at("best").get<double>(), env.at("mean").get<double>(), env.at("worst").get<double>()}});
  f.psi = optional_from(j.at("psi"));
  f.nu = optional_from(j.at("nu"));
  f.eta = optional_from(j.at("eta"));
  return f;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string plot_data(const ExperimentResult& r, Metric m) {
  std::ostringstream out;
  out << "# x";
  if (!r.points.empty()) {
    out << ' ' << r.points.front().baseline.label << "_best " << r.points.front().baseline.label << "_mean "
        << r.points.front().baseline.label << "_worst";
    for (const auto& c : r.points.front().competitors)
      out << ' ' << c.label << "_best " << c.label << "_mean " << c.label << "_worst";
  }
  out << '\n';
  for (const auto& p : r.points) {
    out << format_double(p.sweep_value.value_or(static_cast<double>(p.n)));
    auto put = [&](const FamilyResult& f) {
      const Envelope* e = f.find(m);
      out << ' ' << format_double(e->best) << ' ' << format_double(e->mean) << ' ' << format_double(e->worst);
    };
    put(p.baseline);
    for (const auto& c : p.competitors) put(c);
    out << '\n';
  }
  return out.str();
}

std::string ratio_data(const ExperimentResult& r) {
  std::ostringstream out;
  out << "# x";
  if (!r.points.empty())
    for (const auto& c : r.points.front().competitors) out << ' ' << c.label << "_psi " << c.label << "_nu " << c.label << "_eta";
  out << '\n';
  auto val = [](const std::optional<double>& v) { return format_double(v.value_or(std::nan(""))); };
  for (const auto& p : r.points) {
    out << format_double(p.sweep_value.value_or(static_cast<double>(p.n)));
    for (const auto& c : p.competitors) out << ' ' << val(c.psi) << ' ' << val(c.nu) << ' ' << val(c.eta);
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string result_to_json(const ExperimentResult& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["master_seed"] = r.master_seed;
  Json metrics = Json::array();
  for (Metric m : r.metrics) metrics.push_back(std::string(to_string(m)));
  j["metrics"] = std::move(metrics);
  j["sweep_parameter"] = r.sweep_parameter ? Json(std::string(to_string(*r.sweep_parameter))) : Json(nullptr);
  Json points = Json::array();
  for (const auto& p : r.points) {
    Json pj;
    pj["sweep_value"] = optional_json(p.sweep_value);
    pj["n"] = p.n;
    pj["k"] = p.k;
    pj["baseline"] = family_json(p.baseline);
    Json comps = Json::array();
    for (const auto& c : p.competitors) comps.push_back(family_json(c));
    pj["competitors"] = std::move(comps);
    points.push_back(std::move(pj));
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

ExperimentResult result_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    ExperimentResult r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kResultSchemaVersion)
      throw InvalidArgument("result document has schema_version " + std::to_string(r.schema_version) +
                            ", expected " + std::to_string(kResultSchemaVersion));
    r.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& m : j.at("metrics")) r.metrics.push_back(parse_metric(m.get<std::string>()));
    if (!j.at("sweep_parameter").is_null())
      r.sweep_parameter = parse_sweep_parameter(j.at("sweep_parameter").get<std::string>());
    for (const auto& pj : j.at("points")) {
      PointResult p;
      p.sweep_value = optional_from(pj.at("sweep_value"));
      p.n = pj.at("n").get<std::size_t>();
      p.k = pj.at("k").get<std::size_t>();
      p.baseline = family_from(pj.at("baseline"));
      for (const auto& c : pj.at("competitors")) p.competitors.push_back(family_from(c));
      r.points.push_back(std::move(p));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed result document: ") + e.what());
  }
}

std::string metric_csv(const ExperimentResult& r, Metric m) {
  std::ostringstream out;
  out << "sweep_value,n,k,family,envelope,value\n";
  for (const auto& p : r.points) {
    const std::string x = p.sweep_value ? format_double(*p.sweep_value) : "";
    auto rows = [&](const FamilyResult& f) {
      const Envelope* e = f.find(m);
      if (!e) return;
      const std::string prefix = x + "," + std::to_string(p.n) + "," + std::to_string(p.k) + "," + f.label + ",";
      out << prefix << "best," << format_double(e->best) << '\n';
      out << prefix << "mean," << format_double(e->mean) << '\n';
      out << prefix << "worst," << format_double(e->worst) << '\n';
    };
    rows(p.baseline);
    for (const auto& c : p.competitors) rows(c);
  }
  return out.str();
}

void serialize_result(const ExperimentResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "plots", ec);
  if (ec) throw IoError("cannot create " + (dir / "plots").string() + ": " + ec.message());
  write_text(dir / "result.json", result_to_json(r));
  for (Metric m : r.metrics) {
    write_text(dir / (std::string(to_string(m)) + ".csv"), metric_csv(r, m));
    write_text(dir / "plots" / (std::string(to_string(m)) + ".dat"), plot_data(r, m));
  }
  write_text(dir / "plots" / "ratios.dat", ratio_data(r));
}

ExperimentResult read_result(const std::filesystem::path& result_json) {
  std::ifstream in(result_json, std::ios::binary);
  if (!in) throw IoError("cannot open " + result_json.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return result_from_json(buf.str());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(result_json.string() + ": " + e.what());
  }
}

}  // namespace ramcon
