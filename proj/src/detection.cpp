#include "ramcon/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ramcon/consensus.hpp"
#include "ramcon/error.hpp"
#include "ramcon/rng.hpp"

namespace ramcon {

void DetectionModel::validate() const {
  if (!(mu > 0.0)) throw InvalidArgument("detection model: mu must be positive");
  if (!(sigma2 > 0.0)) throw InvalidArgument("detection model: sigma2 must be positive");
  if (n_sensors == 0) throw InvalidArgument("detection model: need at least one sensor");
  if (!phi.empty() && phi.size() != n_sensors)
    throw InvalidArgument("detection model: phi has " + std::to_string(phi.size()) + " entries for " +
                          std::to_string(n_sensors) + " sensors");
  if (std::any_of(phi.begin(), phi.end(), [](double p) { return !(p >= 0.0); }))
    throw InvalidArgument("detection model: phi entries must be non-negative");
}

double DetectionModel::phi_max() const { return phi.empty() ? 0.0 : *std::max_element(phi.begin(), phi.end()); }

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_q_function(double x) {
  if (x < 20.0) return std::log(q_function(x));
  // Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + ...); ten terms are
  // below 1e-16 relative for x >= 20.
  const double inv2 = 1.0 / (x * x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 10; ++k) {
    term *= -(2.0 * k - 1.0) * inv2;
    sum += term;
  }
  return -0.5 * x * x - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(sum);
}

double local_llr(double y, const DetectionModel& model) { return 2.0 * model.mu * y / model.sigma2; }

double parallel_fusion_pe(const DetectionModel& model) {
  const double d = 2.0 * model.mu * std::sqrt(static_cast<double>(model.n_sensors) / model.sigma2);
  return q_function(d / 2.0);
}

AnalyticDetector::AnalyticDetector(const Graph& g, DetectionModel model, std::optional<double> alpha)
    : model_(std::move(model)) {
  if (model_.n_sensors != g.vertex_count())
    throw InvalidArgument("detection model has " + std::to_string(model_.n_sensors) + " sensors, graph has " +
                          std::to_string(g.vertex_count()) + " vertices");
  model_.validate();
  if (!is_connected(g)) throw DisconnectedGraph("analytic detector: graph is not connected");

  const Eigen::MatrixXd l = laplacian(g).dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
  const Eigen::VectorXd& lam = eig.eigenvalues();
  const Eigen::Index n = lam.size();
  const ExtremeEigenvalues ev{n > 1 ? lam[1] : 0.0, lam[n - 1]};
  alpha_ = alpha.value_or(n > 1 ? 2.0 / (ev.lambda2 + ev.lambda_n) : 0.0);
  gamma2_ = n > 1 ? contraction_factor(ev, alpha_) : 0.0;
  w_eigenvalues_ = (1.0 - alpha_ * lam.array()).matrix();
  weights_sq_ = eig.eigenvectors().array().square().matrix();

  const bool equal_phi = std::all_of(model_.phi.begin(), model_.phi.end(),
                                     [&](double p) { return p == model_.phi.front(); });
  if (!equal_phi) w_ = Eigen::MatrixXd::Identity(n, n) - alpha_ * l;
}

Eigen::VectorXd AnalyticDetector::noiseless_variances(std::size_t i) const {
  const Eigen::VectorXd powers = w_eigenvalues_.array().pow(2.0 * static_cast<double>(i)).matrix();
  return model_.llr_variance() * (weights_sq_ * powers);
}

std::vector<Eigen::VectorXd> AnalyticDetector::variance_trajectory(std::size_t max_iter) const {
  const Eigen::Index n = w_eigenvalues_.size();
  std::vector<Eigen::VectorXd> out;
  out.reserve(max_iter + 1);

  // (W^{2k})_nn = sum_m gamma_m^{2k} u_{m,n}^2.
  const Eigen::ArrayXd gamma_sq = w_eigenvalues_.array().square();
  Eigen::ArrayXd power = Eigen::ArrayXd::Ones(n);      // gamma^{2i}
  Eigen::ArrayXd geometric = Eigen::ArrayXd::Zero(n);  // sum_{k<i} gamma^{2k}

  Eigen::VectorXd phi_sq(n);
  for (Eigen::Index v = 0; v < n; ++v) phi_sq[v] = std::pow(model_.phi_at(static_cast<std::size_t>(v)), 2);
  const bool explicit_powers = w_.size() > 0;
  Eigen::MatrixXd wk = explicit_powers ? Eigen::MatrixXd::Identity(n, n) : Eigen::MatrixXd();
  Eigen::VectorXd noise_acc = Eigen::VectorXd::Zero(n);

  for (std::size_t i = 0; i <= max_iter; ++i) {
    Eigen::VectorXd var = model_.llr_variance() * (weights_sq_ * power.matrix());
    if (explicit_powers) {
      var += noise_acc;
    } else if (!model_.noiseless()) {
      var += phi_sq[0] * (weights_sq_ * geometric.matrix());
    }
    out.push_back(std::move(var));

    geometric += power;
    power *= gamma_sq;
    if (explicit_powers) {
      noise_acc += wk.array().square().matrix() * phi_sq;
      wk = w_ * wk;
    }
  }
  return out;
}

StateMoments AnalyticDetector::moments(std::size_t i, int hypothesis) const {
  StateMoments m;
  m.variances = variance_trajectory(i).back();
  m.means = Eigen::VectorXd::Constant(m.variances.size(), model_.llr_mean(hypothesis));
  return m;
}

Eigen::VectorXd AnalyticDetector::error_probabilities(const Eigen::VectorXd& variances) const {
  const double mean = model_.llr_mean(1);
  Eigen::VectorXd pe(variances.size());
  for (Eigen::Index v = 0; v < variances.size(); ++v) pe[v] = q_function(mean / std::sqrt(variances[v]));
  return pe;
}

StateMoments analytic_state_moments(const Graph& g, const DetectionModel& model, std::size_t i, int hypothesis) {
  return AnalyticDetector(g, model).moments(i, hypothesis);
}

double variance_upper_bound(double gamma2, const DetectionModel& model, std::size_t i) {
  const double n = static_cast<double>(model.n_sensors);
  const double g2i = std::pow(gamma2, 2.0 * static_cast<double>(i));
  const double phi2 = std::pow(model.phi_max(), 2);
  double bound = model.llr_variance() * (1.0 / n + g2i * (1.0 - 1.0 / n));
  if (phi2 > 0.0) bound += phi2 * (static_cast<double>(i) / n + (1.0 - g2i) / (1.0 - gamma2 * gamma2) * (1.0 - 1.0 / n));
  return bound;
}

double variance_upper_bound(const Graph& g, const DetectionModel& model, std::size_t i) {
  return variance_upper_bound(spectral_summary(g).gamma2, model, i);
}

double stopping_objective(double z, double gamma2, const DetectionModel& model) {
  const double n = static_cast<double>(model.n_sensors);
  const double s = model.llr_variance();
  const double phi2 = std::pow(model.phi_max(), 2);
  const double tail = phi2 / (1.0 - gamma2 * gamma2);
  return (s / n + tail * (1.0 - 1.0 / n)) + (1.0 - 1.0 / n) * (s - tail) * std::pow(gamma2, 2.0 * z) + phi2 / n * z;
}

StoppingAnalysis optimal_stopping(double gamma2, const DetectionModel& model, std::size_t budget) {
  if (!(gamma2 > 0.0 && gamma2 < 1.0)) throw InvalidArgument("optimal_stopping: gamma2 must lie in (0, 1)");
  if (model.n_sensors < 2) throw InvalidArgument("optimal_stopping: need at least two sensors");
  const double n = static_cast<double>(model.n_sensors);
  const double s = model.llr_variance();
  const double phi2 = std::pow(model.phi_max(), 2);
  const double excess = s - phi2 / (1.0 - gamma2 * gamma2);

  StoppingAnalysis a;
  a.gamma2 = gamma2;
  a.assumption_holds = excess > 0.0;
  auto f = [&](double z) { return stopping_objective(z, gamma2, model); };

  if (phi2 == 0.0) {
    a.i_star = budget;
    a.f_floor = a.f_ceil = f(static_cast<double>(budget));
    a.worthwhile = true;
    a.reduction_factor = s / a.f_floor;
    return a;
  }
  if (!a.assumption_holds) return a;

  const double z = std::log(phi2 / (2.0 * std::log(1.0 / gamma2) * (n - 1.0) * excess)) / (2.0 * std::log(gamma2));
  a.z_star = z;
  const double lo = std::max(0.0, std::floor(z));
  const double hi = std::max(0.0, std::ceil(z));
  a.i_star = static_cast<std::size_t>(lo);
  a.f_floor = f(lo);
  a.f_ceil = f(hi);
  a.worthwhile = z > 0.0 && std::min(a.f_floor, a.f_ceil) < s;
  a.reduction_factor = s / a.f_floor;
  return a;
}

StoppingAnalysis optimal_stopping(const Graph& g, const DetectionModel& model, std::size_t budget) {
  if (model.n_sensors != g.vertex_count()) throw InvalidArgument("optimal_stopping: sensor count mismatch");
  return optimal_stopping(spectral_summary(g).gamma2, model, budget);
}

double PeCurve::standard_error(std::size_t i, std::size_t n) const {
  const double p = analytic[i][static_cast<Eigen::Index>(n)];
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double PeCurve::mean_standard_error(std::size_t i) const {
  double total = 0.0;
  for (std::size_t n = 0; n < static_cast<std::size_t>(analytic[i].size()); ++n) total += standard_error(i, n);
  return total / static_cast<double>(analytic[i].size());
}

PeCurve empirical_pe_curve(const Graph& g, const DetectionModel& model, std::size_t max_iter, std::size_t trials,
                           std::uint64_t seed) {
  const AnalyticDetector detector(g, model);
  PeCurve curve;
  curve.trials = trials;
  curve.variances = detector.variance_trajectory(max_iter);
  for (const auto& var : curve.variances) curve.analytic.push_back(detector.error_probabilities(var));
  if (trials == 0) return curve;

  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  std::vector<Eigen::VectorXd> errors(max_iter + 1, Eigen::VectorXd::Zero(n));
  const double sigma = std::sqrt(model.sigma2);
  Eigen::VectorXd x(n), next(n);
  for (std::size_t t = 0; t < trials; ++t) {
    const int hypothesis = static_cast<int>(t % 2);
    const double level = hypothesis == 1 ? model.mu : -model.mu;
    Rng rng(Rng::split(seed, t));
    for (Eigen::Index v = 0; v < n; ++v) x[v] = local_llr(level + sigma * rng.normal(), model);
    for (std::size_t i = 0;; ++i) {
      for (Eigen::Index v = 0; v < n; ++v) {
        const int decision = x[v] > model.threshold ? 1 : 0;
        if (decision != hypothesis) errors[i][v] += 1.0;
      }
      if (i == max_iter) break;
      consensus_step(g, detector.alpha(), x, next);
      if (!model.noiseless())
        for (Eigen::Index v = 0; v < n; ++v) next[v] += model.phi_at(static_cast<std::size_t>(v)) * rng.normal();
      x.swap(next);
    }
  }
  for (auto& e : errors) curve.empirical.push_back(e / static_cast<double>(trials));
  return curve;
}

namespace {

double log_mean_pe(const AnalyticDetector& d, std::size_t i) {
  const Eigen::VectorXd var = d.noiseless_variances(i);
  const double mean = d.model().llr_mean(1);
  Eigen::VectorXd logs(var.size());
  for (Eigen::Index v = 0; v < var.size(); ++v) logs[v] = log_q_function(mean / std::sqrt(var[v]));
  const double top = logs.maxCoeff();
  return top + std::log((logs.array() - top).exp().mean());
}

}  // namespace

std::optional<std::size_t> detection_convergence_time(const AnalyticDetector& detector, std::size_t budget) {
  const DetectionModel& m = detector.model();
  const double target = std::log(kConvergenceSlack) + log_q_function(m.mu * std::sqrt(m.n_sensors / m.sigma2));
  auto reached = [&](std::size_t i) { return log_mean_pe(detector, i) <= target; };
  if (reached(0)) return 0;
  // Noiseless variances are non-increasing in i, so the error rate is too:
  // bracket by doubling, then bisect.
  std::size_t lo = 0, hi = 1;
  while (!reached(hi)) {
    if (hi >= budget) return std::nullopt;
    lo = hi;
    hi = std::min(budget, 2 * hi);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (reached(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::optional<std::size_t> detection_convergence_time(const Graph& g, const DetectionModel& model,
                                                      std::size_t budget) {
  DetectionModel noiseless = model;
  noiseless.phi.clear();
  return detection_convergence_time(AnalyticDetector(g, noiseless), budget);
}

}  // namespace ramcon
