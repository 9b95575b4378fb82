#include "artifact/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"

#include "artifact/error.hpp"

namespace artifact {

std::vector<std::size_t> target_counts(const std::vector<double>& target_probs, std::size_t n) {
  std::vector<std::size_t> counts(target_probs.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;  // (-fraction, class)
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < target_probs.size(); ++c) {
    const double exact = target_probs[c] * static_cast<double>(n);
    counts[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[c];
    remainders.emplace_back(-(exact - std::floor(exact)), c);
  }
  std::sort(remainders.begin(), remainders.end());  // largest remainder first, ties by index
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) ++counts[remainders[i % remainders.size()].second];
  return counts;
}

double set_class_bias(const std::vector<std::vector<double>>& logits, const BiasVector& biases,
                      std::size_t class_index, std::size_t k, double epsilon) {
  const std::size_t n = logits.size();
  if (k > n) throw ValidationError("target count " + std::to_string(k) + " exceeds " +
                                   std::to_string(n) + " examples");
  if (n == 0) throw ValidationError("no examples to calibrate");
  std::vector<double> gaps;
  gaps.reserve(n);
  for (const std::vector<double>& z : logits) {
    double best_other = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == class_index) continue;
      best_other = std::max(best_other, z[j] + biases.values[j]);
    }
    gaps.push_back(best_other - z[class_index]);
  }
  std::sort(gaps.begin(), gaps.end());
  if (k == 0) return gaps.front() - epsilon;
  if (k == n) return gaps.back() + epsilon;
  const double lo = gaps[k - 1], hi = gaps[k];
  return lo < hi ? (lo + hi) / 2.0 : lo + epsilon;
}

std::vector<std::size_t> apply_bias(const std::vector<std::vector<double>>& logits,
                                    const BiasVector& bias) {
  std::vector<std::size_t> labels;
  labels.reserve(logits.size());
  for (const std::vector<double>& z : logits) {
    if (z.size() != bias.values.size())
      throw ValidationError("logits arity " + std::to_string(z.size()) +
                            " does not match bias arity " + std::to_string(bias.values.size()));
    std::size_t best = 0;
    double best_score = z[0] + bias.values[0];
    for (std::size_t c = 1; c < z.size(); ++c) {
      const double score = z[c] + bias.values[c];
      if (score > best_score) {
        best_score = score;
        best = c;
      }
    }
    labels.push_back(best);
  }
  return labels;
}

namespace {

std::vector<std::size_t> measure_counts(const std::vector<std::vector<double>>& logits,
                                        const BiasVector& bias, std::size_t n_classes) {
  std::vector<std::size_t> counts(n_classes, 0);
  for (std::size_t c : apply_bias(logits, bias)) ++counts[c];
  return counts;
}

ClassDistribution to_distribution(const std::vector<std::size_t>& counts,
                                  const std::vector<std::string>& label_order, std::size_t n) {
  ClassDistribution dist;
  dist.labels = label_order;
  dist.support = n;
  for (std::size_t c : counts)
    dist.probabilities.push_back(static_cast<double>(c) / static_cast<double>(n));
  return dist;
}

bool within_tolerance(const ClassDistribution& achieved, const ClassDistribution& target,
                      double tolerance) {
  for (std::size_t c = 0; c < achieved.probabilities.size(); ++c)
    if (std::fabs(achieved.probabilities[c] - target.probabilities[c]) > tolerance) return false;
  return true;
}

}  // namespace

CalibrationResult calibrate(const std::vector<std::vector<double>>& logits,
                            const std::vector<std::string>& label_order,
                            const CalibrationConfig& config) {
  if (logits.empty()) throw ValidationError("cannot calibrate an empty prediction set");
  if (label_order.size() < 2) throw ValidationError("calibration needs at least 2 classes");
  if (config.target.probabilities.size() != label_order.size())
    throw ValidationError("target distribution arity does not match label count");
  if (config.tolerance <= 0.0) throw ValidationError("tolerance must be positive");
  double target_sum = 0.0;
  for (double p : config.target.probabilities) {
    if (p < 0.0) throw ValidationError("negative target probability");
    target_sum += p;
  }
  if (std::fabs(target_sum - 1.0) > 1e-9)
    throw ValidationError("target distribution does not sum to 1");
  for (const std::vector<double>& z : logits)
    if (z.size() != label_order.size())
      throw ValidationError("logits arity does not match label count");

  const auto wanted = target_counts(config.target.probabilities, logits.size());
  CalibrationResult result;
  result.bias.values.assign(label_order.size(), 0.0);
  // Converged when every proportion sits within tolerance of the target,
  // or when the achieved counts equal the rounded target counts exactly:
  // on small sets the count grid can be coarser than the tolerance, and
  // hitting the integral target is the procedure's fixed point.
  const auto done = [&](const std::vector<std::size_t>& counts) {
    return counts == wanted ||
           within_tolerance(to_distribution(counts, label_order, logits.size()), config.target,
                            config.tolerance);
  };
  auto counts = measure_counts(logits, result.bias, label_order.size());
  result.achieved = to_distribution(counts, label_order, logits.size());
  if (done(counts)) {
    result.converged = true;
    return result;  // fixed point: zero bias, zero sweeps
  }
  for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
    for (std::size_t c = 0; c < label_order.size(); ++c)
      result.bias.values[c] = set_class_bias(logits, result.bias, c, wanted[c], config.epsilon);
    result.sweeps_used = sweep;
    counts = measure_counts(logits, result.bias, label_order.size());
    result.achieved = to_distribution(counts, label_order, logits.size());
    if (done(counts)) {
      result.converged = true;
      break;
    }
  }
  // Mean-center: the canonical representative of the argmax-equivalent
  // family. Re-measure so the reported distribution belongs to the
  // returned vector bit-for-bit.
  const double mean = std::accumulate(result.bias.values.begin(), result.bias.values.end(), 0.0) /
                      static_cast<double>(result.bias.values.size());
  for (double& b : result.bias.values) b -= mean;
  result.achieved = to_distribution(measure_counts(logits, result.bias, label_order.size()),
                                    label_order, logits.size());
  return result;
}

std::string calibration_report_json(const CalibrationResult& result,
                                    const ClassDistribution& target,
                                    const std::vector<std::string>& label_order) {
  nlohmann::ordered_json j;
  j["type"] = "calibration";
  j["label_order"] = label_order;
  j["bias"] = result.bias.values;
  j["target"] = target.probabilities;
  j["achieved"] = result.achieved.probabilities;
  j["support"] = result.achieved.support;
  j["sweeps_used"] = result.sweeps_used;
  j["converged"] = result.converged;
  return j.dump(2);
}

}  // namespace artifact
