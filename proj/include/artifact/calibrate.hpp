#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "artifact/stats.hpp"

namespace artifact {

struct CalibrationConfig {
  ClassDistribution target;
  double tolerance = 0.005;  // max absolute per-class proportion error
  int max_sweeps = 50;
  double epsilon = 1e-6;  // separation margin at count boundaries
};

struct CalibrationResult {
  BiasVector bias;  // mean-centered
  ClassDistribution achieved;
  int sweeps_used = 0;
  bool converged = false;
};

// Per-class target counts by largest-remainder rounding; always sums to n.
std::vector<std::size_t> target_counts(const std::vector<double>& target_probs, std::size_t n);

// The bias value for class c that makes exactly the k easiest examples
// select it, other biases held fixed. Gaps are
//   g = max_{j != c}(z_j + b_j) - z_c,
// sorted ascending; the bias is the midpoint between the k-th and
// (k+1)-th gap when they differ, otherwise the k-th gap plus epsilon.
double set_class_bias(const std::vector<std::vector<double>>& logits, const BiasVector& biases,
                      std::size_t class_index, std::size_t k, double epsilon = 1e-6);

// Round-robin sweeps over classes in label order, each step re-solving
// one class's bias against the current biases of the others. Stops when
// every class proportion is within tolerance of the target or max_sweeps
// is reached; the achieved distribution is measured, never assumed.
CalibrationResult calibrate(const std::vector<std::vector<double>>& logits,
                            const std::vector<std::string>& label_order,
                            const CalibrationConfig& config);

// argmax(z + b) per example, ties to the lowest index.
std::vector<std::size_t> apply_bias(const std::vector<std::vector<double>>& logits,
                                    const BiasVector& bias);

std::string calibration_report_json(const CalibrationResult& result,
                                    const ClassDistribution& target,
                                    const std::vector<std::string>& label_order);

}  // namespace artifact
