#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "afpsrc/seqio.hpp"

namespace afpsrc {

/// Binary confusion counts with class 1 (AFP) as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct MetricsReport {
  double sensitivity = 0;
  double specificity = 0;
  double accuracy = 0;
  double mcc = 0;
  double balanced_accuracy = 0;
  double youden = 0;
  double f1 = 0;
  double precision = 0;
};

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted);

/// Empty-denominator conventions: a zero rate denominator gives 0, MCC with
/// an empty marginal gives 0, precision and F1 with a zero denominator give 0.
MetricsReport compute_metrics(const ConfusionMatrix& cm);

/// CSV column order used for every metrics table:
/// PCs,youden,balanced_accuracy,mcc,sensitivity,specificity,accuracy,f1.
/// Rates are written as percentages with 2 decimals; youden, mcc and f1 with 4.
std::string metrics_csv_header();
std::string metrics_csv_row(std::size_t pcs, const MetricsReport& report);

}  // namespace afpsrc
