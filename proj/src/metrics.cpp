#include "afpsrc/metrics.hpp"

#include <cmath>

#include "afpsrc/csv.hpp"

namespace afpsrc {
namespace {

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

ConfusionMatrix confusion(std::span<const Label> truth, std::span<const Label> predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::InvalidArgument, "label lists differ in length");
  }
  if (truth.empty()) throw Error(ErrorCode::InvalidArgument, "label lists are empty");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool pos_true = truth[i] == Label::Afp;
    const bool pos_pred = predicted[i] == Label::Afp;
    if ((truth[i] != Label::Afp && truth[i] != Label::NonAfp) ||
        (predicted[i] != Label::Afp && predicted[i] != Label::NonAfp)) {
      throw Error(ErrorCode::InvalidArgument, "label outside {1, 2}");
    }
    if (pos_true && pos_pred) ++cm.tp;
    else if (pos_true) ++cm.fn;
    else if (pos_pred) ++cm.fp;
    else ++cm.tn;
  }
  return cm;
}

MetricsReport compute_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorCode::InvalidArgument, "empty confusion matrix");
  const auto tp = static_cast<double>(cm.tp);
  const auto tn = static_cast<double>(cm.tn);
  const auto fp = static_cast<double>(cm.fp);
  const auto fn = static_cast<double>(cm.fn);

  MetricsReport r;
  r.sensitivity = ratio(tp, tp + fn);
  r.specificity = ratio(tn, tn + fp);
  r.accuracy = ratio(tp + tn, tp + tn + fp + fn);
  r.precision = ratio(tp, tp + fp);
  r.f1 = ratio(2.0 * r.precision * r.sensitivity, r.precision + r.sensitivity);
  r.balanced_accuracy = (r.sensitivity + r.specificity) / 2.0;
  r.youden = r.sensitivity + r.specificity - 1.0;

  const double delta = (tp + fp) * (tn + fn) * (tp + fn) * (tn + fp);
  r.mcc = delta > 0 ? (tp * tn - fp * fn) / std::sqrt(delta) : 0.0;
  return r;
}

std::string metrics_csv_header() {
  return "PCs,youden,balanced_accuracy,mcc,sensitivity,specificity,accuracy,f1";
}

std::string metrics_csv_row(std::size_t pcs, const MetricsReport& r) {
  using csv::format_fixed;
  return std::to_string(pcs) + ',' + format_fixed(r.youden, 4) + ',' +
         format_fixed(100.0 * r.balanced_accuracy, 2) + ',' + format_fixed(r.mcc, 4) + ',' +
         format_fixed(100.0 * r.sensitivity, 2) + ',' + format_fixed(100.0 * r.specificity, 2) +
         ',' + format_fixed(100.0 * r.accuracy, 2) + ',' + format_fixed(r.f1, 4);
}

}  // namespace afpsrc
