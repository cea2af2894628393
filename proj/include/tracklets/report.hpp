#ifndef TRACKLETS_REPORT_HPP_
#define TRACKLETS_REPORT_HPP_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracklets/trainer.hpp"

namespace tracklets {

class MetricsFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses a metrics CSV written by write_metrics_csv. Rejects unknown schema
// versions, names the first header column that differs from the expected
// one, and refuses files without any evaluation round.
std::vector<marl::EvalRow> read_metrics_csv(std::istream& in, const std::string& source);
std::vector<marl::EvalRow> read_metrics_file(const std::filesystem::path& path);

// Per training-episode count across runs.
struct CurvePoint {
  long train_episodes = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  int runs = 0;
};

std::vector<CurvePoint> aggregate_curves(const std::vector<std::vector<marl::EvalRow>>& runs);
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);

// Mean line plus a min..max band when more than one run contributed.
std::string curve_svg(const std::vector<CurvePoint>& curve, const std::string& title);

}  // namespace tracklets

#endif  // TRACKLETS_REPORT_HPP_
