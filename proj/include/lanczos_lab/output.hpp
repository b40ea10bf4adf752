#pragma once

// CSV, SVG and JSON emitters for experiment statistics and bound reports.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lanczos_lab/bounds.hpp"
#include "lanczos_lab/experiments.hpp"

namespace lanczos_lab {

/// Header m,mean,median,q1,q3,whisker_low,whisker_high,outliers; one row per
/// m; floats with 17 significant digits.
void write_stats_csv(std::ostream& out, const AggregateStats& stats);

/// Header m,empirical,predictor,ratio.
void write_predictor_csv(std::ostream& out, const std::vector<PredictorRow>& rows);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct PlotLabels {
  std::string title;
  std::string x_label = "m";
  std::string y_label = "m^2 x relative error";
};

/// One polyline per series on shared linear axes, 640x400 canvas.
std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotLabels& labels);

/// One box per m: box from q1 to q3, a line at the median, whiskers, and a
/// dot at the mean.
std::string svg_box_plot(const AggregateStats& stats, const PlotLabels& labels);

nlohmann::json to_json(const BoundReport& r);

/// Flat JSON with the same keys as the run flags.
nlohmann::json config_to_json(const ExperimentConfig& cfg);
/// Reads the keys present in j on top of base. Unknown keys throw.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

} // namespace lanczos_lab
