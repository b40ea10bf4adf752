#include "lanczos_lab/output.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lanczos_lab/format.hpp"

namespace lanczos_lab {

void write_stats_csv(std::ostream& out, const AggregateStats& stats) {
  out << "m,mean,median,q1,q3,whisker_low,whisker_high,outliers\n";
  for (const auto& r : stats.rows) {
    out << r.m << ',' << format_g17(r.mean) << ',' << format_g17(r.median) << ','
        << format_g17(r.q1) << ',' << format_g17(r.q3) << ',' << format_g17(r.whisker_low) << ','
        << format_g17(r.whisker_high) << ',' << r.outliers << '\n';
  }
}

void write_predictor_csv(std::ostream& out, const std::vector<PredictorRow>& rows) {
  out << "m,empirical,predictor,ratio\n";
  for (const auto& r : rows)
    out << r.m << ',' << format_g17(r.empirical) << ',' << format_g17(r.predictor) << ','
        << format_g17(r.ratio) << '\n';
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

Frame make_frame(double x0, double x1, double y0, double y1) {
  if (!(x1 > x0)) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (!(y1 > y0)) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  return {x0, x1, std::min(0.0, y0 - pad), y1 + pad};
}

void open_svg(std::ostringstream& s, const Frame& f, const PlotLabels& labels) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(labels.title) << "</text>\n";
  const double xa = f.px(f.x0), xb = f.px(f.x1), ya = f.py(f.y0), yb = f.py(f.y1);
  s << "<path d=\"M" << num(xa) << ' ' << num(yb) << " V" << num(ya) << " H" << num(xb)
    << "\" stroke=\"black\" fill=\"none\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4.0;
    s << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(ya + 16)
      << "\" text-anchor=\"middle\" font-size=\"11\">" << format_g17(std::round(xv * 100) / 100)
      << "</text>\n";
    char ybuf[32];
    std::snprintf(ybuf, sizeof ybuf, "%.3g", yv);
    s << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(f.py(yv) + 4)
      << "\" text-anchor=\"end\" font-size=\"11\">" << ybuf << "</text>\n";
  }
  s << "<text x=\"" << num((xa + xb) / 2) << "\" y=\"" << num(kHeight - 10)
    << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(labels.x_label) << "</text>\n";
  s << "<text x=\"16\" y=\"" << num((ya + yb) / 2) << "\" text-anchor=\"middle\" font-size=\"12\" "
    << "transform=\"rotate(-90 16 " << num((ya + yb) / 2) << ")\">" << escape(labels.y_label)
    << "</text>\n";
}

} // namespace

std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotLabels& labels) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!std::isfinite(x0)) x0 = x1 = y0 = y1 = 0.0;
  const Frame f = make_frame(x0, x1, y0, y1);
  std::ostringstream s;
  open_svg(s, f, labels);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % std::size(kPalette)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : series[k].points) s << num(f.px(x)) << ',' << num(f.py(y)) << ' ';
    s << "\"/>\n";
    s << "<text x=\"" << num(kWidth - kRight - 4) << "\" y=\"" << num(kTop + 14 * (k + 1))
      << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << color << "\">"
      << escape(series[k].label) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_box_plot(const AggregateStats& stats, const PlotLabels& labels) {
  if (stats.rows.empty()) throw std::invalid_argument("box plot needs at least one row");
  double y0 = std::numeric_limits<double>::infinity(), y1 = -y0;
  for (const auto& r : stats.rows) {
    y0 = std::min(y0, r.whisker_low);
    y1 = std::max(y1, r.whisker_high);
  }
  const double xa = static_cast<double>(stats.rows.front().m) - 0.5;
  const double xb = static_cast<double>(stats.rows.back().m) + 0.5;
  const Frame f = make_frame(xa, xb, y0, y1);
  const double half = 0.35 * (f.px(1.0) - f.px(0.0));
  std::ostringstream s;
  open_svg(s, f, labels);
  for (const auto& r : stats.rows) {
    const double cx = f.px(static_cast<double>(r.m));
    s << "<g stroke=\"#1f77b4\" fill=\"none\">";
    s << "<line x1=\"" << num(cx) << "\" y1=\"" << num(f.py(r.whisker_low)) << "\" x2=\"" << num(cx)
      << "\" y2=\"" << num(f.py(r.q1)) << "\"/>";
    s << "<line x1=\"" << num(cx) << "\" y1=\"" << num(f.py(r.q3)) << "\" x2=\"" << num(cx)
      << "\" y2=\"" << num(f.py(r.whisker_high)) << "\"/>";
    s << "<rect x=\"" << num(cx - half) << "\" y=\"" << num(f.py(r.q3)) << "\" width=\""
      << num(2 * half) << "\" height=\"" << num(f.py(r.q1) - f.py(r.q3)) << "\"/>";
    s << "<line x1=\"" << num(cx - half) << "\" y1=\"" << num(f.py(r.median)) << "\" x2=\""
      << num(cx + half) << "\" y2=\"" << num(f.py(r.median)) << "\" stroke=\"#d62728\"/>";
    s << "</g>\n";
    s << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(f.py(r.mean))
      << "\" r=\"1.5\" fill=\"black\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

nlohmann::json to_json(const BoundReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["value"] = r.value;
  j["hypotheses"] = nlohmann::json::array();
  for (const auto& h : r.hypotheses) j["hypotheses"].push_back({{"name", h.name}, {"met", h.met}});
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  if (!r.regime.empty()) j["regime"] = r.regime;
  return j;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["kind"] = to_string(cfg.kind);
  j["n"] = cfg.n;
  j["m-max"] = cfg.m_max;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["index"] = cfg.eigen_index;
  j["path"] = to_string(resolve_path(cfg));
  if (cfg.kind == SpectrumKind::legendre_hard || cfg.kind == SpectrumKind::jacobi_hard)
    j["hard-m"] = cfg.hard_m;
  if (cfg.kind == SpectrumKind::file) j["spectrum-file"] = cfg.spectrum_file;
  if (cfg.reorthogonalize) j["reorth"] = *cfg.reorthogonalize;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig cfg) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "kind") cfg.kind = parse_spectrum_kind(v.get<std::string>());
    else if (key == "n") cfg.n = v.get<std::size_t>();
    else if (key == "m-max") cfg.m_max = v.get<std::size_t>();
    else if (key == "trials") cfg.trials = v.get<std::size_t>();
    else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
    else if (key == "index") cfg.eigen_index = v.get<std::size_t>();
    else if (key == "path") cfg.path = parse_trial_path(v.get<std::string>());
    else if (key == "hard-m") cfg.hard_m = v.get<int>();
    else if (key == "spectrum-file") cfg.spectrum_file = v.get<std::string>();
    else if (key == "threads") cfg.threads = v.get<unsigned>();
    else if (key == "reorth") cfg.reorthogonalize = v.get<bool>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return cfg;
}

} // namespace lanczos_lab
