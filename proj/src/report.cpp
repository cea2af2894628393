#include "tracklets/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace tracklets {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

double parse_number(const std::string& cell, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != cell.size()) throw MetricsFormatError(where + ": not a number: '" + cell + "'");
  return v;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

// 1, 2 or 5 times a power of ten, giving about `target` ticks over the span.
double nice_step(double span, int target) {
  const double raw = span / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::vector<marl::EvalRow> read_metrics_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw MetricsFormatError(source + ": no evaluation rounds (empty file)");
  line = strip_cr(line);
  const std::string expected_schema = marl::kMetricsSchemaLine;
  if (line != expected_schema) {
    if (line.rfind("#tracklets-metrics", 0) == 0) {
      throw MetricsFormatError(source + ": unsupported metrics schema '" + line + "' (expected '" +
                               expected_schema + "')");
    }
    throw MetricsFormatError(source + ": missing schema line '" + expected_schema + "'");
  }
  if (!std::getline(in, line)) throw MetricsFormatError(source + ": no evaluation rounds (no header)");
  const auto header = split_csv(strip_cr(line));
  const auto expected = split_csv(marl::kMetricsHeader);
  for (std::size_t i = 0; i < std::max(header.size(), expected.size()); ++i) {
    const std::string got = i < header.size() ? header[i] : "<missing>";
    const std::string want = i < expected.size() ? expected[i] : "<none>";
    if (got != want) {
      throw MetricsFormatError(source + ": schema mismatch in column " + std::to_string(i + 1) + ": '" +
                               got + "' (expected '" + want + "')");
    }
  }

  std::vector<marl::EvalRow> rows;
  int line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (cells.size() != expected.size()) {
      throw MetricsFormatError(where + ": expected " + std::to_string(expected.size()) + " columns, got " +
                               std::to_string(cells.size()));
    }
    marl::EvalRow r;
    r.train_episodes = static_cast<long>(parse_number(cells[0], where));
    r.eval_round = static_cast<int>(parse_number(cells[1], where));
    r.mean_eval_reward = parse_number(cells[2], where);
    r.std_eval_reward = parse_number(cells[3], where);
    r.wallclock_s = parse_number(cells[4], where);
    r.loss_policy = parse_number(cells[5], where);
    r.loss_value = parse_number(cells[6], where);
    r.entropy = parse_number(cells[7], where);
    rows.push_back(r);
  }
  if (rows.empty()) throw MetricsFormatError(source + ": no evaluation rounds");
  return rows;
}

std::vector<marl::EvalRow> read_metrics_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MetricsFormatError(path.string() + ": cannot open");
  return read_metrics_csv(in, path.string());
}

std::vector<CurvePoint> aggregate_curves(const std::vector<std::vector<marl::EvalRow>>& runs) {
  std::map<long, std::vector<double>> by_x;
  for (const auto& run : runs) {
    for (const auto& r : run) by_x[r.train_episodes].push_back(r.mean_eval_reward);
  }
  std::vector<CurvePoint> curve;
  for (const auto& [x, ys] : by_x) {
    CurvePoint p;
    p.train_episodes = x;
    p.mean = marl::mean_of(ys);
    p.min = *std::min_element(ys.begin(), ys.end());
    p.max = *std::max_element(ys.begin(), ys.end());
    p.runs = static_cast<int>(ys.size());
    curve.push_back(p);
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "train_episodes,mean_eval_reward,min_eval_reward,max_eval_reward,runs\n";
  for (const auto& p : curve) {
    out << p.train_episodes << ',' << fmt(p.mean) << ',' << fmt(p.min) << ',' << fmt(p.max) << ','
        << p.runs << '\n';
  }
}

std::string curve_svg(const std::vector<CurvePoint>& curve, const std::string& title) {
  constexpr double kW = 720, kH = 440, kLeft = 80, kRight = 20, kTop = 40, kBottom = 60;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;

  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!curve.empty()) {
    x0 = std::min<double>(0, curve.front().train_episodes);
    x1 = curve.back().train_episodes;
    y0 = curve.front().min;
    y1 = curve.front().max;
    for (const auto& p : curve) {
      y0 = std::min(y0, p.min);
      y1 = std::max(y1, p.max);
    }
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 - y0 < 1e-9) {
    y0 -= 1;
    y1 += 1;
  }
  const double ystep = nice_step(y1 - y0, 6);
  y0 = std::floor(y0 / ystep) * ystep;
  y1 = std::ceil(y1 / ystep) * ystep;
  const double xstep = nice_step(x1 - x0, 6);

  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
    << "</text>\n";

  for (double y = y0; y <= y1 + 1e-9 * ystep; y += ystep) {
    o << "<line x1=\"" << kLeft << "\" x2=\"" << kLeft + pw << "\" y1=\"" << sy(y) << "\" y2=\"" << sy(y)
      << "\" stroke=\"#e5e5e5\"/>\n";
    o << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">" << fmt(y)
      << "</text>\n";
  }
  for (double x = std::ceil(x0 / xstep) * xstep; x <= x1 + 1e-9 * xstep; x += xstep) {
    o << "<line x1=\"" << sx(x) << "\" x2=\"" << sx(x) << "\" y1=\"" << kTop + ph << "\" y2=\""
      << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << sx(x) << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">" << fmt(x)
      << "</text>\n";
  }
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 15
    << "\" text-anchor=\"middle\">training episodes</text>\n";
  o << "<text transform=\"translate(20," << kTop + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\">mean evaluation reward</text>\n";

  const bool band = std::any_of(curve.begin(), curve.end(), [](const CurvePoint& p) { return p.runs > 1; });
  if (band) {
    o << "<polygon class=\"band\" fill=\"#1f77b4\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (const auto& p : curve) o << sx(p.train_episodes) << ',' << sy(p.max) << ' ';
    for (auto it = curve.rbegin(); it != curve.rend(); ++it) {
      o << sx(it->train_episodes) << ',' << sy(it->min) << ' ';
    }
    o << "\"/>\n";
  }
  o << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (const auto& p : curve) o << sx(p.train_episodes) << ',' << sy(p.mean) << ' ';
  o << "\"/>\n";
  for (const auto& p : curve) {
    o << "<circle cx=\"" << sx(p.train_episodes) << "\" cy=\"" << sy(p.mean)
      << "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace tracklets
