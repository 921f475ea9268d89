#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "crossfire/experiment.hpp"

namespace crossfire::experiment {

namespace {

std::string fixed6(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  std::string s(buf.data());
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string label(const agent::ControllerSpec& c) { return std::string(agent::short_name(c.kind)); }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.push_back(line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  }
  return value;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

// Fixed palette in roster order.
constexpr std::array<const char*, 8> kColors{"#d62728", "#ff7f0e", "#2ca02c", "#1f77b4", "#9467bd",
                                             "#8c564b", "#e377c2", "#7f7f7f"};

std::string svg_num(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return buf.data();
}

}  // namespace

std::vector<CycleRow> cycle_rows(const std::vector<RunRecord>& runs) {
  std::vector<CycleRow> rows;
  for (const auto& run : runs) {
    for (const auto& c : run.result.cycles) {
      for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        const auto& n = c.nodes[i];
        rows.push_back({c.cycle, static_cast<int>(i), n.volumes.ns, n.volumes.we, n.green_ns, n.delay, n.reward,
                        label(run.controller), run.seed});
      }
    }
  }
  return rows;
}

std::string format_cycles_csv(const std::vector<CycleRow>& rows) {
  std::string out(kCycleCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.cycle) + ',' + std::to_string(r.intersection) + ',' + std::to_string(r.v_ns) + ',' +
           std::to_string(r.v_we) + ',' + fixed6(r.tg_ns) + ',' + fixed6(r.delay_s) + ',' + fixed6(r.reward) + ',' +
           r.controller + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

std::vector<CycleRow> parse_cycles_csv(std::string_view text) {
  std::vector<CycleRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!header_seen) {
      if (line != kCycleCsvHeader) throw std::invalid_argument("line 1: unexpected header");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 9 fields");
    CycleRow r;
    r.cycle = parse_number<int>(f[0], line_no);
    r.intersection = parse_number<int>(f[1], line_no);
    r.v_ns = parse_number<int>(f[2], line_no);
    r.v_we = parse_number<int>(f[3], line_no);
    r.tg_ns = parse_number<double>(f[4], line_no);
    r.delay_s = parse_number<double>(f[5], line_no);
    r.reward = parse_number<double>(f[6], line_no);
    r.controller = std::string(f[7]);
    r.seed = parse_number<std::uint64_t>(f[8], line_no);
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw std::invalid_argument("empty CSV");
  return rows;
}

std::string format_summary_csv(const ComparisonSummary& summary) {
  std::string out(kSummaryCsvHeader);
  out += '\n';
  auto pct = [](const std::optional<double>& v) { return v ? fixed6(*v) : std::string(); };
  for (const auto& cs : summary.controllers) {
    for (std::size_t s = 0; s < summary.seeds.size(); ++s) {
      out += label(cs.controller) + ',' + std::to_string(summary.seeds[s]) + ',' + fixed6(cs.per_seed_delay[s]) + ',' +
             pct(cs.per_seed_reduction_pct[s]) + '\n';
    }
    out += label(cs.controller) + ",mean," + fixed6(cs.total_average_delay) + ',' + pct(cs.reduction_vs_fixed_pct) +
           '\n';
  }
  return out;
}

std::string format_summary_table(const ComparisonSummary& summary) {
  std::ostringstream os;
  std::array<char, 128> buf{};
  std::snprintf(buf.data(), buf.size(), "%-10s %22s %16s\n", "controller", "total avg delay (s)", "vs fixed (%)");
  os << buf.data();
  for (const auto& cs : summary.controllers) {
    const std::string red = cs.reduction_vs_fixed_pct ? svg_num(*cs.reduction_vs_fixed_pct) : "-";
    std::snprintf(buf.data(), buf.size(), "%-10s %22.4f %16s\n", label(cs.controller).c_str(), cs.total_average_delay,
                  red.c_str());
    os << buf.data();
  }
  return os.str();
}

std::vector<double> rolling_mean(const std::vector<double>& series, std::size_t window) {
  if (window == 0) throw std::invalid_argument("rolling window must be positive");
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::size_t lo = i + 1 >= window ? i + 1 - window : 0;
    // Shifted by the window's first sample, so a constant window averages exactly.
    const double base = series[lo];
    double dev = 0.0;
    for (std::size_t k = lo; k <= i; ++k) dev += series[k] - base;
    out[i] = base + dev / static_cast<double>(i + 1 - lo);
  }
  return out;
}

std::string delay_series_svg(const ComparisonSummary& summary, std::size_t window) {
  constexpr double W = 800, H = 450, L = 60, R = 130, T = 30, B = 50;
  std::vector<std::vector<double>> smoothed;
  double ymax = 1.0;
  std::size_t n = 0;
  for (const auto& cs : summary.controllers) {
    smoothed.push_back(rolling_mean(cs.series, window));
    for (double v : smoothed.back()) ymax = std::max(ymax, v);
    n = std::max(n, cs.series.size());
  }
  ymax *= 1.1;
  auto px = [&](std::size_t k) { return L + (n > 1 ? (W - L - R) * static_cast<double>(k) / (n - 1) : 0.0); };
  auto py = [&](double v) { return T + (H - T - B) * (1.0 - v / ymax); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Network delay per cycle (rolling mean, window "
     << window << ")</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = ymax * t / 5.0;
    os << "<text x=\"" << L - 6 << "\" y=\"" << svg_num(py(v) + 4) << "\" text-anchor=\"end\" font-size=\"10\">"
       << svg_num(v) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"12\">cycle</text>\n";
  os << "<text x=\"15\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 "
     << (T + H - B) / 2 << ")\">delay (s)</text>\n";
  for (std::size_t c = 0; c < smoothed.size(); ++c) {
    const char* color = kColors[c % kColors.size()];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < smoothed[c].size(); ++k) {
      os << (k ? " " : "") << svg_num(px(k)) << ',' << svg_num(py(smoothed[c][k]));
    }
    os << "\"/>\n";
    const double ly = T + 10 + 18.0 * static_cast<double>(c);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
       << label(summary.controllers[c].controller) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string delay_bars_svg(const ComparisonSummary& summary) {
  constexpr double W = 600, H = 400, L = 60, R = 20, T = 30, B = 50;
  double ymax = 1.0;
  for (const auto& cs : summary.controllers) ymax = std::max(ymax, cs.total_average_delay);
  ymax *= 1.15;
  const std::size_t n = summary.controllers.size();
  const double slot = (W - L - R) / static_cast<double>(std::max<std::size_t>(n, 1));
  auto py = [&](double v) { return T + (H - T - B) * (1.0 - v / ymax); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Total average delay</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (std::size_t c = 0; c < n; ++c) {
    const auto& cs = summary.controllers[c];
    const double x = L + slot * static_cast<double>(c) + slot * 0.15;
    const double y = py(cs.total_average_delay);
    os << "<rect x=\"" << svg_num(x) << "\" y=\"" << svg_num(y) << "\" width=\"" << svg_num(slot * 0.7)
       << "\" height=\"" << svg_num(H - B - y) << "\" fill=\"" << kColors[c % kColors.size()] << "\"/>\n";
    os << "<text x=\"" << svg_num(x + slot * 0.35) << "\" y=\"" << svg_num(y - 5)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << svg_num(cs.total_average_delay) << "</text>\n";
    os << "<text x=\"" << svg_num(x + slot * 0.35) << "\" y=\"" << H - B + 18
       << "\" text-anchor=\"middle\" font-size=\"12\">" << label(cs.controller) << "</text>\n";
  }
  os << "<text x=\"15\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 "
     << (T + H - B) / 2 << ")\">delay (s)</text>\n";
  os << "</svg>\n";
  return os.str();
}

void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir, bool charts) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  write_file(dir / "cycles.csv", format_cycles_csv(cycle_rows(result.runs)));
  write_file(dir / "summary.csv", format_summary_csv(result.summary));
  if (charts) {
    write_file(dir / "delay_series.svg", delay_series_svg(result.summary));
    write_file(dir / "delay_bars.svg", delay_bars_svg(result.summary));
  }
}

}  // namespace crossfire::experiment
