#include <bandwagon/io.hpp>

#include <bandwagon/errors.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bandwagon {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
    throw InvalidInput("line " + std::to_string(line_no) + ": non-numeric cell '" + std::string(cell) + "'");
  }
  return value;
}

// Numeric rows of a CSV; std::nullopt marks a blank agent line.
std::vector<std::optional<std::vector<double>>> parse_rows(std::string_view text) {
  std::vector<std::optional<std::vector<double>>> rows;
  std::size_t line_no = 0;
  for (auto raw : split_lines(text)) {
    ++line_no;
    const auto line = trim(raw);
    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) {
      rows.emplace_back(std::nullopt);
      continue;
    }
    std::vector<double> values;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      values.push_back(parse_cell(line.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.emplace_back(std::move(values));
  }
  if (rows.empty()) throw InvalidInput("matrix file contains no rows");
  return rows;
}

std::size_t common_width(const std::vector<std::optional<std::vector<double>>>& rows) {
  std::size_t width = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i]) throw InvalidInput("zero row: agent line " + std::to_string(i + 1) + " is blank");
    if (width == 0) width = rows[i]->size();
    if (rows[i]->size() != width) {
      throw InvalidInput("ragged rows: agent line " + std::to_string(i + 1) + " has " +
                         std::to_string(rows[i]->size()) + " cells, expected " + std::to_string(width));
    }
  }
  return width;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string fixed(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Upper axis bound: 1, 2 or 5 times a power of ten, at least `v`.
double nice_ceiling(double v) {
  if (!(v > 0.0)) return 1.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(v)));
  for (double factor : {1.0, 2.0, 5.0, 10.0}) {
    if (factor * magnitude >= v) return factor * magnitude;
  }
  return 10.0 * magnitude;
}

}  // namespace

OpinionMatrix parse_opinion_csv(std::string_view text, const CsvReadOptions& options) {
  const auto rows = parse_rows(text);
  const std::size_t width = common_width(rows);
  RealMatrix values(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) std::copy(rows[i]->begin(), rows[i]->end(), values.row(i).begin());
  OpinionMatrix y(std::move(values));

  const auto report = validate_initial(y);
  if (!report.zero_rows.empty()) {
    throw InvalidInput("zero row: agent " + std::to_string(report.zero_rows.front() + 1) + " has only zero opinions");
  }
  if (!report.zero_columns.empty() && !options.allow_zero_columns) {
    throw InvalidInput("zero column: topic " + std::to_string(report.zero_columns.front() + 1) +
                       " has only zero opinions");
  }
  return y;
}

OpinionMatrix read_opinion_csv(const std::filesystem::path& path, const CsvReadOptions& options) {
  return parse_opinion_csv(read_file(path), options);
}

std::string format_opinion_csv(const OpinionMatrix& y) {
  std::string out;
  char buf[40];
  for (std::size_t i = 0; i < y.n_agents(); ++i) {
    for (std::size_t j = 0; j < y.n_topics(); ++j) {
      if (j > 0) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", y(i, j) + 0.0);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_opinion_csv(const std::filesystem::path& path, const OpinionMatrix& y) {
  write_file(path, format_opinion_csv(y));
}

AppraisalMatrix parse_appraisal_csv(std::string_view text) {
  const auto rows = parse_rows(text);
  const std::size_t width = common_width(rows);
  if (width != rows.size()) throw InvalidInput("appraisal matrix must be square");
  Matrix<std::int8_t> entries(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      const double v = (*rows[i])[j];
      if (v != -1.0 && v != 0.0 && v != 1.0) throw InvalidInput("appraisal entries must be -1, 0 or 1");
      entries(i, j) = static_cast<std::int8_t>(v);
    }
  }
  return AppraisalMatrix(std::move(entries));
}

AppraisalMatrix read_appraisal_csv(const std::filesystem::path& path) { return parse_appraisal_csv(read_file(path)); }

std::string format_appraisal_csv(const AppraisalMatrix& x) {
  std::string out;
  for (std::size_t i = 0; i < x.n_agents(); ++i) {
    for (std::size_t j = 0; j < x.n_agents(); ++j) {
      if (j > 0) out += ',';
      out += std::to_string(static_cast<int>(x(i, j)));
    }
    out += '\n';
  }
  return out;
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "svg") return OutputFormat::Svg;
  throw InvalidInput("unknown output format '" + std::string(name) + "'");
}

OutputFormat output_format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".json") return OutputFormat::Json;
  if (ext == ".svg") return OutputFormat::Svg;
  return OutputFormat::Csv;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v + 0.0);
  std::string out(buf, ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string render_summary_csv(std::span<const CellSummary> results) {
  std::string out = "n_agents,n_topics,trials,balanced,vanished,budget_exceeded,p_hat,mean_hitting_time\n";
  for (const auto& c : results) {
    out += std::to_string(c.n_agents) + ',' + std::to_string(c.n_topics) + ',' + std::to_string(c.trials_run) + ',' +
           std::to_string(c.balanced_count) + ',' + std::to_string(c.vanished_count) + ',' +
           std::to_string(c.budget_exceeded_count) + ',' + format_real(c.estimated_probability) + ',' +
           format_real(c.mean_hitting_time) + '\n';
  }
  return out;
}

std::string render_summary_json(std::span<const CellSummary> results) {
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : results) {
    nlohmann::ordered_json row;
    row["n_agents"] = c.n_agents;
    row["n_topics"] = c.n_topics;
    row["trials"] = c.trials_run;
    row["balanced"] = c.balanced_count;
    row["vanished"] = c.vanished_count;
    row["budget_exceeded"] = c.budget_exceeded_count;
    row["p_hat"] = c.estimated_probability;
    if (std::isnan(c.mean_hitting_time)) {
      row["mean_hitting_time"] = nullptr;
    } else {
      row["mean_hitting_time"] = c.mean_hitting_time;
    }
    cells.push_back(std::move(row));
  }
  return cells.dump(2) + '\n';
}

std::string render_summary_svg(std::span<const CellSummary> results) {
  constexpr double width = 720.0;
  constexpr double height = 480.0;
  constexpr double left = 70.0;
  constexpr double right = 150.0;
  constexpr double top = 40.0;
  constexpr double bottom = 60.0;
  constexpr std::array<const char*, 8> palette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::set<std::size_t> topics;
  std::map<std::size_t, std::vector<std::pair<std::size_t, double>>> series;  // N -> (m, mean)
  double y_max = 0.0;
  for (const auto& c : results) {
    topics.insert(c.n_topics);
    auto& points = series[c.n_agents];
    if (!std::isnan(c.mean_hitting_time)) {
      points.emplace_back(c.n_topics, c.mean_hitting_time);
      y_max = std::max(y_max, c.mean_hitting_time);
    }
  }
  for (auto& [n, points] : series) std::sort(points.begin(), points.end());
  y_max = nice_ceiling(y_max);
  const double x_lo = static_cast<double>(*topics.begin());
  const double x_hi = static_cast<double>(*topics.rbegin());
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double m) { return x_hi == x_lo ? left + plot_w / 2 : left + (m - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) { return top + plot_h - v / y_max * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
      << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << fixed(width, 0) << "\" height=\"" << fixed(height, 0)
      << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">Average iterations to structural balance</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top + plot_h) << "\" x2=\"" << fixed(left + plot_w)
      << "\" y2=\"" << fixed(top + plot_h) << "\"/>\n";
  svg << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(left) << "\" y2=\""
      << fixed(top + plot_h) << "\"/>\n";
  svg << "</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (auto m : topics) {
    const double x = px(static_cast<double>(m));
    svg << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(top + plot_h) << "\" x2=\"" << fixed(x) << "\" y2=\""
        << fixed(top + plot_h + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(top + plot_h + 20) << "\" text-anchor=\"middle\">" << m
        << "</text>\n";
  }
  constexpr int y_ticks = 5;
  for (int k = 0; k <= y_ticks; ++k) {
    const double v = y_max * k / y_ticks;
    const double y = py(v);
    svg << "<line x1=\"" << fixed(left - 5) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(left) << "\" y2=\""
        << fixed(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(y + 4) << "\" text-anchor=\"end\">"
        << format_real(v) << "</text>\n";
  }
  svg << "<text x=\"" << fixed(left + plot_w / 2) << "\" y=\"" << fixed(height - 15)
      << "\" text-anchor=\"middle\">number of topics m</text>\n";
  svg << "<text x=\"18\" y=\"" << fixed(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << fixed(top + plot_h / 2) << ")\">mean hitting time (steps)</text>\n";
  svg << "</g>\n";

  // One polyline per agent count, plus legend.
  std::size_t index = 0;
  for (const auto& [n, points] : series) {
    const char* colour = palette[index % palette.size()];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (k > 0) svg << ' ';
      svg << fixed(px(static_cast<double>(points[k].first))) << ',' << fixed(py(points[k].second));
    }
    svg << "\"/>\n";
    const double ly = top + 10 + 22.0 * static_cast<double>(index);
    const double lx = left + plot_w + 20;
    svg << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(lx + 24) << "\" y2=\""
        << fixed(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fixed(lx + 30) << "\" y=\"" << fixed(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape_xml("N = " + std::to_string(n))
        << "</text>\n";
    ++index;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string render_summary(std::span<const CellSummary> results, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv:
      return render_summary_csv(results);
    case OutputFormat::Json:
      return render_summary_json(results);
    case OutputFormat::Svg:
      return render_summary_svg(results);
  }
  return {};
}

void write_outputs(std::span<const CellSummary> results, OutputFormat format, const std::filesystem::path& path) {
  if (results.empty()) throw InvalidInput("no results to write");
  write_file(path, render_summary(results, format));
}

}  // namespace bandwagon
