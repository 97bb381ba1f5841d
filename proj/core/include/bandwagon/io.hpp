// File formats: opinion / appraisal matrices as CSV, sweep summaries as
// CSV, JSON or an SVG chart of mean hitting time against topic count.
#pragma once

#include <bandwagon/dynamics.hpp>
#include <bandwagon/montecarlo.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace bandwagon {

struct CsvReadOptions {
  /// Zero columns are tolerated (zero rows never are).
  bool allow_zero_columns = false;
};

/// Parses a rectangular comma-separated matrix, one agent per line. Lines
/// starting with '#' are comments; trailing blank lines are ignored, a blank
/// line between agents is a zero row. Throws InvalidInput on ragged rows,
/// non-numeric cells, zero rows, and zero columns unless allowed.
OpinionMatrix parse_opinion_csv(std::string_view text, const CsvReadOptions& options = {});
/// Throws IoError if the file cannot be read, otherwise as parse_opinion_csv.
OpinionMatrix read_opinion_csv(const std::filesystem::path& path, const CsvReadOptions& options = {});

/// 17 significant digits per entry, so parsing reproduces the matrix exactly.
std::string format_opinion_csv(const OpinionMatrix& y);
void write_opinion_csv(const std::filesystem::path& path, const OpinionMatrix& y);

/// Sign matrices use the entries -1, 0, 1.
AppraisalMatrix parse_appraisal_csv(std::string_view text);
AppraisalMatrix read_appraisal_csv(const std::filesystem::path& path);
std::string format_appraisal_csv(const AppraisalMatrix& x);

enum class OutputFormat { Csv, Json, Svg };

/// Parses "csv" / "json" / "svg".
OutputFormat parse_output_format(std::string_view name);
/// From the file extension; defaults to CSV.
OutputFormat output_format_for(const std::filesystem::path& path);

/// Shortest round-trip decimal, always with a fractional part ("1.0",
/// "0.9833333333333333"); "nan" for NaN.
std::string format_real(double v);

std::string render_summary_csv(std::span<const CellSummary> results);
std::string render_summary_json(std::span<const CellSummary> results);
std::string render_summary_svg(std::span<const CellSummary> results);
std::string render_summary(std::span<const CellSummary> results, OutputFormat format);

/// Throws InvalidInput on empty results (no file is created) and IoError if
/// the path cannot be written.
void write_outputs(std::span<const CellSummary> results, OutputFormat format, const std::filesystem::path& path);

}  // namespace bandwagon
