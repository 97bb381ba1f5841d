// Command-line front end for the bandwagon simulator.
//
//   bandwagon simulate      --input y0.csv [--budget N] [--zero-tol T] [--trace]
//   bandwagon sweep         --agents 9,20,100 --topics 1..10 --trials 30000 --std 10 --seed 42 --out results.csv
//   bandwagon balance-check x.csv
//   bandwagon chernoff      --epsilon 0.01 --delta 0.01
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 invalid input matrix.
#pragma once

#include <bandwagon/io.hpp>
#include <bandwagon/montecarlo.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bandwagon::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitInvalidMatrix = 4;

struct SimulateCommand {
  std::optional<std::filesystem::path> input;
  std::optional<std::string> inline_matrix;  // rows separated by ';'
  std::size_t budget = 10000;
  double zero_tol = 1e-12;
  bool trace = false;
  bool allow_zero_columns = false;
};

struct SweepCommand {
  ExperimentConfig config;
  std::optional<std::filesystem::path> out;
  std::optional<OutputFormat> format;
};

struct BalanceCheckCommand {
  std::filesystem::path matrix;
};

struct ChernoffCommand {
  double epsilon = 0.01;
  double delta = 0.01;
};

using CliCommand = std::variant<SimulateCommand, SweepCommand, BalanceCheckCommand, ChernoffCommand>;

/// Either a command to run or an exit status with the text to print
/// (help, usage error, ...).
struct ParseResult {
  std::optional<CliCommand> command;
  int exit_code = kExitOk;
  std::string message;
};

/// Parses "9,20,100", "1..10" or mixtures such as "1..3,7". Throws
/// std::invalid_argument on malformed or non-positive entries.
std::vector<std::size_t> parse_count_list(const std::string& text);

/// `args` excludes the program name. Unknown flags are usage errors (2); a
/// missing --config file is an I/O error (3).
ParseResult parse_args(const std::vector<std::string>& args);

int run_command(const CliCommand& command, std::ostream& out, std::ostream& err);

/// parse_args + run_command.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bandwagon::cli
