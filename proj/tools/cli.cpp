#include "cli.hpp"

#include <bandwagon/errors.hpp>
#include <bandwagon/numerics.hpp>
#include <bandwagon/signed_graph.hpp>
#include <bandwagon/trajectory.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bandwagon::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t parse_positive(const std::string& token) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(token, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a positive integer: '" + token + "'");
  }
  if (pos != token.size() || value == 0 || token.front() == '-') {
    throw std::invalid_argument("not a positive integer: '" + token + "'");
  }
  return static_cast<std::size_t>(value);
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos, 0);
  } catch (const std::exception&) {
    throw UsageError("invalid seed '" + text + "'");
  }
  if (pos != text.size() || text.front() == '-') throw UsageError("invalid seed '" + text + "'");
  return value;
}

void apply_config_file(const std::filesystem::path& path, ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  static const std::vector<std::string> known = {"agents", "topics", "trials", "std",    "seed",
                                                 "budget", "zero_tol", "threads"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  auto counts = [&](const char* key, std::vector<std::size_t>& target) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (v.is_string()) {
      target = parse_count_list(v.get<std::string>());
    } else {
      target.clear();
      for (const auto& item : v) target.push_back(item.get<std::size_t>());
    }
  };
  try {
    counts("agents", config.agent_counts);
    counts("topics", config.topic_counts);
    if (j.contains("trials")) config.trials = j.at("trials").get<std::size_t>();
    if (j.contains("std")) config.opinion_std = j.at("std").get<double>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("budget")) config.budget = j.at("budget").get<std::size_t>();
    if (j.contains("zero_tol")) config.zero_tol = j.at("zero_tol").get<double>();
    if (j.contains("threads")) config.threads = j.at("threads").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config '" + path.string() + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError("config '" + path.string() + "': " + e.what());
  }
}

void print_matrix(std::ostream& out, const AppraisalMatrix& x) { out << format_appraisal_csv(x); }

void print_row(std::ostream& out, std::span<const double> row) {
  for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_real(row[j]);
  out << '\n';
}

void print_faction(std::ostream& out, const FactionVector& p) {
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << static_cast<int>(p[i]);
  out << '\n';
}

int run_simulate(const SimulateCommand& cmd, std::ostream& out, std::ostream& err) {
  const CsvReadOptions read_options{cmd.allow_zero_columns};
  OpinionMatrix y0 = [&] {
    if (cmd.input) return read_opinion_csv(*cmd.input, read_options);
    std::string text = *cmd.inline_matrix;
    std::replace(text.begin(), text.end(), ';', '\n');
    return parse_opinion_csv(text, read_options);
  }();

  const auto report = validate_initial(y0);
  for (auto j : report.zero_columns) err << "warning: topic " << j + 1 << " is an all-zero column\n";

  std::optional<AppraisalMatrix> first_x;
  std::optional<std::size_t> constant_since;
  auto observer = [&](const ModelState&, const ModelState& after) {
    if (!first_x || *after.appraisals != *first_x) {
      first_x = *after.appraisals;
      constant_since = after.step_index;
    }
  };
  TrajectoryOptions options;
  options.budget = cmd.budget;
  options.zero_tol = cmd.zero_tol;
  options.record_trace = cmd.trace;
  const auto outcome = run_trajectory(y0, options, observer);

  out << "agents: " << y0.n_agents() << '\n';
  out << "topics: " << y0.n_topics() << '\n';
  out << "outcome: " << to_string(outcome.kind) << '\n';
  out << "hitting_time: " << (outcome.hitting_time ? std::to_string(*outcome.hitting_time) : "none") << '\n';
  out << "steps: " << outcome.final_state.step_index << '\n';
  out << "final_lyapunov: " << format_real(outcome.final_lyapunov) << '\n';
  out << "final_max_abs: " << format_real(outcome.final_state.opinions.max_abs()) << '\n';
  if (constant_since) out << "appraisals_constant_since: " << *constant_since << '\n';
  if (outcome.final_state.appraisals) {
    out << "appraisals:\n";
    print_matrix(out, *outcome.final_state.appraisals);
  }
  if (outcome.equilibrium) {
    out << "faction: ";
    print_faction(out, outcome.equilibrium->faction);
    out << "consensus_row: ";
    print_row(out, outcome.equilibrium->consensus_row);
  }
  if (outcome.trace) {
    out << "trace:\nt,lyapunov,balanced\n";
    for (const auto& e : *outcome.trace) {
      out << e.t << ',' << format_real(e.lyapunov) << ',' << (e.balanced ? 1 : 0) << '\n';
    }
  }
  return kExitOk;
}

int run_sweep_command(const SweepCommand& cmd, std::ostream& out, std::ostream&) {
  const auto results = run_sweep(cmd.config);
  if (cmd.out) {
    write_outputs(results, cmd.format.value_or(output_format_for(*cmd.out)), *cmd.out);
  } else {
    out << render_summary(results, cmd.format.value_or(OutputFormat::Csv));
  }
  return kExitOk;
}

int run_balance_check(const BalanceCheckCommand& cmd, std::ostream& out, std::ostream&) {
  const auto x = read_appraisal_csv(cmd.matrix);
  const auto n = x.n_agents();
  const auto cert = certify_balance(x);
  out << "agents: " << n << '\n';
  out << "balanced: " << (cert.balanced ? "yes" : "no") << '\n';
  if (cert.faction) {
    out << "faction: ";
    print_faction(out, *cert.faction);
  }
  out << "complete: " << (x.is_complete() ? "yes" : "no") << '\n';
  if (x.is_complete()) out << "all_triads_balanced: " << (all_triads_balanced(x) ? "yes" : "no") << '\n';
  out << "connected: " << (is_connected(x) ? "yes" : "no") << '\n';
  out << "in_s_stable: " << (s_stable_membership(x).in_s_stable ? "yes" : "no") << '\n';
  const auto spectrum = symmetric_eigenvalues(to_real(x, 1.0 / static_cast<double>(n)));
  out << "spectrum_over_n:";
  for (double v : spectrum.eigenvalues) out << ' ' << format_real(v);
  out << '\n';
  out << "spectral_radius_over_n: " << format_real(spectrum.spectral_radius()) << '\n';
  return kExitOk;
}

int run_chernoff(const ChernoffCommand& cmd, std::ostream& out, std::ostream&) {
  out << chernoff_trials(cmd.epsilon, cmd.delta) << '\n';
  return kExitOk;
}

}  // namespace

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
    if (token.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      values.push_back(parse_positive(token));
      continue;
    }
    const auto lo = parse_positive(token.substr(0, dots));
    const auto hi = parse_positive(token.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("descending range '" + token + "'");
    for (auto v = lo; v <= hi; ++v) values.push_back(v);
  }
  if (values.empty()) throw std::invalid_argument("empty list");
  return values;
}

ParseResult parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Opinion/appraisal dynamics with sign-of-correlation appraisals", "bandwagon"};
  app.require_subcommand(1);

  SimulateCommand simulate;
  std::string input_path;
  auto* sim = app.add_subcommand("simulate", "Run one trajectory and classify it");
  auto* sim_input = sim->add_option("--input,-i", input_path, "Initial opinion matrix (CSV, one agent per line)");
  auto* sim_inline = sim->add_option("--matrix", simulate.inline_matrix, "Inline matrix, rows separated by ';'");
  sim_input->excludes(sim_inline);
  sim->add_option("--budget", simulate.budget, "Maximum number of steps")->check(CLI::PositiveNumber);
  sim->add_option("--zero-tol", simulate.zero_tol, "Vanishing threshold on max |Y_ij|")->check(CLI::PositiveNumber);
  sim->add_flag("--trace", simulate.trace, "Print (t, V, balanced) for every step");
  sim->add_flag("--allow-zero-columns", simulate.allow_zero_columns, "Accept all-zero topic columns");

  SweepCommand sweep;
  std::string agents;
  std::string topics;
  std::string seed_text;
  std::string config_path;
  std::string out_path;
  std::string format_name;
  auto* sw = app.add_subcommand("sweep", "Monte Carlo sweep over agent and topic counts");
  auto* sw_config = sw->add_option("--config", config_path, "JSON file with sweep parameters");
  auto* sw_agents = sw->add_option("--agents", agents, "Agent counts, e.g. 9,20,100");
  auto* sw_topics = sw->add_option("--topics", topics, "Topic counts, e.g. 1..10");
  auto* sw_trials = sw->add_option("--trials", sweep.config.trials, "Trials per cell")->check(CLI::PositiveNumber);
  auto* sw_std = sw->add_option("--std", sweep.config.opinion_std, "Std. deviation of initial opinions")
                     ->check(CLI::PositiveNumber);
  auto* sw_seed = sw->add_option("--seed", seed_text, "Base seed (env BANDWAGON_SEED; the flag wins)");
  auto* sw_budget = sw->add_option("--budget", sweep.config.budget, "Step budget per trajectory")
                        ->check(CLI::PositiveNumber);
  auto* sw_tol = sw->add_option("--zero-tol", sweep.config.zero_tol, "Vanishing threshold")
                     ->check(CLI::PositiveNumber);
  auto* sw_threads = sw->add_option("--threads", sweep.config.threads, "Worker threads (0 = all cores)");
  sw->add_option("--out,-o", out_path, "Output file; format from extension unless --format");
  auto* sw_format = sw->add_option("--format", format_name, "csv, json or svg")
                        ->check(CLI::IsMember({"csv", "json", "svg"}));

  BalanceCheckCommand balance;
  std::string matrix_path;
  auto* bc = app.add_subcommand("balance-check", "Structural balance report for a sign matrix");
  bc->add_option("matrix,--matrix", matrix_path, "Sign matrix CSV with entries -1, 0, 1")->required();

  ChernoffCommand chernoff;
  auto* ch = app.add_subcommand("chernoff", "Trials needed for accuracy epsilon at confidence 1 - delta");
  ch->add_option("--epsilon", chernoff.epsilon, "Accuracy")->required()->check(CLI::Range(0.0, 1.0));
  ch->add_option("--delta", chernoff.delta, "Failure probability")->required()->check(CLI::Range(0.0, 1.0));

  ParseResult result;
  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    result.message = out.str() + err.str();
    return result;
  }

  try {
    if (sim->parsed()) {
      if (!sim_input->count() && !sim_inline->count()) throw UsageError("simulate needs --input or --matrix");
      if (sim_input->count()) simulate.input = input_path;
      result.command = simulate;
    } else if (sw->parsed()) {
      // Precedence: explicit flag, then environment, then config file, then default.
      ExperimentConfig base;
      if (sw_config->count()) apply_config_file(config_path, base);
      auto& cfg = sweep.config;
      if (!sw_trials->count()) cfg.trials = base.trials;
      if (!sw_std->count()) cfg.opinion_std = base.opinion_std;
      if (!sw_budget->count()) cfg.budget = base.budget;
      if (!sw_tol->count()) cfg.zero_tol = base.zero_tol;
      if (!sw_threads->count()) cfg.threads = base.threads;
      cfg.agent_counts = sw_agents->count() ? parse_count_list(agents) : base.agent_counts;
      cfg.topic_counts = sw_topics->count() ? parse_count_list(topics) : base.topic_counts;
      if (sw_seed->count()) {
        cfg.seed = parse_seed(seed_text);
      } else if (const char* env = std::getenv("BANDWAGON_SEED"); env != nullptr && *env != '\0') {
        cfg.seed = parse_seed(env);
      } else {
        cfg.seed = base.seed;
      }
      if (cfg.agent_counts.empty()) throw UsageError("sweep needs --agents (or 'agents' in --config)");
      if (cfg.topic_counts.empty()) throw UsageError("sweep needs --topics (or 'topics' in --config)");
      cfg.validate();
      if (!out_path.empty()) sweep.out = out_path;
      if (sw_format->count()) sweep.format = parse_output_format(format_name);
      result.command = sweep;
    } else if (bc->parsed()) {
      balance.matrix = matrix_path;
      result.command = balance;
    } else if (ch->parsed()) {
      if (!(chernoff.epsilon > 0.0 && chernoff.epsilon < 1.0) || !(chernoff.delta > 0.0 && chernoff.delta < 1.0)) {
        throw UsageError("epsilon and delta must lie strictly between 0 and 1");
      }
      result.command = chernoff;
    }
  } catch (const IoError& e) {
    result.exit_code = kExitIo;
    result.message = std::string("error: ") + e.what() + '\n';
  } catch (const std::invalid_argument& e) {
    result.exit_code = kExitUsage;
    result.message = std::string("usage error: ") + e.what() + '\n';
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.message = std::string("usage error: ") + e.what() + '\n';
  }
  return result;
}

int run_command(const CliCommand& command, std::ostream& out, std::ostream& err) {
  try {
    return std::visit(
        [&](const auto& cmd) -> int {
          using T = std::decay_t<decltype(cmd)>;
          if constexpr (std::is_same_v<T, SimulateCommand>) return run_simulate(cmd, out, err);
          if constexpr (std::is_same_v<T, SweepCommand>) return run_sweep_command(cmd, out, err);
          if constexpr (std::is_same_v<T, BalanceCheckCommand>) return run_balance_check(cmd, out, err);
          if constexpr (std::is_same_v<T, ChernoffCommand>) return run_chernoff(cmd, out, err);
        },
        command);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInvalidMatrix;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(args);
  if (!parsed.command) {
    (parsed.exit_code == kExitOk ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  return run_command(*parsed.command, out, err);
}

}  // namespace bandwagon::cli
