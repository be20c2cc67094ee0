// Copyright 2026 The qdilemma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdilemma/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdilemma/analysis.hpp"
#include "qdilemma/game.hpp"
#include "qdilemma/noise.hpp"
#include "qdilemma/tomography.hpp"

namespace qdilemma::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  double p = 1.0;
  double q = 2.0;
  double n = 9.0;
  double x = 0.0;
  double gamma = std::numbers::pi / 2;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  std::size_t grid = 101;
  std::string format = "json";
  std::string output;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Columnar result: JSON gets it as a list of objects, CSV as header + rows.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number()) return csv_number(v.get<double>());
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

json params_json(const RunConfig& cfg) {
  return {{"p", cfg.p}, {"q", cfg.q}, {"n", cfg.n}, {"x", cfg.x}, {"gamma", cfg.gamma}, {"seed", cfg.seed}};
}

const std::vector<std::string> kParamColumns = {"p", "q", "n", "x", "gamma", "seed"};

std::vector<json> params_row(const RunConfig& cfg) {
  return {cfg.p, cfg.q, cfg.n, cfg.x, cfg.gamma, cfg.seed};
}

/// Serializes `table`; every CSV row and JSON record repeats the parameter set.
/// `extra` lands next to "records" in the JSON results object.
std::string render(const RunConfig& cfg, const Table& table, const json& extra = json::object()) {
  if (cfg.format == "csv") {
    std::ostringstream os;
    std::vector<std::string> header = kParamColumns;
    header.insert(header.end(), table.columns.begin(), table.columns.end());
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    const auto prefix = params_row(cfg);
    for (const auto& row : table.rows) {
      std::vector<json> full = prefix;
      full.insert(full.end(), row.begin(), row.end());
      for (std::size_t i = 0; i < full.size(); ++i) os << (i ? "," : "") << csv_cell(full[i]);
      os << '\n';
    }
    return os.str();
  }
  json records = json::array();
  for (const auto& row : table.rows) {
    json rec = params_json(cfg);
    for (std::size_t i = 0; i < table.columns.size(); ++i) rec[table.columns[i]] = row[i];
    records.push_back(std::move(rec));
  }
  json results = extra;
  results["records"] = std::move(records);
  json doc = {{"params", params_json(cfg)}, {"results", std::move(results)}};
  return doc.dump(2) + "\n";
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(cfg.output);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into place at " + target.string() + ": " + ec.message());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

PayoffTable table_of(const RunConfig& cfg) { return PayoffTable(cfg.p, cfg.q, cfg.n); }

std::string bits_of(std::size_t k) {
  return {static_cast<char>('0' + ((k >> 2) & 1)), static_cast<char>('0' + ((k >> 1) & 1)),
          static_cast<char>('0' + (k & 1))};
}

// --- play -------------------------------------------------------------------

std::string cmd_play(const RunConfig& cfg, const std::string& profile_text) {
  StrategyProfile profile;
  try {
    profile = parse_profile(profile_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const OutcomeDistribution dist =
      play(profile, corrupted_input(CorruptionModel(cfg.x)), EntanglerParams(cfg.gamma));
  const PayoffVector pv = payoff(dist, table_of(cfg));

  Table t;
  t.columns = {"profile"};
  std::vector<json> row = {profile_text};
  for (std::size_t k = 0; k < 8; ++k) {
    t.columns.push_back("prob_" + bits_of(k));
    row.push_back(dist[k]);
  }
  t.columns.insert(t.columns.end(), {"payoff1", "payoff2", "payoff3", "mean"});
  row.insert(row.end(), {pv.player1, pv.player2, pv.player3, pv.mean});
  t.add(std::move(row));
  return render(cfg, t);
}

// --- classes ----------------------------------------------------------------

std::string cmd_classes(const RunConfig& cfg) {
  const PayoffTable table = table_of(cfg);
  const EntanglerParams params(cfg.gamma);
  Table t;
  t.columns = {"label", "multiset", "size", "configurations", "mean"};
  for (const auto& cls : labeled_classes()) {
    std::string configs;
    for (const auto& prof : cls.configurations) configs += (configs.empty() ? "" : " ") + profile_string(prof);
    t.add({cls.label, cls.multiset, cls.size(), configs, class_mean_payoff(cls, table, cfg.x, params)});
  }
  return render(cfg, t);
}

// --- sweep ------------------------------------------------------------------

std::string cmd_sweep(const RunConfig& cfg, const std::string& swept_text, std::optional<double> from,
                      std::optional<double> to) {
  const SweptParameter swept = parse_swept(swept_text);
  double lo = 0.0;
  double hi = 1.0;
  switch (swept) {
    case SweptParameter::X: break;
    case SweptParameter::N: lo = 3.0; hi = 100.0; break;
    case SweptParameter::Q: lo = cfg.p; hi = cfg.n; break;
  }
  lo = from.value_or(lo);
  hi = to.value_or(hi);
  if (!(lo < hi) && cfg.grid > 1) throw UsageError("sweep range is empty or inverted");
  const auto grid = uniform_grid(lo, hi, cfg.grid);

  const SweepTemplate base{cfg.p, cfg.q, cfg.n, cfg.x, cfg.gamma};
  const auto records = sweep(base, swept, grid);

  Table t;
  t.columns = {"swept",      "value",          "p_point", "q_point", "n_point", "x_point",
               "valid",      "quantum_ne",     "classical_ne", "x_c",  "dominant", "sim_quantum_ne",
               "sim_classical_ne", "error"};
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : records) {
    if (!r.valid) {
      t.add({std::string(to_string(r.swept)), r.value, r.p, r.q, r.n, r.x, false, nullptr, nullptr, nullptr, nullptr,
             nullptr, nullptr, r.error});
      continue;
    }
    t.add({std::string(to_string(r.swept)), r.value, r.p, r.q, r.n, r.x, true, r.quantum_ne, r.classical_ne,
           opt(r.x_c), std::string(to_string(r.dominant)), opt(r.simulated_quantum_ne), opt(r.simulated_classical_ne),
           ""});
  }
  return render(cfg, t, {{"swept", swept_text}, {"from", lo}, {"to", hi}, {"grid", cfg.grid}});
}

// --- xc ---------------------------------------------------------------------

std::string cmd_xc(const RunConfig& cfg) {
  const PayoffTable table = table_of(cfg);
  const auto xc = critical_corruption(table);
  const EquilibriumReport report = dominance(table, cfg.x);
  Table t;
  t.columns = {"x_c", "status", "quantum_ne", "classical_ne", "dominant"};
  t.add({xc ? json(*xc) : json(nullptr), xc ? "advantage" : "no-advantage", report.quantum_ne_mean,
         report.classical_ne_mean, std::string(to_string(report.dominant))});
  return render(cfg, t);
}

// --- tomo -------------------------------------------------------------------

struct TomoInputs {
  std::string profile;
  std::string state;
  std::string tensor;
  std::string target;
};

DensityMatrix state_from(const RunConfig& cfg, const TomoInputs& in) {
  if (!in.profile.empty() && !in.state.empty()) throw UsageError("give either --profile or --state, not both");
  if (!in.state.empty()) {
    if (in.state == "class7_appendix") return load_reference_state(in.state).state;
    return parse_density_text(read_file(in.state));
  }
  const std::string profile = in.profile.empty() ? "XIX" : in.profile;
  const Operator u = game_unitary(parse_profile(profile), EntanglerParams(cfg.gamma));
  return conjugate_by(u, corrupted_input(CorruptionModel(cfg.x)));
}

DensityMatrix target_from(const TomoInputs& in) {
  if (in.target.empty()) throw UsageError("fidelity needs --target (bit string such as 101, or a density file)");
  if (in.target.find_first_not_of("01") == std::string::npos) {
    if (in.target.size() != 3) throw UsageError("target bit string must have three bits");
    return DensityMatrix::basis(in.target);
  }
  const DensityMatrix raw = parse_density_text(read_file(in.target));
  return DensityMatrix::physical(raw.matrix());
}

Table tensor_table(const TomographyTensor& t) {
  Table table;
  table.columns = {"pauli", "i1", "i2", "i3", "value"};
  for (std::size_t k = 0; k < TomographyTensor::kSize; ++k) {
    table.add({TomographyTensor::label(k), k / 16, (k / 4) % 4, k % 4, t.values()[k]});
  }
  return table;
}

TomographyTensor tensor_from_file(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json doc = json::parse(text);
    std::array<double, TomographyTensor::kSize> v{};
    const auto& records = doc.at("results").at("records");
    if (records.size() != v.size()) throw std::invalid_argument("tensor JSON must hold 64 records");
    for (const auto& rec : records) {
      v.at(TomographyTensor::index(rec.at("i1"), rec.at("i2"), rec.at("i3"))) = rec.at("value").get<double>();
    }
    return TomographyTensor(v);
  }
  return parse_tensor_text(text);
}

std::string cmd_tomo(const RunConfig& cfg, const std::string& action, const TomoInputs& in) {
  if (action == "forward") {
    return render(cfg, tensor_table(expectations(state_from(cfg, in))));
  }
  if (action == "estimate") {
    if (cfg.shots == 0) throw UsageError("--shots must be at least 1");
    const auto t = estimate_expectations(state_from(cfg, in), ShotConfig{cfg.shots, cfg.seed});
    return render(cfg, tensor_table(t), {{"shots", cfg.shots}});
  }
  if (action == "reconstruct") {
    if (in.tensor.empty()) throw UsageError("reconstruct needs --tensor FILE");
    const DensityMatrix rho = reconstruct(tensor_from_file(in.tensor));
    Table table;
    table.columns = {"row", "col", "re", "im"};
    for (std::size_t r = 0; r < rho.dim(); ++r)
      for (std::size_t c = 0; c < rho.dim(); ++c) table.add({r, c, rho(r, c).real(), rho(r, c).imag()});
    return render(cfg, table, {{"min_eigenvalue", rho.min_eigenvalue()}});
  }
  if (action == "fidelity") {
    const DensityMatrix rho = state_from(cfg, in);
    const DensityMatrix sigma = target_from(in);
    Table table;
    table.columns = {"state", "target", "fidelity"};
    const std::string name = !in.state.empty() ? in.state : "profile:" + (in.profile.empty() ? "XIX" : in.profile);
    table.add({name, in.target, fidelity(rho, sigma)});
    return render(cfg, table);
  }
  throw UsageError("unknown tomo action '" + action + "'; expected forward, reconstruct, fidelity or estimate");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Noisy three-player quantum dilemma: simulation and analysis"};
  app.name(args.empty() ? "qdilemma" : args.front());
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--p", cfg.p, "payoff p (lone goer)");
  app.add_option("--q", cfg.q, "payoff q (everyone goes)");
  app.add_option("--n", cfg.n, "payoff n (pair goes; lone stayers lose n)");
  app.add_option("--x", cfg.x, "source corruption probability");
  app.add_option("--gamma", cfg.gamma, "entangling strength in [0, pi/2]");
  app.add_option("--shots", cfg.shots, "shots per Pauli string for tomo estimate");
  app.add_option("--seed", cfg.seed, "random seed for tomo estimate");
  app.add_option("--grid", cfg.grid, "number of sweep points");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "write to PATH instead of stdout");

  std::string profile;
  auto* play_cmd = app.add_subcommand("play", "play one strategy profile");
  play_cmd->add_option("profile", profile, "three letters from {I,H,X}, player 1 first")->required();

  auto* classes_cmd = app.add_subcommand("classes", "mean payoff of the ten strategy classes");

  std::string swept;
  std::optional<double> from;
  std::optional<double> to;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep x, n or q and report both equilibria");
  sweep_cmd->add_option("parameter", swept, "x, n or q")->required()->check(CLI::IsMember({"x", "n", "q"}));
  sweep_cmd->add_option("--from", from, "first grid value");
  sweep_cmd->add_option("--to", to, "last grid value");

  auto* xc_cmd = app.add_subcommand("xc", "critical corruption and dominance at --x");

  std::string action;
  TomoInputs tomo_in;
  auto* tomo_cmd = app.add_subcommand("tomo", "state tomography tools");
  tomo_cmd->add_option("action", action, "forward, reconstruct, fidelity or estimate")->required();
  tomo_cmd->add_option("--profile", tomo_in.profile, "use the output state of this profile (default XIX)");
  tomo_cmd->add_option("--state", tomo_in.state, "class7_appendix or a density-matrix file");
  tomo_cmd->add_option("--tensor", tomo_in.tensor, "tensor file for reconstruct");
  tomo_cmd->add_option("--target", tomo_in.target, "fidelity target: bit string or density-matrix file");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    static_cast<void>(table_of(cfg));
    if (cfg.grid == 0) throw UsageError("--grid must be at least 1");

    std::string text;
    if (*play_cmd) text = cmd_play(cfg, profile);
    else if (*classes_cmd) text = cmd_classes(cfg);
    else if (*sweep_cmd) text = cmd_sweep(cfg, swept, from, to);
    else if (*xc_cmd) text = cmd_xc(cfg);
    else if (*tomo_cmd) text = cmd_tomo(cfg, action, tomo_in);
    emit(cfg, text, out);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qdilemma::cli
