// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The compsim Authors
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

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "compsim/config.hpp"
#include "compsim/errors.hpp"
#include "compsim/io.hpp"
#include "compsim/sim.hpp"

namespace compsim::cli {

namespace fs = std::filesystem;

namespace {

struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ScenarioConfig resolve(const std::string& path, const std::vector<std::string>& overrides,
                       bool validate = true) {
  ScenarioConfig config;
  if (!path.empty()) {
    if (!fs::is_regular_file(path)) throw ConfigFileError("cannot read config file '" + path + "'");
    config = load_config(path);
  }
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(kv, "override must look like key=value");
    }
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (validate) config.validate();
  return config;
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw OutputError("cannot create output directory '" + dir + "'");
  }
  const fs::path probe = fs::path(dir) / ".compsim_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw OutputError("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw OutputError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw OutputError("failed writing '" + path.string() + "'");
}

void print_resolved(std::ostream& out, const ScenarioConfig& c) {
  out << "cells:            " << c.n_cells << " (" << to_string(c.deployment) << ", "
      << c.bs_per_cell() << " BS per cell)\n"
      << "cell radius:      " << c.cell_radius_m << " m\n"
      << "users per cell:   " << c.users_per_cell << "\n"
      << "BS max power:     " << c.p_max_dbm << " dBm (" << c.p_max_watts() << " W)\n"
      << "bandwidth:        " << c.bandwidth_hz / 1e6 << " MHz\n"
      << "PRBs:             " << c.n_prb << "\n"
      << "antenna gain:     " << c.antenna_gain_db << " dB\n"
      << "noise PSD:        " << c.noise_psd_dbm_hz << " dBm/Hz\n"
      << "video file:       " << c.file_size_mb << " MB (" << to_string(c.mb_convention)
      << ", " << c.file_size_bits() << " bits)\n\n";
  for (const auto& [k, v] : c.entries()) out << "  " << std::left << std::setw(24) << k << v << '\n';
}

void print_summary_header(std::ostream& out) {
  out << std::left << std::setw(14) << "algorithm" << std::setw(8) << "x" << std::right
      << std::setw(16) << "thr[bps]" << std::setw(14) << "stderr" << std::setw(14)
      << "delay[s]" << std::setw(10) << "jain" << '\n';
}

void print_summary_row(std::ostream& out, Algorithm alg, double x, const ArmSummary& s) {
  out << std::left << std::setw(14) << to_string(alg) << std::setw(8) << x << std::right
      << std::fixed << std::setprecision(1) << std::setw(16) << s.mean_throughput_bps
      << std::setw(14) << s.stderr_bps << std::setw(14) << s.mean_delay_s
      << std::setprecision(4) << std::setw(10) << s.jain << '\n'
      << std::defaultfloat << std::setprecision(6);
}

}  // namespace

std::vector<double> parse_values(const std::string& text) {
  auto to_d = [&](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "' in '" + text + "'");
    return v;
  };
  std::vector<double> out;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const double lo = to_d(text.substr(0, dots));
      const double hi = to_d(text.substr(dots + 2));
      for (double v = lo; v <= hi + 1e-9; v += 1.0) out.push_back(v);
    } else if (std::count(text.begin(), text.end(), ':') == 2) {
      const auto a = text.find(':');
      const auto b = text.find(':', a + 1);
      const double lo = to_d(text.substr(0, a));
      const double step = to_d(text.substr(a + 1, b - a - 1));
      const double hi = to_d(text.substr(b + 1));
      if (!(step > 0.0)) throw std::invalid_argument("step must be positive in '" + text + "'");
      const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
      for (long i = 0; i <= n; ++i) out.push_back(lo + step * static_cast<double>(i));
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(to_d(item));
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse values '" + text + "'");
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("value out of range in '" + text + "'");
  }
  if (out.empty()) throw std::invalid_argument("no values in '" + text + "'");
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"CoMP downlink simulator: AP clustering with bargaining power control"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;
  std::string axis;
  std::string values;
  int threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario config file (key = value)");
    sub->add_option("--set", overrides, "Override a config key, key=value (repeatable)")
        ->allow_extra_args(false);
  };

  auto* validate = app.add_subcommand("validate", "Check a config and print resolved parameters");
  add_common(validate);

  auto* run_cmd = app.add_subcommand("run", "Run n_drops drops of one algorithm");
  add_common(run_cmd);
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--threads", threads, "Worker threads (0: hardware)");

  auto* sweep = app.add_subcommand("sweep", "Sweep one axis across all algorithms");
  add_common(sweep);
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--axis", axis, "cluster_size | cell_radius | damping")->required();
  sweep->add_option("--values", values, "1..6, lo:step:hi, or a,b,c")->required();
  sweep->add_option("--threads", threads, "Worker threads (0: hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    // A sweep overrides one field per point, so each point is validated
    // instead of the base value of the swept field.
    const bool sweeping = sweep->parsed();
    const ScenarioConfig config = resolve(config_path, overrides, !sweeping);

    if (validate->parsed()) {
      print_resolved(out, config);
      out << "\nconfig OK\n";
      return kOk;
    }

    SweepAxis ax = SweepAxis::cluster_size;
    std::vector<double> xs;
    if (sweeping) {
      try {
        ax = parse_axis(axis);
        xs = parse_values(values);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
      }
      for (double x : xs) with_axis(config, ax, x).validate();
    }

    const fs::path dir = prepare_out_dir(out_dir);
    write_file(dir / "resolved_config.json", io::resolved_config_json(config) + "\n");

    if (run_cmd->parsed()) {
      const auto drops = run_drops(config, threads);
      std::ostringstream metrics, power;
      io::write_metrics_csv(metrics, config.algorithm, drops);
      io::write_power_csv(power, drops);
      write_file(dir / "metrics.csv", metrics.str());
      write_file(dir / "power.csv", power.str());
      write_file(dir / "clusters.json", io::clusters_json(drops.front()) + "\n");

      std::vector<MetricsReport> reports;
      for (const auto& d : drops) reports.push_back(d.metrics);
      print_summary_header(out);
      print_summary_row(out, config.algorithm, 0.0, summarize(reports));
      out << "wrote " << (dir / "metrics.csv").string() << "\n";
      return kOk;
    }

    const SweepResult result = run_sweep(config, ax, xs, {Algorithm::ap_comp, Algorithm::common_comp,
                                                          Algorithm::no_comp},
                                         threads);
    std::ostringstream csv;
    io::write_sweep_csv(csv, result);
    const fs::path file = dir / ("sweep_" + std::string(to_string(ax)) + ".csv");
    write_file(file, csv.str());
    print_summary_header(out);
    for (const auto& p : result.points) print_summary_row(out, p.algorithm, p.x, p.summary);
    out << "wrote " << file.string() << "\n";
    return kOk;
  } catch (const ConfigFileError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "error: invalid config: " << e.what() << "\n";
    return kConfigError;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << "\n";
    return kOutputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}

}  // namespace compsim::cli
