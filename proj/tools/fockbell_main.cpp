// Copyright 2026 The fockbell Authors
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

#include "fockbell/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using fockbell::runner::ConfigOverrides;

constexpr int kUsageError = 2;

void add_run_options(CLI::App& app, ConfigOverrides& o, std::string& format) {
  app.add_option("--alpha-min", o.alpha_min, "Smallest oscillator amplitude");
  app.add_option("--alpha-max", o.alpha_max, "Largest oscillator amplitude");
  app.add_option("--alpha-step", o.alpha_step, "Amplitude grid spacing");
  app.add_option("--cutoff", o.cutoff, "Oscillator Fock cutoff (0 = tail rule)");
  app.add_option("--seed", o.seed, "Seed for starts and random samples");
  app.add_option("--starts", o.starts, "Optimizer starts (povm-check: random settings)");
  app.add_option("--grid", o.grid, "Sweep points per axis / quadrature points");
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--hardy-q", o.hardy_q, "Exploratory vacuum admixture q in (0,1) for ch-optimize");
  app.add_option("--tolerance", o.tolerance, "Command tolerance (see defaults table)");
}

int emit(const fockbell::runner::ResultDocument& doc) {
  if (doc.config.out.empty()) {
    fockbell::runner::write(doc, std::cout);
  } else {
    std::ofstream os(doc.config.out);
    if (!os) {
      std::cerr << "fockbell: cannot write " << doc.config.out << '\n';
      return kUsageError;
    }
    fockbell::runner::write(doc, os);
  }
  fockbell::runner::write_summary(doc, std::cerr);
  return fockbell::runner::exit_code(doc);
}

int replay(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw fockbell::runner::UsageError("cannot read " + path);
  const auto stored = fockbell::runner::read_result(is);
  const auto doc = fockbell::runner::run(stored.config);
  const auto fresh = fockbell::runner::records_of(doc);
  if (fresh == stored.records) {
    std::cerr << "replay: " << fresh.size() << " records identical\n";
    return 0;
  }
  std::size_t first = 0;
  while (first < fresh.size() && first < stored.records.size() && fresh[first] == stored.records[first]) {
    ++first;
  }
  std::cerr << "replay: records differ from record " << first << " (stored " << stored.records.size()
            << ", fresh " << fresh.size() << ")\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockbell: single-photon homodyne Bell tests on truncated Fock spaces"};
  app.set_version_flag("--version", fockbell::runner::tool_version());
  app.require_subcommand(1);

  std::map<std::string, ConfigOverrides> overrides;
  std::map<std::string, std::string> formats;
  const std::map<std::string, std::string> help = {
      {"amplitudes", "Rate and intensity correlation amplitudes against sqrt2/2"},
      {"ch-optimize", "Minimize the CH expression for rates under the Hardy pattern"},
      {"ch-sweep", "Optimized CH value over the (alpha, alpha') grid"},
      {"witness", "Intensity and rate entanglement witnesses on the interferometer state"},
      {"classical", "Phase-averaged classical-oscillator correlation amplitude"},
      {"povm-check", "Effective measurement operators against four-mode expectations"}};
  for (const std::string& name : fockbell::runner::command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    add_run_options(*sub, overrides[name], formats[name]);
  }
  std::string replay_path;
  CLI::App* rep = app.add_subcommand("replay", "Re-run a result file's config and compare records");
  rep->add_option("file", replay_path, "CSV or JSON result file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (rep->parsed()) return replay(replay_path);
    for (const std::string& name : fockbell::runner::command_names()) {
      if (!app.got_subcommand(name)) continue;
      ConfigOverrides o = overrides[name];
      if (!formats[name].empty()) o.format = fockbell::runner::parse_format(formats[name]);
      return emit(fockbell::runner::run(fockbell::runner::resolve_config(name, o)));
    }
  } catch (const std::exception& e) {
    std::cerr << "fockbell: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
