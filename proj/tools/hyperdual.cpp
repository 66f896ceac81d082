// Copyright 2026 The hyperdual Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>

#include "CLI11.hpp"
#include "hyperdual/cli.hpp"

int main(int argc, char** argv) {
  using hyperdual::cli::Command;
  CLI::App app{"Hypergraph CSS codes and their strong-weak duality"};
  // --h is the transverse field, so help is long-form only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  Command cmd;

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", cmd.input, "hypergraph file or generator spec")->required();
    sub->add_option("-o,--output", cmd.output, "write here instead of stdout");
    sub->add_flag("--allow-duplicates", cmd.allow_duplicates, "accept repeated edges in the input file");
  };
  auto couplings = [&](CLI::App* sub) {
    sub->add_option("--j", cmd.j, "stabilizer coupling J")->capture_default_str();
    sub->add_option("--h", cmd.h, "transverse field h")->capture_default_str();
  };
  auto grid = [&](CLI::App* sub) {
    sub->add_option("--start", cmd.start)->capture_default_str();
    sub->add_option("--stop", cmd.stop)->capture_default_str();
    sub->add_option("--step", cmd.step)->capture_default_str();
    sub->add_option("--delta", cmd.delta, "chi_F finite difference")->capture_default_str();
    sub->add_option("--threads", cmd.threads, "worker threads (0 = all cores)");
  };

  auto* dual = app.add_subcommand("dual", "dual hypergraph (transpose)");
  input(dual);
  auto* ortho = app.add_subcommand("ortho", "orthogonal hypergraph (GF(2) nullspace)");
  input(ortho);
  auto* selfdual = app.add_subcommand("check-selfdual", "search for a self-duality witness");
  input(selfdual);
  selfdual->add_option("--budget", cmd.budget, "search node budget")->capture_default_str();
  auto* generate = app.add_subcommand("generate", "emit a generated hypergraph");
  generate->add_option("spec", cmd.input, "e.g. square:3x3:open, colex2:3x3, plaquette:4, hypercubic:3x3x3")
      ->required();
  generate->add_option("-o,--output", cmd.output);
  auto* verify = app.add_subcommand("verify-duality", "compare sector and dual spectra");
  input(verify);
  couplings(verify);
  verify->add_option("--tol", cmd.tol)->capture_default_str();
  auto* scan = app.add_subcommand("scan", "fidelity-susceptibility scan over h/J");
  input(scan);
  grid(scan);
  scan->add_option("--model", cmd.model, "ising or dual")->check(CLI::IsMember({"ising", "dual"}));
  auto* tc = app.add_subcommand("tc-robustness", "toric-code critical field on a graph");
  input(tc);
  grid(tc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hyperdual::cli::kUsage;
  }
  cmd.verb = app.get_subcommands().front()->get_name();
  return hyperdual::cli::run(cmd);
}
