#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gti_cli/commands.hpp"

using namespace gti::cli;

namespace {

void add_common(CLI::App* sub, RunOptions& o, std::optional<double>& tol, std::optional<std::string>& output) {
  sub->add_option("--tol", tol, "Tolerance (default scales with the Bessel bounds)");
  sub->add_option("--seed", o.seed, "Seed for \"random\" windows and generated inputs");
  sub->add_option("--cap", o.cap, "Largest N*|G| for dense oracles")->check(CLI::PositiveNumber);
  sub->add_option("--output", output, "Output file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Duality, orthogonality and multiplexing checks for super-GTI systems on finite abelian groups"};
  app.require_subcommand(1);

  RunOptions o;
  std::optional<double> tol;
  std::optional<std::string> output;

  std::string config_f;
  std::optional<std::string> config_h;
  std::optional<std::string> input;

  auto* info = app.add_subcommand("info", "Describe a system: subgroups, annihilators, frame bounds");
  info->add_option("config", config_f, "System config")->required();
  add_common(info, o, tol, output);

  const std::map<std::string, CheckKind> kinds{
      {"duality", CheckKind::kDuality}, {"orthogonality", CheckKind::kOrthogonality}, {"parseval", CheckKind::kParseval}};
  CheckKind kind = CheckKind::kDuality;
  auto* check = app.add_subcommand("check", "Verdict from the t_alpha characterization");
  check->add_option("kind", kind, "duality | orthogonality | parseval")
      ->required()
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
  check->add_option("synthesis", config_f, "Config of F (synthesis windows g)")->required();
  check->add_option("analysis", config_h, "Config of H (analysis windows h); defaults to F");
  check->add_flag("--oracle", o.oracle, "Also compare against the dense Gramian");
  check->add_option("--top-k", o.top_k, "Number of witnesses to report");
  check->add_flag("--dump-table", o.dump_table, "Include every t_alpha fiber in the report");
  add_common(check, o, tol, output);

  auto* dual = app.add_subcommand("gabor-dual", "Canonical dual windows of a Gabor frame");
  dual->add_option("config", config_f, "Gabor config")->required();
  add_common(dual, o, tol, output);

  const std::map<std::string, MultiplexMode> modes{
      {"encode", MultiplexMode::kEncode}, {"decode", MultiplexMode::kDecode}, {"roundtrip", MultiplexMode::kRoundtrip}};
  MultiplexMode mode = MultiplexMode::kRoundtrip;
  auto* mux = app.add_subcommand("multiplex", "Encode N signals into one coefficient stream and back");
  mux->add_option("mode", mode, "encode | decode | roundtrip")
      ->required()
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  mux->add_option("synthesis", config_f, "Config of F (decoder)")->required();
  mux->add_option("analysis", config_h, "Config of H (encoder)")->required();
  mux->add_option("--input", input, "Signal file (encode, roundtrip) or coefficient file (decode)");
  mux->add_flag("--force", o.force, "Proceed with an uncertified pair");
  add_common(mux, o, tol, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream echo;
  for (int i = 0; i < argc; ++i) echo << (i ? " " : "") << argv[i];
  o.command_line = echo.str();
  o.tolerance = tol;
  o.output = output;

  if (info->parsed()) return run_info(config_f, o, std::cout, std::cerr);
  if (check->parsed()) return run_check(kind, config_f, config_h, o, std::cout, std::cerr);
  if (dual->parsed()) return run_gabor_dual(config_f, o, std::cout, std::cerr);
  return run_multiplex(mode, config_f, *config_h, input, o, std::cout, std::cerr);
}
