#include <iostream>

#include <CLI11.hpp>

#include "bergman/cli.hpp"

int main(int argc, char** argv) {
  using namespace bergman::cli;
  CLI::App app{"Weighted Bergman kernels: evaluation, oracles, zero search"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::uint64_t seed = 42;
  bool svg = false, dump = false;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"eval", "Evaluate the kernel at points"},
      {"formula", "Print the kernel formula"},
      {"verify", "Quadrature check of the reproducing property"},
      {"oracle-compare", "Compare against the Gram-matrix kernel"},
      {"zeros", "Scan kernel slices for certified zeros"},
      {"ratio", "Normalized kernel ratio along centers approaching the boundary"},
      {"track", "Track a slice zero under augmentation at boundary-bound centers"},
      {"hartogs", "Certify the Hartogs lift as not Lu Qi-keng"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Directory for CSV/JSON/SVG outputs");
    sub->add_option("--seed", seed, "Seed for random pair sampling")->capture_default_str();
    sub->add_flag("--svg", svg, "Also write an SVG heatmap (zeros)");
    sub->add_flag("--dump-config", dump, "Print the validated canonical config and exit");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  const auto* sub = app.get_subcommands().front();
  RunOptions opts;
  if (!out_dir.empty()) opts.out_dir = out_dir;
  opts.svg = svg;
  const std::optional<std::uint64_t> seed_override =
      sub->count("--seed") ? std::optional(seed) : std::nullopt;
  return run_file(config, parse_command(sub->get_name()), opts, seed_override, dump, std::cout,
                  std::cerr);
}
