#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "run.hpp"
#include "run_config.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "principal eigenvalues of -diffusion*Lap_p + V with certified bounds"};
  std::string config_path, out_override;
  long long seed_override = -1;
  app.add_option("--config", config_path, "run configuration file")
      ->required();
  app.add_option("--out", out_override, "output directory (overrides out_dir)");
  app.add_option("--seed", seed_override, "RNG seed (overrides config/seed)")
      ->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "config error: cannot open '" << config_path << "'\n";
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();

  try {
    plap::cli::RunConfig rc = plap::cli::parse_config(text.str());
    if (!out_override.empty()) rc.out_dir = out_override;
    if (seed_override >= 0)
      rc.solver.rng_seed = static_cast<std::uint64_t>(seed_override);
    return plap::cli::run(rc, std::cout);
  } catch (const plap::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 3;
  }
}
