#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "fraclab/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fraclab: fractional p-Laplacian boundary behavior laboratory"};
  std::string subcommand, config, outdir = ".";
  uint64_t seed = 0;
  int threads = 0;

  app.add_option("subcommand", subcommand,
                 "torsion | dirichlet | eigen | capacity | wiener | hopf | harnack | "
                 "isolation | selftest")
      ->required();
  app.add_option("-c,--config", config, "JSON run configuration");
  app.add_option("-o,--outdir", outdir, "directory for report files");
  auto* seed_opt = app.add_option("--seed", seed, "override the config seed");
  app.add_option("--threads", threads, "worker thread count (0 = runtime default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::optional<uint64_t> seed_override;
  if (seed_opt->count() > 0) seed_override = seed;
  return fraclab::run_subcommand(subcommand, config, outdir, seed_override, threads,
                                 std::cerr);
}
