#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lovespec/kernels.hpp"
#include "lovespec/pipeline.hpp"

namespace ls = lovespec;

int main(int argc, char** argv) {
  CLI::App app{"Spectral inversion for Love waves"};
  app.require_subcommand(1, 1);
  std::string config;
  std::string out;
  for (const auto* name : {"forward", "spectrum", "reconstruct", "roundtrip"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON job configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides the config)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  const std::string mode = app.get_subcommands().front()->get_name();
  try {
    const int threads = ls::kernels::apply_thread_environment();
    auto cfg = ls::pipeline::JobConfig::load(config);
    const auto requested = ls::pipeline::parse_mode(mode);
    if (cfg.mode_from_file && cfg.mode != requested) {
      throw ls::Error(ls::ErrorKind::configuration,
                      std::string("config is for mode '") + ls::pipeline::mode_name(cfg.mode) + "'");
    }
    cfg.mode = requested;
    if (!out.empty()) cfg.out = out;
    std::clog << "lovespec: " << mode << " with " << threads << " thread(s)\n";
    const auto rep = ls::pipeline::run(cfg);
    for (const auto& p : rep.written) std::cout << p.string() << "\n";
    std::cout << rep.summary << "\n";
    return rep.passed ? 0 : 2;
  } catch (const ls::Error& e) {
    std::cerr << "lovespec: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "lovespec: " << e.what() << "\n";
    return 1;
  }
}
