#include <iostream>

#include "CLI11.hpp"

#include "artifact/error.hpp"
#include "artifact/manifest.hpp"
#include "cli_util.hpp"

namespace artifact::cli {

void register_cmd_filter(CLI::App&, const GlobalOptions&);
void register_cmd_variant(CLI::App&, const GlobalOptions&);
void register_cmd_align(CLI::App&, const GlobalOptions&);
void register_cmd_map_spans(CLI::App&, const GlobalOptions&);
void register_cmd_stats(CLI::App&, const GlobalOptions&);
void register_cmd_calibrate(CLI::App&, const GlobalOptions&);
void register_cmd_eval(CLI::App&, const GlobalOptions&);
void register_cmd_report(CLI::App&, const GlobalOptions&);

}  // namespace artifact::cli

int main(int argc, char** argv) {
  using namespace artifact;
  CLI::App app{"artifact: translation-artifact tooling for cross-lingual datasets"};
  app.set_version_flag("--version", kToolkitVersion);
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value configuration file; flags take precedence");

  cli::GlobalOptions global;
  app.add_option("--workers", global.workers,
                 "Worker threads for parallel sections (0 = available parallelism)")
      ->capture_default_str();

  cli::register_cmd_filter(app, global);
  cli::register_cmd_variant(app, global);
  cli::register_cmd_align(app, global);
  cli::register_cmd_map_spans(app, global);
  cli::register_cmd_stats(app, global);
  cli::register_cmd_calibrate(app, global);
  cli::register_cmd_eval(app, global);
  cli::register_cmd_report(app, global);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version land here with success codes.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BackendError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
