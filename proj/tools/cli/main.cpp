// Exit codes: 0 success, 1 numerical failure, 2 bad flags or parameters.
#include <iostream>

#include "commands.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal_experiments/experiments.hpp"

namespace nonlocal::cli {
extern int g_exit_status;
}

int main(int argc, char** argv) {
  using namespace nonlocal::cli;
  Invocation inv;
  inv.argv.assign(argv, argv + argc);

  CLI::App app{"Spectral tools for nonlocal diffusion and wave operators", "nonlocal"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", nonlocal::experiments::version_string());
  app.require_subcommand(1);

  auto usage_of_selected = [&app]() {
    for (const CLI::App* sub : app.get_subcommands()) std::cerr << sub->help();
  };

  try {
    std::vector<std::string> args = expand_config(inv.argv, inv.config_text);
    register_commands(app, inv);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    usage_of_selected();
    return 2;
  } catch (const nonlocal::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nonlocal::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return g_exit_status;
}
