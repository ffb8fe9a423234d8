#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "stefan/commands.hpp"
#include "stefan/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw stefan::ValidationError("cannot read config file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "stefan-exact: similarity solutions of the two-phase melting problem "
      "with position-dependent latent heat and a convective boundary"};
  app.require_subcommand(1);

  struct SubOpts {
    std::string config;
    std::string output;
    std::string format;
  };
  SubOpts opts;
  for (const char* name : {"solve", "verify", "sweep", "limit"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config, "JSON run configuration")
        ->required();
    sub->add_option("--output", opts.output, "data output path");
    sub->add_option("--format", opts.format, "csv or json");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    std::string command = app.get_subcommands().front()->get_name();
    auto cfg = stefan::cli::parse_config(read_file(opts.config), command);
    if (!opts.output.empty()) cfg.output_path = opts.output;
    if (!opts.format.empty()) {
      if (opts.format != "csv" && opts.format != "json")
        throw stefan::ValidationError("--format must be csv or json");
      cfg.format = opts.format;
    }
    return stefan::cli::run_command(cfg, std::cout);
  } catch (const stefan::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const stefan::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
