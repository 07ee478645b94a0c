// Command-line front end: conic-bundles <command> [options].

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "conic/cli.hpp"

int main(int argc, char** argv) {
  using namespace conic::cli;

  CLI::App app{"Conic bundles on rational elliptic surfaces"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string format, output;
  auto common = [&](CLI::App* sub, bool needs_model) {
    if (needs_model) sub->add_option("model", rc.input, "model file (JSON)")->required();
    sub->add_option("--format", format, "json, dot or text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--output", output, "write to this file instead of stdout");
  };

  auto* validate = app.add_subcommand("validate", "check a model and its fiber configuration");
  common(validate, true);
  validate->add_flag("--strict", rc.strict, "treat warnings as failures");

  auto* admits = app.add_subcommand("admits", "fiber types allowed by the configuration");
  common(admits, true);

  auto* bundles = app.add_subcommand("bundles", "enumerate conic classes and their singular fibers");
  common(bundles, true);
  bundles->add_option("--bound", rc.bound, "largest degree searched")->check(CLI::NonNegativeNumber);

  auto* classify = app.add_subcommand("classify", "classify an explicit fiber");
  common(classify, true);
  classify->add_option("--fiber", rc.fiber, "support as [[label, multiplicity], ...]")->required();

  auto* corpus = app.add_subcommand("corpus", "run the bundled examples");
  common(corpus, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  rc.command = app.get_subcommands().front()->get_name();
  CommandResult result;
  try {
    if (!format.empty()) rc.format = parse_format(format);
    result = run(rc);
  } catch (const conic::Error& e) {
    result = {exit_code_for(e), dump(conic::error_json(e))};
  }

  if (output.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << result.output;
    if (!out) {
      std::cout << dump(conic::error_json(conic::Error(conic::ErrorCode::Io, "cannot write '" + output + "'")));
      return 2;
    }
  }
  return result.exit_code;
}
