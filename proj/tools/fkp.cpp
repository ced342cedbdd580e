// fkp: classify and compare Kronecker products of Fourier matrices.
//
// Exit codes: 0 success, 1 inequivalent pair, 2 usage or parse problem,
// 3 capacity exceeded.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fkp/cli.hpp"

namespace {

int emit(const fkp::cli::CommandResult& result, bool json) {
  if (json) {
    std::cout << result.payload.dump(2) << "\n";
    return result.exit_code();
  }
  const bool is_error = result.status == fkp::cli::Status::usage ||
                        result.status == fkp::cli::Status::capacity;
  (is_error ? std::cerr : std::cout) << result.text;
  return result.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact classifier for Kronecker products of Fourier matrices"};
  app.require_subcommand(1);

  bool json = false;
  fkp::cli::Options options;
  app.add_flag("--json", json, "Emit machine readable JSON on stdout");
  app.add_option("--max-n", options.max_n, "Largest matrix size built in memory")
      ->capture_default_str();
  app.add_option("--oracle-cap", options.oracle_cap,
                 "Largest size the exhaustive search accepts")
      ->capture_default_str();

  std::string spec_a;
  std::string spec_b;
  std::string mode = "p";
  bool check_oracle = false;
  bool no_verify = false;
  bool members = false;
  std::uint64_t class_n = 0;

  CLI::App* canon = app.add_subcommand("canon", "Print the canonical form of a product");
  canon->add_option("spec", spec_a, "Product, e.g. F6*F10")->required();

  CLI::App* equiv = app.add_subcommand("equiv", "Decide equivalence of two products");
  equiv->add_option("lhs", spec_a, "Left product")->required();
  equiv->add_option("rhs", spec_b, "Right product")->required();
  equiv->add_option("--mode", mode, "p (permutations) or pd (permutations and phases)")
      ->check(CLI::IsMember({"p", "pd"}))
      ->capture_default_str();

  CLI::App* census = app.add_subcommand("census", "Row census of a product");
  census->add_option("spec", spec_a, "Product, e.g. F8*F2")->required();
  census->add_flag("--oracle", check_oracle,
                   "Also count rows directly from the built matrix");

  CLI::App* witness = app.add_subcommand("witness", "Construct an explicit witness");
  witness->add_option("lhs", spec_a, "Left product")->required();
  witness->add_option("rhs", spec_b, "Right product")->required();
  witness->add_flag("--no-verify", no_verify, "Skip the exact verification step");

  CLI::App* classes = app.add_subcommand("classes", "Enumerate classes for a given size");
  classes->add_option("n", class_n, "Matrix size N")->required();
  classes->add_flag("--members", members, "List every member of each class");

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive search cross-check");
  oracle->add_option("lhs", spec_a, "Left product")->required();
  oracle->add_option("rhs", spec_b, "Right product")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (canon->parsed()) return emit(fkp::cli::cmd_canon(spec_a, options), json);
    if (equiv->parsed()) return emit(fkp::cli::cmd_equiv(spec_a, spec_b, mode, options), json);
    if (census->parsed())
      return emit(fkp::cli::cmd_census(spec_a, check_oracle, options), json);
    if (witness->parsed())
      return emit(fkp::cli::cmd_witness(spec_a, spec_b, !no_verify, options), json);
    if (classes->parsed()) return emit(fkp::cli::cmd_classes(class_n, members, options), json);
    if (oracle->parsed()) return emit(fkp::cli::cmd_oracle(spec_a, spec_b, options), json);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
