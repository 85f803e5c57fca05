#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "atp/cli.hpp"

namespace {

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

int emit(const atp::cli::CommandResult& r) {
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact calculus for theta-almost twisted Poisson structures"};
  app.require_subcommand(1);

  std::string file, kind = "twisted", lhs, rhs, expr, name, output_dir;
  bool json = false;
  std::size_t max_level = 2, degree = 3, slack = 1;

  auto* verify = app.add_subcommand("verify", "Check the four axioms of a spec file");
  verify->add_option("file", file, "Spec file")->required();

  auto* bracket = app.add_subcommand("bracket", "Evaluate a bracket of two expressions");
  bracket->add_option("file", file, "Spec file")->required();
  bracket->add_option("lhs", lhs, "First operand")->required();
  bracket->add_option("rhs", rhs, "Second operand")->required();
  bracket->add_option("--kind", kind, "schouten | koszul | twisted | lie | hamiltonian")
      ->check(CLI::IsMember({"schouten", "koszul", "twisted", "lie", "hamiltonian"}));
  bracket->add_flag("--json", json, "Structured output");

  auto* diff = app.add_subcommand("differential", "Apply the coboundary operator to a multivector");
  diff->add_option("file", file, "Spec file")->required();
  diff->add_option("expr", expr, "Multivector expression")->required();
  diff->add_flag("--json", json, "Structured output");

  auto* coh = app.add_subcommand("cohomology", "Truncated cohomology with polynomial coefficients");
  coh->add_option("file", file, "Spec file")->required();
  coh->add_option("--max-level", max_level, "Highest level reported");
  coh->add_option("--degree", degree, "Coefficient degree bound");
  coh->add_option("--slack", slack, "Extra degree allowed for coboundary primitives");
  coh->add_flag("--json", json, "Structured output");

  auto* examples = app.add_subcommand("examples", "List the gallery or print one spec file");
  examples->add_option("name", name, "Gallery entry");
  examples->add_option("--output-dir", output_dir, "Write every entry as <name>.atps into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : atp::cli::input_error;
  }

  if (*examples) {
    if (output_dir.empty()) return emit(atp::cli::cmd_examples(name));
    std::filesystem::create_directories(output_dir);
    for (const auto& entry : atp::gallery()) {
      auto r = atp::cli::cmd_examples(entry.name);
      if (r.exit_code != 0) return emit(r);
      std::ofstream(std::filesystem::path(output_dir) / (entry.name + ".atps"), std::ios::binary) << r.out;
    }
    return 0;
  }

  std::string text;
  if (!read_file(file, text)) {
    std::cerr << "error: cannot read '" << file << "'\n";
    return atp::cli::input_error;
  }
  if (*verify) return emit(atp::cli::cmd_verify(text));
  if (*bracket) return emit(atp::cli::cmd_bracket(text, kind, lhs, rhs, json));
  if (*diff) return emit(atp::cli::cmd_differential(text, expr, json));
  return emit(atp::cli::cmd_cohomology(text, max_level, degree, json, slack));
}
