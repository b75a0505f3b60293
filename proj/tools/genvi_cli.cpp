// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0
//
// Command-line front end. Talks to the library through the C API only.

#include "genvi/genvi.h"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct Flags {
  bool certify = false;
  std::optional<double> resolution;
  std::optional<double> tol;
  bool quiet = false;
};

struct StringDeleter {
  void operator()(char* s) const { genvi_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

void print_error(genvi_status s) {
  std::cerr << "genvi: " << genvi_status_string(s) << ": " << genvi_last_error() << "\n";
}

genvi_run_options run_options(const Flags& flags) {
  genvi_run_options opts{};
  opts.certify = flags.certify ? 1 : 0;
  if (flags.resolution) {
    opts.has_resolution = 1;
    opts.resolution = *flags.resolution;
  }
  if (flags.tol) {
    opts.has_tol = 1;
    opts.tol = *flags.tol;
  }
  return opts;
}

// Prints the report and summary, frees it and returns its exit code.
int emit(genvi_status s, genvi_report* report, const Flags& flags) {
  if (s != GENVI_OK) {
    print_error(s);
    return 1;
  }
  char* json = nullptr;
  char* summary = nullptr;
  genvi_report_json(report, &json);
  genvi_report_summary(report, &summary);
  OwnedString j(json), sm(summary);
  std::cout << j.get() << "\n";
  if (!flags.quiet) std::cerr << sm.get() << "\n";
  const int code = genvi_report_exit_code(report);
  genvi_report_free(report);
  return code;
}

int run_problem(genvi_problem* problem, genvi_command cmd, const Flags& flags) {
  const genvi_run_options opts = run_options(flags);
  genvi_report* report = nullptr;
  const genvi_status s = genvi_run(problem, cmd, &opts, &report);
  genvi_problem_free(problem);
  return emit(s, report, flags);
}

// Invalid documents still produce a full report on stdout, with exit code 2.
int run_file(const std::string& path, genvi_command cmd, const Flags& flags) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "genvi: cannot open " << path << "\n";
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();
  const genvi_run_options opts = run_options(flags);
  genvi_report* report = nullptr;
  const genvi_status s = genvi_run_json(text.str().c_str(), cmd, &opts, &report);
  return emit(s, report, flags);
}

int run_demo(const std::string& name, const Flags& flags) {
  genvi_problem* problem = nullptr;
  genvi_status s = genvi_problem_from_demo(name.c_str(), &problem);
  if (s != GENVI_OK) {
    print_error(s);
    return 2;
  }
  return run_problem(problem, GENVI_CMD_AUTO, flags);
}

void add_run_flags(CLI::App* sub, Flags& flags) {
  sub->add_flag("--certify", flags.certify, "Attach the brute-force oracle section");
  sub->add_option("--resolution", flags.resolution, "Oracle grid resolution")
      ->check(CLI::PositiveNumber);
  sub->add_option("--tol", flags.tol, "Override gap, coincidence and complementarity tolerances")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--quiet", flags.quiet, "Suppress the stderr summary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers for general variational inequalities and coincidence points"};
  app.set_version_flag("--version", std::string(genvi_version()));
  app.require_subcommand(1);

  Flags flags;
  std::string file;
  std::string demo_name;
  int exit_code = 0;

  struct FileCommand {
    const char* name;
    const char* help;
    genvi_command cmd;
  };
  const FileCommand file_commands[] = {
      {"solve-vi", "Solve a Stampacchia VI", GENVI_CMD_SOLVE_VI},
      {"solve-gvi", "Solve a general VI (also complementarity)", GENVI_CMD_SOLVE_GVI},
      {"find-coincidence", "Find a coincidence point of f and g", GENVI_CMD_FIND_COINCIDENCE},
      {"find-fixed-point", "Find a fixed point of f", GENVI_CMD_FIND_FIXED_POINT},
      {"check", "Run hypothesis prechecks only", GENVI_CMD_CHECK},
      {"certify", "Run the brute-force oracle only", GENVI_CMD_CERTIFY},
  };
  for (const auto& fc : file_commands) {
    CLI::App* sub = app.add_subcommand(fc.name, fc.help);
    sub->add_option("file", file, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    add_run_flags(sub, flags);
    const genvi_command cmd = fc.cmd;
    sub->callback([&, cmd] { exit_code = run_file(file, cmd, flags); });
  }

  CLI::App* demo = app.add_subcommand("demo", "Run a catalog instance");
  demo->add_option("name", demo_name, "Demo name (see list-demos)")->required();
  add_run_flags(demo, flags);
  demo->callback([&] { exit_code = run_demo(demo_name, flags); });

  CLI::App* show = app.add_subcommand("show-demo", "Print a catalog instance as a problem file");
  show->add_option("name", demo_name, "Demo name")->required();
  show->callback([&] {
    genvi_problem* problem = nullptr;
    genvi_status s = genvi_problem_from_demo(demo_name.c_str(), &problem);
    if (s != GENVI_OK) {
      print_error(s);
      exit_code = 2;
      return;
    }
    char* json = nullptr;
    genvi_problem_json(problem, &json);
    OwnedString j(json);
    std::cout << j.get() << "\n";
    genvi_problem_free(problem);
  });

  CLI::App* list = app.add_subcommand("list-demos", "List catalog instances");
  list->callback([&] {
    char* json = nullptr;
    genvi_list_demos(&json);
    OwnedString j(json);
    std::cout << j.get() << "\n";
  });

  CLI::App* validate = app.add_subcommand("validate", "Schema and invariant diagnostics, no solve");
  validate->add_option("file", file, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
  validate->callback([&] {
    std::ifstream in(file);
    std::ostringstream ss;
    ss << in.rdbuf();
    char* diag = nullptr;
    genvi_status s = genvi_validate_json(ss.str().c_str(), &diag);
    if (s != GENVI_OK) {
      print_error(s);
      exit_code = 2;
      return;
    }
    OwnedString d(diag);
    std::cout << d.get() << "\n";
    exit_code = std::string(d.get()).find("\"valid\": true") != std::string::npos ? 0 : 2;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return exit_code;
}
