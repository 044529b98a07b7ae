#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lpverify/errors.hpp"
#include "lpverify_app/app.hpp"

namespace {

using lpv::app::OutputFormat;
using lpv::app::SuiteConfig;
using lpv::app::UsageError;

enum Exit { kPass = 0, kIdentityFailure = 1, kUsage = 2, kInternal = 3 };

struct Options {
  SuiteConfig config;
  std::string suites;
  std::string grid;
  std::vector<std::string> tolerances;
  std::string format;
  std::string out;
};

void add_run_options(CLI::App& cmd, Options& o) {
  cmd.add_option("manifest", o.config.manifest, "manifest path or builtin id (example3, example3-leaf)")->required();
  cmd.add_option("--suites", o.suites, "comma-separated suite ids (default: all applicable)");
  cmd.add_option("--alpha", o.config.alpha_values, "alpha value; repeatable")->take_all()->allow_extra_args(false);
  cmd.add_option("--beta", o.config.beta_values, "beta value; repeatable")->take_all()->allow_extra_args(false);
  cmd.add_option("--grid", o.grid, "named (alpha, beta) grid")->check(CLI::IsMember({"default"}));
  cmd.add_option("--seed", o.config.seed, "sampling seed");
  cmd.add_option("--samples", o.config.sample_count, "samples per identity (>= 8)");
  cmd.add_option("--tol", o.tolerances, "per-suite tolerance, suite=value; repeatable")->allow_extra_args(false);
  cmd.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd.add_option("--out", o.out, "write the report here instead of stdout");
  cmd.add_option("--jobs", o.config.jobs, "worker threads (output does not depend on it)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = std::min(s.find(',', start), s.size());
    std::string item = s.substr(start, comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
    start = comma + 1;
  }
  return out;
}

void finish_config(Options& o, OutputFormat default_format) {
  o.config.suites = split_list(o.suites);
  if (!o.suites.empty() && o.config.suites.empty()) throw UsageError("--suites is empty");
  if (!o.grid.empty() && (!o.config.alpha_values.empty() || !o.config.beta_values.empty()))
    throw UsageError("--grid cannot be combined with --alpha/--beta");
  for (const auto& t : o.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects suite=value, got '" + t + "'");
    const std::string value = t.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') throw UsageError("--tol value is not a number: '" + value + "'");
    o.config.tolerance_overrides[t.substr(0, eq)] = v;
  }
  o.config.output_format =
      o.format.empty() ? default_format : (o.format == "json" ? OutputFormat::Json : OutputFormat::Text);
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

// Usage and manifest problems exit 2; anything thrown after the suites start
// is an internal evaluation failure.
int run_command(Options& o, OutputFormat default_format, bool gate_on_result) {
  lpv::Manifest manifest;
  try {
    finish_config(o, default_format);
    manifest = lpv::app::resolve_manifest(o.config.manifest);
    lpv::app::resolve_suites(o.config, manifest);
  } catch (const lpv::Error& e) {
    std::cerr << "lpverify: " << e.what() << "\n";
    return kUsage;
  }
  lpv::app::Report report;
  try {
    report = lpv::app::run(o.config, manifest);
  } catch (const std::exception& e) {
    std::cerr << "lpverify: internal error: " << e.what() << "\n";
    return kInternal;
  }
  try {
    write_output(lpv::app::emit(report, o.config.output_format), o.out);
  } catch (const lpv::Error& e) {
    std::cerr << "lpverify: " << e.what() << "\n";
    return kUsage;
  }
  if (!gate_on_result) return kPass;
  return report.passed() ? kPass : kIdentityFailure;
}

int check_manifest(const std::string& path) {
  try {
    const lpv::Manifest m = lpv::app::resolve_manifest(path);
    std::cout << path << ": ok, dimension " << m.spec->dimension();
    std::cout << (m.structure ? ", structure" : ", no structure");
    if (m.submanifold) std::cout << ", submanifold of dimension " << m.submanifold->dimension();
    std::cout << "\n";
    return kPass;
  } catch (const lpv::Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of LP-Sasakian identities"};
  app.set_version_flag("--version", std::string(lpv::app::version()));
  app.require_subcommand(1);

  Options verify_opts;
  CLI::App* verify = app.add_subcommand("verify", "run identity suites; exit 1 if any gating entry fails");
  add_run_options(*verify, verify_opts);

  Options report_opts;
  CLI::App* report = app.add_subcommand("report", "run identity suites and emit a report (JSON by default)");
  add_run_options(*report, report_opts);

  std::string manifest_path;
  CLI::App* manifest = app.add_subcommand("manifest", "manifest utilities");
  manifest->require_subcommand(1);
  CLI::App* check = manifest->add_subcommand("check", "parse and validate a manifest");
  check->add_option("path", manifest_path, "manifest path or builtin id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify) return run_command(verify_opts, OutputFormat::Text, true);
    if (*report) return run_command(report_opts, OutputFormat::Json, false);
    if (*check) return check_manifest(manifest_path);
  } catch (const std::exception& e) {
    std::cerr << "lpverify: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
