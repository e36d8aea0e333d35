#include <CLI11.hpp>
#include <fmt/color.h>
#include <fmt/format.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <iostream>

#include "gevrey_bbm/evolution.h"
#include "internal.h"

namespace gevrey_bbm::cli {
namespace {

bool use_color(const std::ostream& err) {
  if (&err != &std::cerr) return false;
  const char* no_color = std::getenv("NO_COLOR");
  if (no_color != nullptr && no_color[0] != '\0') return false;
  return isatty(STDERR_FILENO) != 0;
}

void report_error(std::ostream& err, const std::string& message) {
  if (use_color(err)) {
    err << fmt::format(fmt::fg(fmt::terminal_color::red) | fmt::emphasis::bold, "error:") << " "
        << message << "\n";
  } else {
    err << "error: " << message << "\n";
  }
}

// Diagnostic report for failures after the configuration resolved.
void write_error_report(const RunConfig& cfg, const Error& e) {
  try {
    Json doc = report_header(cfg);
    doc["error"] = {{"kind", std::string(to_string(e.kind()))},
                    {"message", e.what()},
                    {"exit_code", exit_code_for(e.kind())}};
    if (const auto* b = dynamic_cast<const BlowupError*>(&e)) doc["error"]["time"] = b->time();
    std::string name = cfg.command;
    std::replace(name.begin(), name.end(), '-', '_');
    write_json(output_dir(cfg.values) / (name + "_error.json"), doc);
  } catch (const std::exception&) {
    // The original error is what gets reported.
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput:
      return kExitConfig;
    case ErrorKind::kSymmetryViolation:
    case ErrorKind::kOverflowRisk:
    case ErrorKind::kBlowupDetected:
    case ErrorKind::kNoConvergence:
    case ErrorKind::kSeriesDivergence:
      return kExitSimulation;
    case ErrorKind::kIdentityViolation:
      return kExitIdentity;
    case ErrorKind::kInsufficientData:
    case ErrorKind::kSpectrumTooThin:
    case ErrorKind::kNoFit:
      return kExitData;
    case ErrorKind::kCrossCheckFailure:
      return kExitCrossCheck;
  }
  return kExitSimulation;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    if (cfg.command == "verify-identities") return cmd_verify_identities(cfg, out);
    if (cfg.command == "conservation") return cmd_conservation(cfg, out);
    if (cfg.command == "radius") return cmd_radius(cfg, out);
    if (cfg.command == "schedule") return cmd_schedule(cfg, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, out);
    report_error(err, "unknown command '" + cfg.command + "'");
    return kExitConfig;
  } catch (const Error& e) {
    report_error(err, e.what());
    if (e.kind() != ErrorKind::kInvalidInput) write_error_report(cfg, e);
    return exit_code_for(e.kind());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gevrey-regularity experiments for the (fractional) BBM equation", "gevrey-bbm"};
  app.require_subcommand(1);
  std::string config_path;
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->allow_extras();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const CLI::App* sub = app.get_subcommands().front();
  std::vector<std::pair<std::string, std::string>> overrides;
  const std::vector<std::string> extras = sub->remaining();
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& a = extras[i];
    if (a.rfind("--", 0) != 0 || a.size() <= 2) {
      report_error(err, "unexpected argument '" + a + "'");
      return kExitConfig;
    }
    const auto eq = a.find('=');
    if (eq != std::string::npos) {
      overrides.emplace_back(a.substr(2, eq - 2), a.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      overrides.emplace_back(a.substr(2), extras[++i]);
    } else {
      report_error(err, "option '" + a + "' needs a value");
      return kExitConfig;
    }
  }

  RunConfig cfg;
  try {
    cfg = resolve_config(sub->get_name(), config_path, overrides);
  } catch (const Error& e) {
    report_error(err, e.what());
    return kExitConfig;
  }
  return run_command(cfg, out, err);
}

}  // namespace gevrey_bbm::cli
