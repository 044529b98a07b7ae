#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <string>

#include "lpverify_app/app.hpp"

namespace lpv::app {
namespace {

using Json = nlohmann::ordered_json;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json entry_json(const IdentityEntry& e) {
  Json j;
  j["id"] = e.id;
  j["status"] = std::string(to_string(e.status));
  j["max_residual"] = number(e.max_residual);
  j["tolerance"] = number(e.tolerance);
  j["samples"] = e.samples_used;
  j["informational"] = e.informational;
  j["flags"] = e.flags;
  j["note"] = e.note;
  return j;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string emit_json(const Report& report) {
  Json root;
  root["schema"] = 1;
  root["tool"] = "lpverify";
  root["tool_version"] = report.tool_version;

  Json cfg;
  cfg["manifest"] = report.config.manifest;
  cfg["suites"] = report.suites;
  Json grid = Json::array();
  for (const auto& g : report.grid) grid.push_back(Json::array({number(g.point.alpha), number(g.point.beta)}));
  cfg["grid"] = grid;
  cfg["seed"] = report.config.seed;
  cfg["samples"] = report.config.sample_count;
  Json tol = Json::object();
  for (const auto& [k, v] : report.config.tolerance_overrides) tol[k] = number(v);
  cfg["tolerance_overrides"] = tol;
  root["config"] = cfg;

  Json results = Json::array();
  for (const auto& g : report.grid) {
    Json gj;
    gj["alpha"] = number(g.point.alpha);
    gj["beta"] = number(g.point.beta);
    Json suites = Json::array();
    for (const auto& r : g.reports) {
      Json rj;
      rj["suite"] = r.suite;
      rj["seed"] = r.seed;
      rj["passed"] = r.passed();
      rj["flags"] = r.flags;
      Json entries = Json::array();
      for (const auto& e : r.entries) entries.push_back(entry_json(e));
      rj["entries"] = entries;
      suites.push_back(rj);
    }
    gj["suites"] = suites;
    results.push_back(gj);
  }
  root["results"] = results;

  Json sum;
  sum["pass"] = report.summary.pass;
  sum["fail"] = report.summary.fail;
  sum["vacuous"] = report.summary.vacuous;
  sum["not_applicable"] = report.summary.not_applicable;
  sum["informational"] = report.summary.informational;
  root["summary"] = sum;
  root["flags"] = report.flags;
  root["passed"] = report.passed();
  return root.dump(2) + "\n";
}

std::string emit_text(const Report& report) {
  std::string out;
  out += "lpverify " + report.tool_version + "  manifest " + report.config.manifest + "  seed " +
         std::to_string(report.config.seed) + "  samples " + std::to_string(report.config.sample_count) + "\n";
  char line[256];
  for (const auto& g : report.grid) {
    out += "\nalpha = " + fmt("%g", g.point.alpha) + ", beta = " + fmt("%g", g.point.beta) + "\n";
    std::snprintf(line, sizeof line, "  %-17s %-28s %12s %9s  %s\n", "suite", "identity", "max residual", "tol",
                  "status");
    out += line;
    for (const auto& r : g.reports)
      for (const auto& e : r.entries) {
        std::string status(to_string(e.status));
        if (e.informational) status += " (info)";
        std::snprintf(line, sizeof line, "  %-17s %-28s %12.3e %9.0e  %s", r.suite.c_str(), e.id.c_str(),
                      e.max_residual, e.tolerance, status.c_str());
        out += line;
        if (!e.note.empty()) out += "  " + e.note;
        out += "\n";
      }
  }
  const Summary& s = report.summary;
  out += "\nsummary: " + std::to_string(s.pass) + " pass, " + std::to_string(s.fail) + " fail, " +
         std::to_string(s.vacuous) + " vacuous, " + std::to_string(s.not_applicable) + " n/a, " +
         std::to_string(s.informational) + " informational\n";
  if (!report.flags.empty()) {
    out += "flags:";
    for (const auto& f : report.flags) out += " " + f;
    out += "\n";
  }
  out += report.passed() ? "result: PASS\n" : "result: FAIL\n";
  return out;
}

std::string emit(const Report& report, OutputFormat format) {
  return format == OutputFormat::Json ? emit_json(report) : emit_text(report);
}

}  // namespace lpv::app
