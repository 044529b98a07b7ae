#include "lpverify_app/app.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "lpverify/connection.hpp"
#include "lpverify/curvature.hpp"
#include "lpverify/structure.hpp"
#include "lpverify/submanifold.hpp"

#ifndef LPVERIFY_VERSION
#define LPVERIFY_VERSION "unknown"
#endif

namespace lpv::app {
namespace {

constexpr double kDefaultTol = 1e-9;
constexpr double kChainTol = 1e-8;
constexpr std::size_t kMinSamples = 8;

IdentityReport run_suite(const std::string& id, const Manifest& m, ConnectionParams c, std::uint64_t seed,
                         std::size_t count, std::optional<double> tol) {
  const StructurePtr& st = m.structure;
  const double t = tol.value_or(kDefaultTol);
  IdentityReport r;
  if (id == "axioms") r = verify_lp_axioms(st, seed, count, t);
  else if (id == "lc_curvature") r = verify_lc_curvature_identities(st, Connection::levi_civita(st), seed, count, t);
  else if (id == "connection") r = connection_residuals(st, c, seed, count, t);
  else if (id == "torsion") r = torsion_residuals(st, c, seed, count, t);
  else if (id == "proposition") r = proposition_residuals(st, c, seed, count, t);
  else if (id == "curvature") r = curvature_residuals(st, c, seed, count, t);
  else if (id == "lemma3") r = lemma3_residuals(st, c, seed, count, t);
  else if (id == "ricci") r = ricci_residuals(st, c, seed, count, t);
  else if (id == "lemma5") r = lemma5_residuals(st, c, seed, count, t);
  else if (id == "semisymmetry") r = semisymmetry_residuals(st, c, seed, count, t);
  else if (id == "theorem44") r = theorem44_verify(st, c, seed, count, t, tol.value_or(kChainTol));
  else if (id == "cr_structure") r = cr_structure_residuals(m.submanifold, seed, count, t);
  else if (id == "gauss_weingarten") r = generalized_gauss_weingarten_residuals(m.submanifold, c, seed, count, t);
  else if (id == "integrability") r = integrability_tests(m.submanifold, c, seed, count, t);
  else if (id == "lemma54") r = lemma54_and_prop59_residuals(m.submanifold, c, seed, count, t);
  else throw UsageError("unknown suite '" + id + "'");
  r.suite = id;
  r.seed = seed;
  r.alpha = c.alpha;
  r.beta = c.beta;
  return r;
}

}  // namespace

const char* version() noexcept { return LPVERIFY_VERSION; }

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> ids{
      "axioms", "lc_curvature", "connection", "torsion",      "proposition",      "curvature",     "lemma3", "ricci",
      "lemma5", "semisymmetry", "theorem44",  "cr_structure", "gauss_weingarten", "integrability", "lemma54"};
  return ids;
}

bool is_submanifold_suite(std::string_view id) {
  return id == "cr_structure" || id == "gauss_weingarten" || id == "integrability" || id == "lemma54";
}

const std::vector<GridPoint>& default_grid() {
  static const std::vector<GridPoint> g{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.7, -1.3}};
  return g;
}

std::vector<GridPoint> grid_of(const SuiteConfig& config) {
  if (config.alpha_values.empty() && config.beta_values.empty()) return default_grid();
  const std::vector<double> as = config.alpha_values.empty() ? std::vector<double>{0.0} : config.alpha_values;
  const std::vector<double> bs = config.beta_values.empty() ? std::vector<double>{0.0} : config.beta_values;
  std::vector<GridPoint> out;
  for (double a : as)
    for (double b : bs) out.push_back({a, b});
  return out;
}

Manifest resolve_manifest(const std::string& id_or_path) {
  if (id_or_path == "example3") {
    Manifest m;
    m.structure = build_example3();
    m.spec = m.structure->spec_ptr();
    return m;
  }
  if (id_or_path == "example3-leaf") {
    Manifest m;
    m.submanifold = build_example3_leaf();
    m.structure = m.submanifold->ambient_ptr();
    m.spec = m.structure->spec_ptr();
    return m;
  }
  return load_manifest(id_or_path);
}

std::vector<std::string> resolve_suites(const SuiteConfig& config, const Manifest& manifest) {
  if (config.sample_count < kMinSamples)
    throw UsageError("--samples must be at least " + std::to_string(kMinSamples));
  if (!manifest.structure) throw UsageError("manifest has no [structure] section; nothing to verify");
  const auto& known = known_suites();
  for (const auto& id : config.suites)
    if (std::find(known.begin(), known.end(), id) == known.end()) throw UsageError("unknown suite '" + id + "'");
  for (const auto& [id, v] : config.tolerance_overrides) {
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw UsageError("--tol names unknown suite '" + id + "'");
    if (!(v > 0.0)) throw UsageError("--tol for '" + id + "' must be positive");
  }

  std::vector<std::string> out;
  for (const auto& id : known) {
    const bool wanted = config.suites.empty()
                            ? (!is_submanifold_suite(id) || manifest.submanifold)
                            : std::find(config.suites.begin(), config.suites.end(), id) != config.suites.end();
    if (!wanted) continue;
    if (is_submanifold_suite(id) && !manifest.submanifold)
      throw UsageError("suite '" + id + "' needs a manifest with a [submanifold] section");
    out.push_back(id);
  }
  return out;
}

Report run(const SuiteConfig& config, const Manifest& manifest) {
  Report rep;
  rep.tool_version = version();
  rep.config = config;
  rep.suites = resolve_suites(config, manifest);
  const std::vector<GridPoint> grid = grid_of(config);

  const std::size_t per_point = rep.suites.size();
  const std::size_t total = grid.size() * per_point;
  std::vector<IdentityReport> results(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const GridPoint& gp = grid[k / per_point];
      const std::string& id = rep.suites[k % per_point];
      std::optional<double> tol;
      if (auto it = config.tolerance_overrides.find(id); it != config.tolerance_overrides.end()) tol = it->second;
      try {
        results[k] = run_suite(id, manifest, {gp.alpha, gp.beta}, config.seed, config.sample_count, tol);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // ordered merge: grid order, then canonical suite order
  for (std::size_t g = 0; g < grid.size(); ++g) {
    GridResult gr;
    gr.point = grid[g];
    for (std::size_t s = 0; s < per_point; ++s) gr.reports.push_back(std::move(results[g * per_point + s]));
    rep.grid.push_back(std::move(gr));
  }

  for (const auto& gr : rep.grid)
    for (const auto& r : gr.reports) {
      for (const auto& f : r.flags) rep.flags.push_back(f);
      for (const auto& e : r.entries) {
        for (const auto& f : e.flags) rep.flags.push_back(f);
        if (e.informational) {
          ++rep.summary.informational;
          continue;
        }
        switch (e.status) {
          case Status::Pass: ++rep.summary.pass; break;
          case Status::Fail: ++rep.summary.fail; break;
          case Status::Vacuous: ++rep.summary.vacuous; break;
          case Status::NotApplicable: ++rep.summary.not_applicable; break;
        }
      }
    }
  std::sort(rep.flags.begin(), rep.flags.end());
  rep.flags.erase(std::unique(rep.flags.begin(), rep.flags.end()), rep.flags.end());
  return rep;
}

Report run(const SuiteConfig& config) { return run(config, resolve_manifest(config.manifest)); }

}  // namespace lpv::app
