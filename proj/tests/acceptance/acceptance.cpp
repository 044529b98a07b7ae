// One line per acceptance criterion. Exits non-zero if any criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lpverify/connection.hpp"
#include "lpverify/curvature.hpp"
#include "lpverify/sampling.hpp"
#include "lpverify/structure.hpp"
#include "lpverify/submanifold.hpp"
#include "lpverify_app/app.hpp"

using namespace lpv;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<ConnectionParams> kGrid{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.7, -1.3}};
constexpr std::size_t kSamples = 64;
constexpr std::uint64_t kSeed = 1;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::VectorXd e3(std::size_t i) { return Eigen::VectorXd::Unit(3, i); }

const IdentityEntry* find(const IdentityReport& r, const char* id) { return r.find(id); }

double residual_of(const IdentityReport& r, const char* id) {
  const IdentityEntry* e = find(r, id);
  return e ? e->max_residual : NAN;
}

bool entry_passes(const IdentityReport& r, const char* id) {
  const IdentityEntry* e = find(r, id);
  return e && e->status == Status::Pass;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string at(ConnectionParams c) { return fmt("(%g,%g)", c.alpha, c.beta); }

int report(int n, const char* title, const Outcome& o, const std::string& info) {
  std::printf("criterion %d: %s  %s  [%s]", n, o.pass ? "PASS" : "FAIL", title, info.c_str());
  if (!o.pass) std::printf("  failing: %s", o.detail.c_str());
  std::printf("\n");
  return o.pass ? 0 : 1;
}

StructurePtr perturbed(double dphi, double dxi, double dg) {
  const auto base = build_example3();
  const ManifoldSpec& s = base->spec();
  std::vector<std::vector<Expr>> frame(3, std::vector<Expr>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < 3; ++a) frame[i][a] = s.frame_component(i, a);
  Eigen::MatrixXd g = s.metric();
  g(0, 2) += dg;
  g(2, 0) += dg;
  ManifoldSpec::Options opts;
  opts.claim = SignatureClaim::Lorentzian;
  auto spec = ManifoldSpec::create(s.coordinates(), frame, g, opts);
  auto c = [](double v) { return Expr::constant(v); };
  return LPStructure::create(spec, {{c(-1), c(0), c(0)}, {c(dphi), c(-1), c(0)}, {c(0), c(0), c(0)}},
                             {c(dxi), c(0), c(1)}, true);
}

std::size_t gating_failures(const IdentityReport& r) {
  std::size_t n = 0;
  for (const auto& e : r.entries)
    if (!e.informational && e.status == Status::Fail) ++n;
  return n;
}

int criterion1() {
  const auto t0 = Clock::now();
  const auto st = build_example3();
  // Printed tables: nabla_{nu_i} nu_j, and the (alpha, beta) table with
  // k = -1 - alpha + beta.
  auto lc_table = [](std::size_t i, std::size_t j) -> Eigen::VectorXd {
    static const std::array<std::array<std::array<double, 3>, 3>, 3> t{{
        {{{0, 0, -1}, {0, 0, 0}, {-1, 0, 0}}},
        {{{0, 0, 0}, {0, 0, -1}, {0, -1, 0}}},
        {{{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
    }};
    return Eigen::Vector3d(t[i][j][0], t[i][j][1], t[i][j][2]);
  };
  auto gen_table = [](std::size_t i, std::size_t j, ConnectionParams c) -> Eigen::VectorXd {
    const double k = -1 - c.alpha + c.beta;
    if (i == 0 && j == 0) return k * e3(2);
    if (i == 0 && j == 2) return k * e3(0);
    if (i == 1 && j == 1) return k * e3(2);
    if (i == 1 && j == 2) return k * e3(1);
    return Eigen::VectorXd::Zero(3);
  };
  Outcome o;
  double worst = 0;
  const auto points = sample_points(st->spec(), kSeed, 8);
  for (const Point& p : points) {
    const auto lc = Connection::levi_civita(st).at(p);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const double r = (lc.nabla(e3(i), e3(j)) - lc_table(i, j)).cwiseAbs().maxCoeff();
        worst = std::max(worst, r);
        o.require(r <= 1e-12, fmt("LC nabla_%g nu_%g", double(i + 1), double(j + 1)));
      }
    for (const auto c : kGrid) {
      const auto gc = Connection::generalized(st, c).at(p);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const double r = (gc.nabla(e3(i), e3(j)) - gen_table(i, j, c)).cwiseAbs().maxCoeff();
          worst = std::max(worst, r);
          o.require(r <= 1e-12, "generalized table at " + at(c));
        }
    }
  }
  const double t = seconds_since(t0);
  o.require(t < 1.0, fmt("runtime %.3fs", t));
  return report(1, "golden connection tables (9 Levi-Civita + 9 generalized x 5 grid points)", o,
                fmt("max residual %.2e, %.3fs", worst, t));
}

int criterion2() {
  Outcome o;
  const auto rep = verify_lp_axioms(build_example3(), kSeed, kSamples, 1e-9);
  double worst = 0;
  for (const auto& e : rep.entries) {
    if (e.status == Status::NotApplicable) continue;
    worst = std::max(worst, e.max_residual);
    o.require(e.status == Status::Pass, e.id);
  }
  const char* names[] = {"phi", "xi", "g"};
  std::string caught;
  for (int k = 0; k < 3; ++k) {
    const auto bad = perturbed(k == 0 ? 1e-3 : 0, k == 1 ? 1e-3 : 0, k == 2 ? 1e-3 : 0);
    const std::size_t f = gating_failures(verify_lp_axioms(bad, kSeed, kSamples, 1e-9));
    o.require(f >= 1, std::string("corruption of ") + names[k] + " undetected");
    caught += std::string(k ? ", " : "") + names[k] + ":" + std::to_string(f);
  }
  return report(2, "structure axioms and corruption detection", o,
                fmt("max residual %.2e; failures per corruption ", worst) + caught);
}

int criterion3() {
  Outcome o;
  const double values[] = {-1.3, -0.5, 0.0, 0.7, 1.0};
  double worst = 0;
  const auto st = build_example3();
  for (double a : values)
    for (double b : values) {
      const auto rep = torsion_residuals(st, {a, b}, kSeed, kSamples, 1e-9);
      for (const char* id : {"torsion_model", "tprime_duality", "h_half_sum"}) {
        worst = std::max(worst, residual_of(rep, id));
        o.require(entry_passes(rep, id), std::string(id) + " at " + at({a, b}));
      }
      const auto con = connection_residuals(st, {a, b}, kSeed, kSamples, 1e-9);
      worst = std::max(worst, residual_of(con, "difference_h"));
      o.require(entry_passes(con, "difference_h"), "difference_h at " + at({a, b}));
    }
  return report(3, "torsion model, T' duality and H over a 5x5 grid", o, fmt("max residual %.2e", worst));
}

int criterion4() {
  Outcome o;
  double worst = 0;
  for (const auto c : kGrid) {
    const double r = metric_compatibility_residual(Connection::generalized(build_example3(), c), kSeed, kSamples);
    worst = std::max(worst, r);
    o.require(r <= 1e-9, "metricity at " + at(c));
  }
  return report(4, "metric compatibility of the (alpha, beta) connection", o, fmt("max residual %.2e", worst));
}

int criterion5() {
  Outcome o;
  double printed = 0, corrected = 0, lemma = 0;
  const auto st = build_example3();
  for (const auto c : kGrid) {
    const auto cur = curvature_residuals(st, c, kSeed, kSamples, 1e-9);
    printed = std::max(printed, residual_of(cur, "closed_form"));
    corrected = std::max(corrected, residual_of(cur, "closed_form_eta_terms"));
    o.require(entry_passes(cur, "closed_form"), "closed form at " + at(c));
    const auto l3 = lemma3_residuals(st, c, kSeed, kSamples, 1e-9);
    for (const char* id : {"r_bar_uv_xi", "r_bar_xi_v_w", "r_bar_xi_v_xi"}) {
      lemma = std::max(lemma, residual_of(l3, id));
      o.require(entry_passes(l3, id), std::string(id) + " at " + at(c));
    }
  }
  return report(5, "curvature closed form and its three xi-contractions", o,
                fmt("stated form max residual %.2e, with eta terms %.2e; contractions %.2e", printed, corrected,
                    lemma));
}

int criterion6() {
  Outcome o;
  const auto st = build_example3();
  double closed = 0, sym = 0, lem = 0;
  for (const auto c : kGrid) {
    const auto ric = ricci_residuals(st, c, kSeed, kSamples, 1e-9);
    sym = std::max(sym, residual_of(ric, "symmetry"));
    closed = std::max(closed, residual_of(ric, "closed_form"));
    o.require(entry_passes(ric, "symmetry"), "symmetry at " + at(c));
    o.require(entry_passes(ric, "closed_form"), "closed form at " + at(c));
    const auto l5 = lemma5_residuals(st, c, kSeed, kSamples, 1e-9);
    for (const char* id : {"s_bar_v_xi", "s_bar_phi_phi"}) {
      lem = std::max(lem, residual_of(l5, id));
      o.require(entry_passes(l5, id), std::string(id) + " at " + at(c));
    }
  }
  const Point p{{1, 0, 0}};
  const RicciData lc = ricci(Connection::levi_civita(st), p);
  const RicciData semi = ricci(Connection::generalized(st, {1, 0}), p);
  const double g11 = lc(e3(0), e3(0)), g33 = lc(e3(2), e3(2)), s33 = semi(e3(2), e3(2));
  o.require(std::abs(g11 - 2) <= 1e-12, "S(nu1,nu1)");
  o.require(std::abs(g33 + 2) <= 1e-12, "S(nu3,nu3)");
  o.require(std::abs(lc.trace_phi + 2) <= 1e-12, "trace Phi");
  o.require(std::abs(s33 + 4) <= 1e-12, "S-bar(nu3,nu3) at (1,0)");
  return report(6, "Ricci contraction, closed form, xi/phi forms, symmetry and golden values", o,
                fmt("closed form %.2e, xi/phi forms %.2e, symmetry %.2e; ", closed, lem, sym) +
                    fmt("S11=%g S33=%g ", g11, g33) + fmt("trPhi=%g S-bar33=%g", lc.trace_phi, s33));
}

int criterion7() {
  Outcome o;
  const auto st = build_example3();
  std::string holds_at;
  for (const auto c : kGrid) {
    const auto rep = theorem44_verify(st, c, kSeed, kSamples, 1e-9, 1e-8);
    const bool et = entry_passes(rep, "et_hypothesis");
    if (c.alpha == 0 && c.beta == 0) o.require(et, "not semi-symmetric at (0,0)");
    if (!et) continue;
    holds_at += at(c);
    for (const char* id : {"ricc", "etkkk", "soni"}) {
      const IdentityEntry* e = find(rep, id);
      o.require(e && e->status != Status::Fail, std::string(id) + " at " + at(c));
    }
    if (c.alpha == 1 && c.beta == 0) {
      const IdentityEntry* e = find(rep, "soniii");
      const bool flagged = e && e->status == Status::Vacuous && !e->flags.empty() &&
                           e->flags.front() == "degenerate_zero_multiplier";
      o.require(flagged, "(1,0) branch not flagged degenerate");
    }
  }
  // eta-Einstein fit at (0,0) from the Ricci tensor at seeded samples
  std::vector<RicciSample> samples;
  Sampler s(kSeed);
  const auto conn = Connection::generalized(st, {0, 0});
  for (const Point& p : sample_points(st->spec(), kSeed, kSamples)) {
    const RicciData r = ricci(conn, p);
    for (const auto& u : test_vectors(s, 3, 2))
      for (const auto& v : test_vectors(s, 3, 0)) samples.push_back({p, u, v, r(u, v)});
  }
  const EtaEinsteinFit fit = eta_einstein_fit(*st, samples);
  o.require(std::abs(fit.a - 2) <= 1e-7 && std::abs(fit.b) <= 1e-7 && std::abs(fit.c) <= 1e-7, "fit coefficients");
  o.require(fit.classification == EinsteinClass::Einstein, "classification");
  return report(7, "Ricci semi-symmetry chain and eta-Einstein classification", o,
                fmt("fit (a,b,c) = (%.9g, %.3g, %.3g), ", fit.a, fit.b, fit.c) + std::string(to_string(fit.classification)) +
                    "; semi-symmetric at " + holds_at);
}

int criterion8() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto sub = build_example3_leaf();
  o.require(cr_structure_residuals(sub, kSeed, kSamples).passed(), "CR validation");
  double hmax = 0, amax = 0;
  const auto lc = Connection::levi_civita(sub->ambient_ptr());
  Sampler s(kSeed);
  for (std::size_t k = 0; k < kSamples; ++k) {
    const std::vector<double> u{s.uniform(-1, 1), s.uniform(-1, 1)};
    const SubmanifoldAt a = sub->at(u);
    const Eigen::VectorXd x = a.tangent_frame() * s.vector(2), y = a.tangent_frame() * s.vector(2);
    const SecondFundamental sf = second_fundamental_form(*sub, lc, x, y, a.normal_basis().col(0), u);
    hmax = std::max(hmax, sf.h.cwiseAbs().maxCoeff());
    amax = std::max(amax, sf.weingarten.cwiseAbs().maxCoeff());
  }
  o.require(hmax <= 1e-9, "h not zero");
  o.require(amax <= 1e-9, "A not zero");
  bool vacuous_flagged = true;
  for (const auto c : kGrid) {
    const auto gw = generalized_gauss_weingarten_residuals(sub, c, kSeed, kSamples);
    o.require(entry_passes(gw, "h_bar_vs_h"), "h-bar identity at " + at(c));
    const auto in = integrability_tests(sub, c, kSeed, kSamples);
    o.require(entry_passes(in, "agreement_d") && entry_passes(in, "frobenius_d") && entry_passes(in, "criterion_d"),
              "criterion/Frobenius agreement at " + at(c));
    for (const char* id : {"frobenius_d_perp", "criterion_d_perp", "lemma55"}) {
      const IdentityEntry* e = find(in, id);
      vacuous_flagged = vacuous_flagged && e && e->status == Status::Vacuous && !e->flags.empty();
    }
    const auto l54 = lemma54_and_prop59_residuals(sub, c, kSeed, kSamples);
    for (const auto& e : l54.entries)
      if (!e.informational) o.require(e.status == Status::Pass, e.id + " at " + at(c));
    o.require(l54.passed() && in.passed() && gw.passed(), "gating entry at " + at(c));
  }
  o.require(vacuous_flagged, "empty D-perp entries not flagged vacuous");
  const double t = seconds_since(t0);
  o.require(t < 5.0, fmt("runtime %.2fs", t));
  return report(8, "CR leaf: validation, h = A = 0, integrability agreement, submanifold lemmas", o,
                fmt("max |h| %.2e, max |A| %.2e, %.2fs", hmax, amax, t));
}

int criterion9() {
  Outcome o;
  const auto t0 = Clock::now();
  app::SuiteConfig c;
  c.manifest = "example3-leaf";  // every suite: ambient ones plus the submanifold ones
  c.seed = kSeed;
  const std::string a = app::emit_json(app::run(c));
  const double t = seconds_since(t0);
  const std::string b = app::emit_json(app::run(c));
  c.jobs = 4;
  const std::string d = app::emit_json(app::run(c));
  o.require(a == b, "two runs differ");
  o.require(a == d, "worker count changes output");
  o.require(t < 60.0, fmt("runtime %.1fs", t));
  return report(9, "determinism of the full default suite", o,
                fmt("%.0f bytes, identical across runs and worker counts, %.2fs per run", double(a.size()), t));
}

}  // namespace

int main() {
  int failed = 0;
  for (auto* f : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
                  criterion9}) {
    try {
      failed += f();
    } catch (const std::exception& e) {
      std::printf("criterion error: %s\n", e.what());
      ++failed;
    }
  }
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
