// qeslab: command-line front end.  Exit codes: 0 ok, 1 an acceptance
// criterion failed, 2 usage, 3 non-convergence / route mismatch, 4 singular
// weight system.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <locale>
#include <sstream>
#include <thread>

#include "qes/acceptance.hpp"
#include "qes/io.hpp"
#include "qes/mathieu_limit.hpp"
#include "qes/measure.hpp"
#include "qes/spectra.hpp"
#include "qes/wavefield.hpp"

using namespace qes;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kNoConvergence = 3, kSingular = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Rat parse_exact(const std::string& text, const char* what) {
  try {
    return parse_rat(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
}

Rat parse_N(const std::string& text) {
  const Rat N = parse_exact(text, "N");
  if (!is_half_integer(N)) throw UsageError("N must be a positive half-integer, got '" + text + "'");
  return N;
}

Parity parse_parity(const std::string& tag) {
  try {
    return parity_from_tag(tag);
  } catch (const std::invalid_argument&) {
    throw UsageError("parity must be c or s, got '" + tag + "'");
  }
}

// --zeta is exact (fraction or terminating decimal); --zeta-approx is a
// floating-point decimal, taken at its exact binary value.
struct ZetaArgs {
  std::string exact, approx;

  void add(CLI::App* app) {
    app->add_option("--zeta", exact, "coupling, exact: p/q or terminating decimal");
    app->add_option("--zeta-approx", approx, "coupling as a floating-point decimal");
  }
  Rat value() const {
    if (exact.empty() == approx.empty()) throw UsageError("give exactly one of --zeta and --zeta-approx");
    if (!exact.empty()) return parse_exact(exact, "zeta");
    char* end = nullptr;
    const double z = std::strtod(approx.c_str(), &end);
    if (end == approx.c_str() || *end != '\0' || !std::isfinite(z)) throw UsageError("invalid zeta '" + approx + "'");
    Rat r(z);
    r.canonicalize();
    return r;
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QES_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

// Runs task(i) for i < count on up to thread_cap() threads.
template <typename F>
void parallel_for(std::size_t count, F task) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < count;) task(i);
  };
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), count));
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// ---- subcommands ---------------------------------------------------------

int generate_polys(const std::string& parity, int nmax, const std::string& N, const std::string& out) {
  const Parity p = parse_parity(parity);
  if (nmax < first_index(p)) throw UsageError("--nmax must be at least the first index of the family");
  std::optional<Rat> fixed;
  if (!N.empty()) fixed = parse_exact(N, "N");
  emit(dump(to_json(generate(p, nmax, fixed))), out);
  return kOk;
}

int energies_cmd(const std::string& N, const std::string& parity, const ZetaArgs& zeta, double precision, bool as_json,
                 const std::string& out) {
  const Rat n = parse_N(N);
  const Parity p = parse_parity(parity);
  if (!(precision > 0)) throw UsageError("--precision must be positive");
  const SpectralProblem prob = critical_polynomial(p, n);
  if (prob.degree() < 1) throw UsageError("no quasi-exact levels for this N and parity");
  const Rat z = zeta.value();
  const EnergyLevels lv = energies(prob, z, precision);
  if (as_json) {
    json j{{"N", rat_to_string(n)}, {"parity", std::string(parity_tag(p))}, {"zeta", rat_to_string(z)}, {"levels", json::array()}};
    for (std::size_t k = 0; k < lv.roots.size(); ++k)
      j["levels"].push_back({{"E", complex_json(lv.roots[k])},
                             {"kind", lv.kinds[k] == RootKind::Real ? "real" : "complex"},
                             {"residual", lv.residuals[k]},
                             {"certified", static_cast<bool>(lv.certified[k])}});
    emit(dump(j), out);
  } else {
    std::string s = "index,re,im,kind,residual\n";
    for (std::size_t k = 0; k < lv.roots.size(); ++k)
      s += std::to_string(k) + "," + num(lv.roots[k].real()) + "," + num(lv.roots[k].imag()) + "," +
           (lv.kinds[k] == RootKind::Real ? "real" : "complex") + "," + num(lv.residuals[k], 3) + "\n";
    emit(s, out);
  }
  return kOk;
}

int exceptional_cmd(const std::string& nmax_text, bool as_json, const std::string& out) {
  const Rat nmax = parse_exact(nmax_text, "Nmax");
  if (!is_half_integer(nmax)) throw UsageError("--Nmax must be a positive half-integer");
  struct Task {
    Rat N;
    Parity parity;
    std::vector<ExceptionalPoint> eps;
  };
  std::vector<Task> tasks;
  for (Rat N(1, 2); N <= nmax; N += Rat(1, 2))
    for (Parity p : {Parity::Even, Parity::Odd})
      if (p == Parity::Even || N > Rat(1, 2)) tasks.push_back({N, p, {}});
  parallel_for(tasks.size(), [&](std::size_t i) { tasks[i].eps = exceptional_points(tasks[i].N, tasks[i].parity); });

  json rows = json::array();
  std::string csv = "N,parity,zeta0,zeta0_times_N\n";
  for (const auto& t : tasks)
    for (const auto& ep : t.eps) {
      const std::string n = rat_to_string(t.N), tag(parity_tag(t.parity));
      const double z0 = ep.zeta0.approx();
      csv += n + "," + tag + "," + num(z0, 12) + "," + num(ep.zeta0_times_N, 12) + "\n";
      rows.push_back({{"N", n}, {"parity", tag}, {"zeta0", z0}, {"zeta0_times_N", ep.zeta0_times_N},
                      {"zeta0_lo", rat_to_string(ep.zeta0.lo)}, {"zeta0_hi", rat_to_string(ep.zeta0.hi)}});
    }
  emit(as_json ? dump(json{{"Nmax", rat_to_string(nmax)}, {"points", rows}}) : csv, out);
  return kOk;
}

int mathieu_cmd(const std::string& kind_text, int lmax, double tol, bool as_json, const std::string& out) {
  MathieuKind kind;
  try {
    kind = kind_from_name(kind_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  // Convergence at l compares with l + 1, and levels stop at 24.
  if (lmax < 2 || lmax > 23) throw UsageError("--lmax must be in 2..23");
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  std::vector<std::vector<CriticalCoupling>> levels(static_cast<std::size_t>(lmax - 1));
  parallel_for(levels.size(), [&](std::size_t i) { levels[i] = critical_couplings(kind, static_cast<int>(i) + 2, tol); });

  json rows = json::array();
  std::string csv = "l,zero_index,g0,converged\n";
  bool lowest = false;
  for (const auto& lv : levels)
    for (const auto& c : lv) {
      csv += std::to_string(c.ell) + "," + std::to_string(c.index) + "," + num(c.value(), 12) + "," +
             (c.converged ? "true" : "false") + "\n";
      rows.push_back({{"l", c.ell}, {"zero_index", c.index}, {"g0", c.value()}, {"converged", c.converged}});
      if (c.ell == lmax && c.index == 0) lowest = c.converged;
    }
  emit(as_json ? dump(json{{"kind", std::string(kind_name(kind))}, {"lmax", lmax}, {"tolerance", tol}, {"zeros", rows}}) : csv, out);
  if (!lowest) {
    std::cerr << "qeslab: smallest zero not converged at l = " << lmax << "\n";
    return kNoConvergence;
  }
  return kOk;
}

int moments_cmd(const std::string& family, const std::string& N, int nmax, bool as_json, const std::string& out) {
  const Parity p = parse_parity(family);
  const Rat n = parse_N(N);
  if (p == Parity::Odd && n == Rat(1, 2)) throw UsageError("the sine family has no levels at N = 1/2");
  if (nmax < 0) throw UsageError("--nmax must be nonnegative");
  const MomentSequence m = moments(p, n, nmax);
  if (as_json) {
    json j{{"family", std::string(parity_tag(p))}, {"N", rat_to_string(n)}, {"moments", json::array()}};
    for (std::size_t k = 0; k < m.values.size(); ++k)
      j["moments"].push_back({{"n", k}, {"text", m.values[k].to_string()}, {"poly", to_json(m.values[k])}});
    emit(dump(j), out);
  } else {
    std::string s;
    for (std::size_t k = 0; k < m.values.size(); ++k) s += "mu_" + std::to_string(k) + " = " + m.values[k].to_string() + "\n";
    emit(s, out);
  }
  return kOk;
}

int weights_cmd(const std::string& family, const std::string& N, const ZetaArgs& zeta, bool as_json, const std::string& out) {
  const Parity p = parse_parity(family);
  const Rat n = parse_N(N);
  if (p == Parity::Odd && n == Rat(1, 2)) throw UsageError("the sine family has no levels at N = 1/2");
  const DiscreteMeasure m = solve_weights(p, n, zeta.value());
  if (as_json) {
    json j{{"family", std::string(parity_tag(p))}, {"N", rat_to_string(n)}, {"zeta", rat_to_string(m.zeta)},
           {"complex", m.complex}, {"residual", m.residual}, {"points", json::array()}};
    for (int k = 0; k < m.size(); ++k)
      j["points"].push_back({{"node", complex_json(m.nodes[static_cast<std::size_t>(k)])},
                             {"weight", complex_json(m.weights[static_cast<std::size_t>(k)])}});
    emit(dump(j), out);
  } else {
    std::string s = "node_re,node_im,weight_re,weight_im\n";
    for (int k = 0; k < m.size(); ++k) {
      const auto e = m.nodes[static_cast<std::size_t>(k)], w = m.weights[static_cast<std::size_t>(k)];
      s += num(e.real()) + "," + num(e.imag()) + "," + num(w.real()) + "," + num(w.imag()) + "\n";
    }
    emit(s, out);
  }
  return kOk;
}

int wavefunction_cmd(const std::string& N, const std::string& parity, const ZetaArgs& zeta, int root, int grid,
                     bool as_json, const std::string& out) {
  const Rat n = parse_N(N);
  const Parity p = parse_parity(parity);
  const SpectralProblem prob = critical_polynomial(p, n);
  if (prob.degree() < 1) throw UsageError("no quasi-exact levels for this N and parity");
  const Rat z = zeta.value();
  if (sgn(z) == 0) throw UsageError("wavefunction needs zeta != 0");
  const EnergyLevels lv = energies(prob, z);
  if (root < 0 || root >= static_cast<int>(lv.roots.size()))
    throw UsageError("--root-index must be in 0.." + std::to_string(lv.roots.size() - 1));
  const HamiltonianParams hp{z.get_d(), n.get_d()};
  WaveSample s;
  try {
    s = eval_psi(hp, p, lv.roots[static_cast<std::size_t>(root)], 8, grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const WaveSample h = apply_H(hp, s);
  const double scale = s.values.cwiseAbs().maxCoeff();
  if (as_json) {
    json j{{"N", rat_to_string(n)},      {"parity", std::string(parity_tag(p))}, {"zeta", rat_to_string(z)},
           {"root_index", root},         {"E", complex_json(s.E)},               {"grid", grid},
           {"n_max", s.n_max},           {"truncated", s.truncated},             {"tail", s.tail},
           {"residual", residual(hp, s)}, {"pt3_deviation", pt3_check(s)},        {"coefficients", json::array()}};
    for (const auto& c : s.coeffs) j["coefficients"].push_back(complex_json(c));
    emit(dump(j), out);
  } else {
    std::string csv = "theta,re,im,residual\n";
    for (int k = 0; k < s.size(); ++k)
      csv += num(s.theta[static_cast<std::size_t>(k)]) + "," + num(s.values(k).real()) + "," + num(s.values(k).imag()) + "," +
             num(std::abs(h.values(k) - s.E * s.values(k)) / scale, 3) + "\n";
    emit(csv, out);
  }
  return kOk;
}

int verify_all(bool as_json, bool timings) {
  json rows = json::array();
  int failed = 0;
  run_acceptance([&](const CriterionResult& r) {
    failed += !r.pass;
    if (as_json) {
      json row{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}};
      if (timings) row["seconds"] = r.seconds;
      rows.push_back(row);
    } else {
      std::cout << format_result(r, timings) << "\n" << std::flush;
    }
  });
  if (as_json)
    std::cout << dump(json{{"passed", 11 - failed}, {"total", 11}, {"criteria", rows}});
  else
    std::cout << 11 - failed << "/11 passed\n";
  return failed == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  std::locale::global(std::locale::classic());
  std::cout.imbue(std::locale::classic());

  CLI::App app{"Exact and numerical spectra of H = J^2 + zeta u v J + 2 i zeta N (u^2 - v^2)"};
  app.require_subcommand(1);
  std::string out, N, parity = "c", nmax_text = "3", kind = "theta";
  int nmax = 4, lmax = 12, root = 0, grid = 512;
  double precision = 1e-10, tol = 1e-5;
  bool as_json = false, timings = false;
  ZetaArgs zeta;
  std::function<int()> run;

  auto* gen = app.add_subcommand("generate-polys", "P_n or Q_n up to --nmax, as JSON");
  gen->add_option("--parity", parity, "c or s")->required();
  gen->add_option("--nmax", nmax, "highest index")->required();
  gen->add_option("--N", N, "fix N = p/q (default: symbolic)");
  gen->add_option("--out", out, "output file (default stdout)");
  gen->callback([&] { run = [&] { return generate_polys(parity, nmax, N, out); }; });

  auto* en = app.add_subcommand("energies", "quasi-exact levels at one zeta");
  en->add_option("--N", N, "half-integer N")->required();
  en->add_option("--parity", parity, "c or s")->required();
  zeta.add(en);
  en->add_option("--precision", precision, "real-root refinement width");
  en->add_flag("--json", as_json, "JSON instead of CSV");
  en->add_option("--out", out, "output file");
  en->callback([&] { run = [&] { return energies_cmd(N, parity, zeta, precision, as_json, out); }; });

  auto* ep = app.add_subcommand("exceptional-points", "zeta0 and zeta0 N for N = 1/2 .. Nmax");
  ep->add_option("--Nmax", nmax_text, "largest N (half-integer)");
  ep->add_flag("--json", as_json, "JSON instead of CSV");
  ep->add_option("--out", out, "output file");
  ep->callback([&] { run = [&] { return exceptional_cmd(nmax_text, as_json, out); }; });

  auto* ml = app.add_subcommand("mathieu-limit", "critical couplings of the truncated limit matrices");
  ml->add_option("--kind", kind, "xi or theta");
  ml->add_option("--lmax", lmax, "largest truncation level");
  ml->add_option("--tol", tol, "convergence tolerance against level l + 1");
  ml->add_flag("--json", as_json, "JSON instead of CSV");
  ml->add_option("--out", out, "output file");
  ml->callback([&] { run = [&] { return mathieu_cmd(kind, lmax, tol, as_json, out); }; });

  auto* mo = app.add_subcommand("moments", "exact moments, cross-checked against node sums");
  mo->add_option("--family", parity, "c or s")->required();
  mo->add_option("--N", N, "half-integer N")->required();
  mo->add_option("--nmax", nmax, "highest moment");
  mo->add_flag("--json", as_json, "JSON output");
  mo->add_option("--out", out, "output file");
  mo->callback([&] { run = [&] { return moments_cmd(parity, N, nmax, as_json, out); }; });

  auto* we = app.add_subcommand("weights", "nodes and weights of the discrete measure");
  we->add_option("--family", parity, "c or s")->required();
  we->add_option("--N", N, "half-integer N")->required();
  zeta.add(we);
  we->add_flag("--json", as_json, "JSON instead of CSV");
  we->add_option("--out", out, "output file");
  we->callback([&] { run = [&] { return weights_cmd(parity, N, zeta, as_json, out); }; });

  auto* wf = app.add_subcommand("wavefunction", "psi on a uniform grid with its pointwise residual");
  wf->add_option("--N", N, "half-integer N")->required();
  wf->add_option("--parity", parity, "c or s")->required();
  zeta.add(wf);
  wf->add_option("--root-index", root, "level index in (Re, Im) order");
  wf->add_option("--grid", grid, "grid size (multiple of 4)");
  wf->add_flag("--json", as_json, "summary as JSON instead of the CSV samples");
  wf->add_option("--out", out, "output file");
  wf->callback([&] { run = [&] { return wavefunction_cmd(N, parity, zeta, root, grid, as_json, out); }; });

  auto* va = app.add_subcommand("verify-all", "run the acceptance suite");
  va->add_flag("--json", as_json, "JSON table");
  va->add_flag("--timings", timings, "include wall-clock seconds (output no longer reproducible)");
  va->callback([&] { run = [&] { return verify_all(as_json, timings); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "qeslab: " << e.what() << "\n";
    return kUsage;
  } catch (const SingularSystem& e) {
    std::cerr << "qeslab: " << e.what() << "\n";
    return kSingular;
  } catch (const RouteMismatch& e) {
    std::cerr << "qeslab: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const AliasingError& e) {
    std::cerr << "qeslab: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qeslab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "qeslab: " << e.what() << "\n";
    return kFailed;
  }
}
