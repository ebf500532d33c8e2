#include "conflab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "conflab/error.hpp"
#include "conflab/spectrum.hpp"

namespace conflab {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw LabError(ErrorCode::ConfigInvalid, field + ": " + why);
}

template <class T>
T get_field(const nlohmann::json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    invalid(path + "." + key, "wrong type");
  }
}

bool applicable(const std::string& suite, const BackendEntry& b) {
  const bool sphere = b.kind == BackendKind::Sphere;
  // these suites act on the model metric only
  const bool model_only = suite == "weak-identity" || suite == "4d-identity" || suite == "covariance" || suite == "spectrum";
  if (model_only && b.factor != "none") return false;
  if (suite == "weak-identity") return b.n != 4;
  if (suite == "4d-identity" || suite == "total-q") return b.n == 4;
  if (suite == "green-compare") return b.n != 4;
  if (suite == "mass") return sphere && b.n >= 5 && b.n <= 7;
  return true;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

std::string BackendEntry::label() const {
  std::string s = to_string(kind) + "-n" + std::to_string(n) + "-r" + fmt(params.radius);
  if (kind != BackendKind::Sphere) s += "-ell" + fmt(params.ell);
  if (factor != "none") s += "-" + factor + std::to_string(factor_seed);
  return s;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s = {"weak-identity", "4d-identity", "total-q", "covariance",
                                             "signs",         "spectrum",    "green-compare", "mass"};
  return s;
}

RunConfig parse_run_config(const nlohmann::json& j) {
  if (!j.is_object()) invalid("config", "expected a JSON object");
  RunConfig c;
  if (!j.contains("catalog") || !j["catalog"].is_array() || j["catalog"].empty())
    invalid("catalog", "expected a non-empty array of backend specs");
  for (size_t i = 0; i < j["catalog"].size(); ++i) {
    const auto& e = j["catalog"][i];
    const std::string path = "catalog[" + std::to_string(i) + "]";
    if (!e.is_object()) invalid(path, "expected an object");
    BackendEntry b;
    try {
      b.kind = parse_backend_kind(get_field<std::string>(e, "kind", path, ""));
    } catch (const std::exception&) {
      invalid(path + ".kind", "unknown backend kind");
    }
    b.n = get_field<int>(e, "n", path, b.kind == BackendKind::ProductS1S3 ? 4 : 3);
    const auto& pr = e.contains("params") ? e["params"] : e;
    const std::string ppath = e.contains("params") ? path + ".params" : path;
    b.params.radius = get_field<double>(pr, "radius", ppath, 1.0);
    b.params.ell = get_field<double>(pr, "ell", ppath, 2.0 * kPi);
    if (!(b.params.radius > 0)) invalid(ppath + ".radius", "must be positive");
    if (!(b.params.ell > 0)) invalid(ppath + ".ell", "must be positive");
    if (e.contains("basis")) {
      const auto& bs = e["basis"];
      b.basis.K = get_field<int>(bs, "K", path + ".basis", b.basis.K);
      b.basis.Lmax = get_field<int>(bs, "Lmax", path + ".basis", b.basis.Lmax);
      b.basis.quad_extra = get_field<int>(bs, "quad_extra", path + ".basis", 0);
      if (b.basis.K < 0 || b.basis.Lmax < 0 || b.basis.quad_extra < 0) invalid(path + ".basis", "negative cutoff");
    } else if (b.kind != BackendKind::Sphere) {
      b.basis.K = 2;
    }
    if (e.contains("factor")) {
      const auto& f = e["factor"];
      b.factor = get_field<std::string>(f, "type", path + ".factor", "none");
      if (b.factor != "none" && b.factor != "moebius" && b.factor != "random")
        invalid(path + ".factor.type", "expected none, moebius or random");
      if (b.factor == "moebius" && b.kind != BackendKind::Sphere)
        invalid(path + ".factor.type", "moebius factors need a sphere backend");
      b.factor_seed = get_field<std::uint64_t>(f, "seed", path + ".factor", 1);
      b.factor_amplitude = get_field<double>(f, "amplitude", path + ".factor", 0.15);
    }
    c.catalog.push_back(b);
  }

  if (!j.contains("suites") || !j["suites"].is_array() || j["suites"].empty())
    invalid("suites", "select at least one suite");
  std::set<std::string> seen;
  for (const auto& s : j["suites"]) {
    if (!s.is_string()) invalid("suites", "entries must be strings");
    const auto name = s.get<std::string>();
    if (std::find(known_suites().begin(), known_suites().end(), name) == known_suites().end())
      invalid("suites", "unknown suite '" + name + "'");
    if (seen.insert(name).second) c.suites.push_back(name);
  }
  for (const auto& s : c.suites)
    if (std::none_of(c.catalog.begin(), c.catalog.end(), [&](const BackendEntry& b) { return applicable(s, b); }))
      invalid("suites", "suite '" + s + "' has no compatible backend in the catalog");

  if (j.contains("poles")) {
    const auto& p = j["poles"];
    if (!p.is_object()) invalid("poles", "expected an object");
    c.pole_count = get_field<int>(p, "count", "poles", c.pole_count);
    if (c.pole_count < 1) invalid("poles.count", "must be >= 1");
    if (p.contains("points")) {
      if (!p["points"].is_array() || p["points"].empty()) invalid("poles.points", "expected a non-empty array");
      for (const auto& q : p["points"]) {
        Point pt;
        pt.t = get_field<double>(q, "t", "poles.points", 0.0);
        pt.x = get_field<std::vector<double>>(q, "x", "poles.points", {});
        double s = 0.0;
        for (double v : pt.x) s += v * v;
        if (pt.x.empty() || std::abs(s - 1.0) > 1e-9) invalid("poles.points", "x must be a unit vector");
        c.poles.push_back(pt);
      }
    }
  }

  if (j.contains("cutoffs")) {
    const auto& k = j["cutoffs"];
    auto& s = c.settings;
    s.green.L = get_field<int>(k, "green_degree", "cutoffs", s.green.L);
    s.green.tail_tol = get_field<double>(k, "green_tail_tol", "cutoffs", s.green.tail_tol);
    s.polar.panels = get_field<int>(k, "polar_panels", "cutoffs", s.polar.panels);
    s.polar.per_panel = get_field<int>(k, "polar_per_panel", "cutoffs", s.polar.per_panel);
    s.polar.cell_nodes = get_field<int>(k, "polar_cell_nodes", "cutoffs", s.polar.cell_nodes);
    s.polar.duffy_nodes = get_field<int>(k, "polar_duffy_nodes", "cutoffs", s.polar.duffy_nodes);
    s.polar.direction_degree = get_field<int>(k, "polar_direction_degree", "cutoffs", s.polar.direction_degree);
    s.exclusion = get_field<double>(k, "exclusion", "cutoffs", s.exclusion);
    if (s.green.L < 0 || s.polar.panels < 1 || s.polar.per_panel < 1 || s.polar.cell_nodes < 1 || s.polar.duffy_nodes < 1)
      invalid("cutoffs", "resolutions must be positive");
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) invalid("tolerances", "expected an object of suite -> relative tolerance");
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (std::find(known_suites().begin(), known_suites().end(), k) == known_suites().end())
        invalid("tolerances." + k, "unknown suite");
      if (!v.is_number() || !(v.get<double>() > 0)) invalid("tolerances." + k, "expected a positive number");
      c.tolerances[k] = v.get<double>();
    }
  }
  c.output_dir = get_field<std::string>(j, "output_dir", "config", c.output_dir.string());
  c.seed = get_field<std::uint64_t>(j, "seed", "config", c.seed);
  c.trials = get_field<int>(j, "trials", "config", c.trials);
  if (c.trials < 1) invalid("trials", "must be >= 1");
  if (j.contains("dumps")) {
    const auto& d = j["dumps"];
    c.dump_symbol = get_field<bool>(d, "symbol", "dumps", false);
    c.dump_spectrum = get_field<bool>(d, "spectrum", "dumps", false);
    c.dump_green = get_field<bool>(d, "green", "dumps", false);
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("config", "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    invalid("config", std::string("JSON parse error: ") + e.what());
  }
  return parse_run_config(j);
}

int thread_budget() {
  if (const char* env = std::getenv("CONFORMAL_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Backend {
  BackendEntry entry;
  ModelPtr model;
  ConformalFactor factor;
  std::vector<Point> poles;
};

ConformalFactor build_factor(const BackendEntry& e, const ModelPtr& m) {
  if (e.factor == "moebius") {
    std::mt19937_64 rng(e.factor_seed);
    return ConformalFactor::from_log(m, MoebiusMap::random(m->n(), rng).log_factor());
  }
  if (e.factor == "random") {
    std::mt19937_64 rng(e.factor_seed);
    return ConformalFactor::from_log(m, random_log_factor(*m, rng, e.factor_amplitude));
  }
  return ConformalFactor(m);
}

VerifySettings settings_for(const RunConfig& c, const std::string& suite) {
  VerifySettings s = c.settings;
  if (auto it = c.tolerances.find(suite); it != c.tolerances.end()) s.tol = it->second;
  return s;
}

VerificationReport spectrum_report(const Backend& b, const VerifySettings& s) {
  const ManifoldModel& m = *b.model;
  VerificationReport rep;
  rep.suite = "spectrum";
  rep.backend = m.id();
  rep.hypotheses = hypothesis_ledger(ConformalFactor(b.model));
  rep.resolution = s.to_json();
  const SpectrumSummary sp = paneitz_spectrum_check(b.model);
  const bool gate = rep.hypotheses.theorem_gate();

  CheckRecord l1 = make_check("lambda1-L", std::max(0.0, -rep.hypotheses.lambda1_L), 0.0);
  l1.pass = rep.hypotheses.lambda1_L > 0.0;
  l1.detail = {{"lambda1_L", rep.hypotheses.lambda1_L}};
  rep.checks.push_back(l1);

  CheckRecord ker = make_check("kernel-constants", sp.kernel_is_constants ? 0.0 : 1.0, 0.0);
  ker.detail = {{"kernel_dimension", sp.kernel_dimension}};
  rep.checks.push_back(ker);
  if (gate && m.n() != 4) {
    CheckRecord k0 = make_check("kernel-trivial", sp.kernel_dimension, 0.0);
    rep.checks.push_back(k0);
  }

  CheckRecord claims = make_check("spectral-extremal", sp.claims_hold() ? 0.0 : 1.0, 0.0, sp.claims_asserted && gate);
  claims.detail = {{"green_sign", sp.green_sign ? nlohmann::json(to_string(*sp.green_sign)) : nlohmann::json()},
                   {"simple", sp.simple},
                   {"sign_definite", sp.sign_definite},
                   {"ordering", sp.ordering},
                   {"extremal_value", sp.extremal >= 0 ? nlohmann::json(sp.levels[sp.extremal].value) : nlohmann::json()},
                   {"extremal_min", sp.extremal >= 0 ? nlohmann::json(sp.extremal_min) : nlohmann::json()},
                   {"extremal_max", sp.extremal >= 0 ? nlohmann::json(sp.extremal_max) : nlohmann::json()}};
  if (!sp.claims_asserted) claims.pass = true;
  rep.checks.push_back(claims);
  return rep;
}

VerificationReport compare_report(const Backend& b, const VerifySettings& s) {
  VerificationReport rep;
  rep.suite = "green-compare";
  rep.backend = b.model->id() + (b.factor.is_identity() ? "" : "+conformal");
  rep.hypotheses = hypothesis_ledger(b.factor);
  rep.resolution = s.to_json();
  const bool sphere = !b.model->is_product();
  const bool gate = rep.hypotheses.theorem_gate();
  for (const auto& p : b.poles) {
    GreenPtr gl = make_green(b.factor, OperatorTag::L, p, s.green);
    GreenPtr gp = make_green(b.factor, OperatorTag::P, p, s.green);
    const ComparisonResult r = compare_green(*gl, *gp);
    const std::string expected = sphere ? "EQUALITY" : "STRICT";
    // The inequality (and equality on conformal spheres) is asserted only when the ledger allows it.
    CheckRecord c = make_check("green-comparison", r.verdict == "VIOLATED" ? std::abs(r.min_margin) / r.scale : 0.0, 0.0,
                               gate);
    c.pass = c.pass && (!sphere || r.verdict == expected);
    c.detail = {{"verdict", r.verdict},   {"min_margin", r.min_margin}, {"max_margin", r.max_margin},
                {"scale", r.scale},       {"includes_diagonal", r.includes_diagonal}};
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

VerificationReport mass_report(const Backend& b, const VerifySettings& s, nlohmann::json& dump) {
  VerificationReport rep;
  rep.suite = "mass";
  rep.backend = b.model->id() + (b.factor.is_identity() ? "" : "+conformal");
  rep.hypotheses = hypothesis_ledger(b.factor);
  rep.resolution = s.to_json();
  const double tol = s.tol > 0 ? s.tol : 1e-6;
  const MassResult r = extract_mass(b.factor, b.poles.front(), PolarSpec{}, tol);
  for (auto [route, a] : {std::pair{"expansion", r.A_expansion}, {"integral", r.A_integral}}) {
    CheckRecord c = make_check(std::string("mass-") + route, std::abs(a), tol);
    c.detail = {{"A", a}};
    rep.checks.push_back(std::move(c));
    dump.push_back({{"pole", {{"t", r.pole.t}, {"x", r.pole.x}}}, {"A", a}, {"route", route}, {"tolerance", tol}});
  }
  return rep;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  out << std::setw(2) << j << "\n";
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

RunOutcome run(const RunConfig& config, int threads, std::ostream* log) {
  std::vector<Backend> backends;
  for (const auto& e : config.catalog) {
    Backend b{e, nullptr, ConformalFactor(nullptr), {}};
    try {
      b.model = catalog_build(e.kind, e.n, e.params, e.basis);
    } catch (const std::exception& err) {
      throw LabError(ErrorCode::BackendBuildFail, e.label() + ": " + err.what());
    }
    b.factor = build_factor(e, b.model);
    if (config.poles.empty()) {
      b.poles = default_poles(*b.model, config.pole_count);
    } else {
      const size_t dim = b.model->is_product() ? b.model->n() : b.model->n() + 1;
      for (const auto& p : config.poles)
        if (p.x.size() == dim) b.poles.push_back(p);
      if (b.poles.empty()) b.poles = default_poles(*b.model, config.pole_count);
    }
    backends.push_back(std::move(b));
  }

  struct Job {
    std::string suite;
    size_t backend;
  };
  std::vector<Job> jobs;
  for (const auto& s : config.suites)
    for (size_t i = 0; i < backends.size(); ++i)
      if (applicable(s, backends[i].entry)) jobs.push_back({s, i});

  std::filesystem::create_directories(config.output_dir);
  std::vector<VerificationReport> reports(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::vector<nlohmann::json> mass_dumps(jobs.size(), nlohmann::json::array());
  std::mutex io;
  std::atomic<size_t> next{0};

  auto work = [&] {
    for (size_t k; (k = next++) < jobs.size();) {
      const Job& job = jobs[k];
      const Backend& b = backends[job.backend];
      const VerifySettings s = settings_for(config, job.suite);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const auto phis = standard_test_functions(*b.model, config.seed);
        VerificationReport r;
        if (job.suite == "weak-identity") r = check_weak_identity(b.model, b.poles.front(), phis, s);
        if (job.suite == "4d-identity") r = check_4d_identity(b.model, b.poles.front(), phis, s);
        if (job.suite == "total-q") r = check_total_q(b.factor, b.poles.front(), s);
        if (job.suite == "covariance") r = check_covariance(b.model, config.trials, config.seed, s);
        if (job.suite == "signs") r = check_sign_theorems(b.factor, b.poles, s);
        if (job.suite == "spectrum") r = spectrum_report(b, s);
        if (job.suite == "green-compare") r = compare_report(b, s);
        if (job.suite == "mass") r = mass_report(b, s, mass_dumps[k]);
        r.backend = b.entry.label();
        reports[k] = std::move(r);
      } catch (const std::exception& err) {
        errors[k] = err.what();
        reports[k].suite = job.suite;
        reports[k].backend = b.entry.label();
        CheckRecord c = make_check("suite-error", 1.0, 0.0);
        c.detail = {{"error", err.what()}};
        reports[k].checks.push_back(std::move(c));
      }
      reports[k].runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (log) {
        std::lock_guard<std::mutex> lock(io);
        *log << "[" << (reports[k].passed() ? "pass" : "FAIL") << "] " << job.suite << " on " << b.entry.label()
             << " (" << std::setprecision(3) << reports[k].runtime_s << " s)"
             << (errors[k].empty() ? "" : " (" + errors[k] + ")") << "\n";
      }
    }
  };
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<size_t> order(jobs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::tie(reports[a].suite, reports[a].backend) < std::tie(reports[b].suite, reports[b].backend);
  });

  RunOutcome out;
  out.passed = true;
  nlohmann::json entries = nlohmann::json::array();
  for (size_t k : order) {
    const auto& r = reports[k];
    const std::string file = r.suite + "__" + r.backend + ".json";
    nlohmann::json rj = r.to_json();
    rj.erase("runtime_s");  // keeps reports byte-identical across runs
    write_json(config.output_dir / file, rj);
    int asserted = 0, failed = 0, exploratory = 0;
    for (const auto& c : r.checks) {
      if (!c.asserted) {
        ++exploratory;
        continue;
      }
      ++asserted;
      if (!c.pass) ++failed;
    }
    entries.push_back({{"suite", r.suite},
                       {"backend", r.backend},
                       {"passed", r.passed()},
                       {"asserted_checks", asserted},
                       {"failed_checks", failed},
                       {"exploratory_checks", exploratory},
                       {"report", file}});
    out.passed = out.passed && r.passed();
    if (r.suite == "mass") write_json(config.output_dir / ("mass-values__" + r.backend + ".json"), mass_dumps[k]);
    out.reports.push_back(r);
  }

  for (const auto& b : backends) {
    const std::string label = b.entry.label();
    if (config.dump_symbol) {
      std::ofstream os(config.output_dir / ("symbol__" + label + ".csv"));
      write_symbol_csv(os, build_symbol(*b.model, OperatorTag::L), build_symbol(*b.model, OperatorTag::P));
    }
    if (config.dump_spectrum) {
      std::ofstream os(config.output_dir / ("spectrum__" + label + ".csv"));
      write_spectrum_csv(os, paneitz_spectrum_check(b.model));
    }
    if (config.dump_green) {
      std::vector<GreenPtr> fields;
      try {
        for (const auto& p : b.poles) fields.push_back(make_green(b.factor, OperatorTag::P, p, config.settings.green));
      } catch (const LabError&) {
        fields.clear();
      }
      if (!fields.empty()) {
        std::ofstream os(config.output_dir / ("green__" + label + ".csv"));
        write_green_csv(os, fields);
      }
    }
  }

  out.summary = {{"passed", out.passed}, {"seed", config.seed}, {"reports", entries}};
  write_json(config.output_dir / "summary.json", out.summary);
  return out;
}

std::string format_constant(double v) {
  for (int den = 1; den <= 64; ++den) {
    const double num = std::round(v * den);
    if (std::abs(num / den - v) < 1e-12 * std::max(1.0, std::abs(v))) {
      std::ostringstream os;
      os << static_cast<long long>(num);
      if (den != 1) os << "/" << den;
      return os.str();
    }
  }
  return fmt(v);
}

std::vector<CatalogRow> catalog_rows() {
  std::vector<CatalogRow> rows;
  auto add = [&](BackendKind kind, int n, const std::string& params) {
    auto m = catalog_build(kind, n, {}, BasisSpec{kind == BackendKind::Sphere ? 0 : 1, 1, 0});
    rows.push_back({to_string(kind), n, params, m->scalar_curvature(), m->q_value(), lambda1_L(*m)});
  };
  for (int n = 3; n <= 7; ++n) add(BackendKind::Sphere, n, "radius=1");
  add(BackendKind::ProductS1S2, 3, "ell=2pi, radius=1");
  add(BackendKind::ProductS1S3, 4, "ell=2pi, radius=1");
  return rows;
}

void list_catalog(std::ostream& os) {
  os << std::left << std::setw(16) << "kind" << std::setw(4) << "n" << std::setw(20) << "params" << std::setw(10)
     << "R" << std::setw(10) << "Q" << "lambda1(L)\n";
  for (const auto& r : catalog_rows())
    os << std::left << std::setw(16) << r.kind << std::setw(4) << r.n << std::setw(20) << r.params << std::setw(10)
       << format_constant(r.R) << std::setw(10) << format_constant(r.Q) << format_constant(r.lambda1) << "\n";
}

}  // namespace conflab
