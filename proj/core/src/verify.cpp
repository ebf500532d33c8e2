#include "conflab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "conflab/error.hpp"
#include "conflab/spectrum.hpp"

namespace conflab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Evaluates several band-limited fields at arbitrary points with one basis sweep.
class FieldBank {
 public:
  explicit FieldBank(const ModeBasis& b) : b_(b), active_(b.size(), 0) {}

  int add(const ScalarField& f) {
    coef_.push_back(f.coefficients());
    for (int i = 0; i < b_.size(); ++i)
      if (coef_.back()[i] != 0.0) active_[i] = 1;
    return static_cast<int>(coef_.size()) - 1;
  }

  void eval(const Point& q, std::vector<double>& out) {
    b_.eval(q, vals_, &active_);
    out.assign(coef_.size(), 0.0);
    for (size_t k = 0; k < coef_.size(); ++k)
      for (int i = 0; i < b_.size(); ++i)
        if (active_[i]) out[k] += vals_[i] * coef_[k][i];
  }

 private:
  const ModeBasis& b_;
  std::vector<char> active_;
  std::vector<std::vector<double>> coef_;
  std::vector<double> vals_;
};

// Modes of degree <= 2 and circle frequency <= 1.
std::vector<int> low_modes(const ModeBasis& b) {
  std::vector<int> out;
  for (int i = 0; i < b.size(); ++i)
    if (b.mode(i).l <= 2 && b.mode(i).k <= 1) out.push_back(i);
  return out;
}

ScalarField random_low_field(const ManifoldModel& m, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> c(m.basis().size(), 0.0);
  const auto modes = low_modes(m.basis());
  for (int i : modes) c[i] = nd(rng) / std::sqrt(static_cast<double>(modes.size()));
  return ScalarField::from_coefficients(m.basis_ptr(), c);
}

Point random_point(const ManifoldModel& m, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Point p;
  p.x.resize(m.is_product() ? m.n() : m.n() + 1);
  double s = 0.0;
  for (auto& v : p.x) {
    v = nd(rng);
    s += v * v;
  }
  for (auto& v : p.x) v /= std::sqrt(s);
  if (m.is_product()) p.t = std::uniform_real_distribution<double>(0.0, m.ell_internal())(rng);
  return p;
}

// A random point at model distance at least `min_dist` (internal units) from p.
Point random_point_away(const ManifoldModel& m, const Point& p, double min_dist, std::mt19937_64& rng) {
  for (;;) {
    Point q = random_point(m, rng);
    if (m.distance(p, q) > min_dist * m.scale()) return q;
  }
}

double relative_tol(const VerifySettings& s, double fallback) { return s.tol > 0.0 ? s.tol : fallback; }

void require_yamabe_positive(const HypothesisLedger& h, const std::string& id) {
  if (!h.yamabe_positive)
    throw LabError(ErrorCode::HypothesisFail, "lambda1(L) = " + std::to_string(h.lambda1_L) + " <= 0 on " + id);
}

}  // namespace

CheckRecord make_check(std::string eq, double residual, double tol, bool asserted) {
  CheckRecord c;
  c.eq = std::move(eq);
  c.residual = residual;
  c.tol = tol;
  c.pass = residual <= tol;
  c.asserted = asserted;
  return c;
}

HypothesisLedger hypothesis_ledger(const ConformalFactor& f) {
  HypothesisLedger h;
  // The sign of the Yamabe invariant is conformally invariant.
  h.lambda1_L = lambda1_L(f.base());
  h.yamabe_positive = h.lambda1_L > 0.0;
  const ScalarField q = f.is_identity() ? q_curvature(f.base()) : conformal_q(f.base(), f);
  const auto g = synthesize(q).grid();
  h.q_min = *std::min_element(g.begin(), g.end());
  h.q_max = *std::max_element(g.begin(), g.end());
  const double eps = 1e-12 * std::max(1.0, std::max(std::abs(h.q_min), std::abs(h.q_max)));
  h.q_nonnegative_nontrivial = h.q_min >= -eps && h.q_max > eps;
  return h;
}

nlohmann::json VerifySettings::to_json() const {
  return {{"green_degree", green.L},
          {"green_tail_tol", green.tail_tol},
          {"polar_panels", polar.panels},
          {"polar_per_panel", polar.per_panel},
          {"polar_cell_nodes", polar.cell_nodes},
          {"polar_duffy_nodes", polar.duffy_nodes},
          {"polar_direction_degree", polar.direction_degree},
          {"exclusion", exclusion},
          {"tol_override", tol}};
}

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.asserted || c.pass; });
}

double VerificationReport::max_residual_ratio() const {
  double r = 0.0;
  for (const auto& c : checks)
    if (c.asserted) r = std::max(r, c.tol > 0 ? c.residual / c.tol : (c.residual > 0 ? INFINITY : 0.0));
  return r;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks)
    cs.push_back({{"eq", c.eq}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.pass}, {"asserted", c.asserted},
                  {"detail", c.detail}});
  return {{"suite", suite},
          {"backend", backend},
          {"checks", cs},
          {"hypotheses",
           {{"lambda1_L", hypotheses.lambda1_L},
            {"yamabe_positive", hypotheses.yamabe_positive},
            {"q_min", hypotheses.q_min},
            {"q_max", hypotheses.q_max},
            {"q_nonnegative_nontrivial", hypotheses.q_nonnegative_nontrivial},
            {"theorem_gate", hypotheses.theorem_gate()}}},
          {"resolution", resolution},
          {"detail", detail},
          {"passed", passed()},
          {"runtime_s", runtime_s}};
}

std::vector<ScalarField> standard_test_functions(const ManifoldModel& m, std::uint64_t seed) {
  std::vector<ScalarField> out;
  out.push_back(ScalarField::constant(m.basis_ptr(), 1.0));
  for (int i = 1; i <= 3 && i < m.basis().size(); ++i) {
    std::vector<double> c(m.basis().size(), 0.0);
    c[i] = 1.0;
    out.push_back(ScalarField::from_coefficients(m.basis_ptr(), c));
  }
  std::mt19937_64 rng(seed);
  out.push_back(random_low_field(m, rng));
  return out;
}

FunctionPtr random_log_factor(const ManifoldModel& m, std::mt19937_64& rng, double amplitude) {
  ScalarField f = random_low_field(m, rng);
  const auto g = synthesize(f).grid();
  double sup = 0.0;
  for (double v : g) sup = std::max(sup, std::abs(v));
  return (amplitude / sup * f).as_function();
}

double blowup_ricci_norm2(const ConformalFactor& f, const GreenField& gl, const Point& q) {
  const int n = f.base().n();
  Chart<2> c = f.base().chart<2>(q);
  Jet<2> w = f.w_jet(c);
  Jet<2> W = c.W + w + log(gl.jet(c)) * (2.0 / (n - 2.0));
  auto rc = pointwise::ricci_frame(pointwise::Metric<2>(W), c.W.value() + w.value());
  double s = 0.0;
  for (double v : rc) s += v * v;
  return s;
}

VerificationReport check_weak_identity(const ModelPtr& m, const Point& pole, const std::vector<ScalarField>& phis,
                                       const VerifySettings& s) {
  const auto t0 = Clock::now();
  const int n = m->n();
  if (n == 4) throw LabError(ErrorCode::UnsupportedDimension, "weak identity needs n != 4");
  ConformalFactor base(m);
  VerificationReport rep;
  rep.suite = "weak-identity";
  rep.backend = m->id();
  rep.hypotheses = hypothesis_ledger(base);
  require_yamabe_positive(rep.hypotheses, m->id());
  rep.resolution = s.to_json();

  GreenPtr gl = make_green(base, OperatorTag::L, pole, s.green);
  PolarRule rule(*m, pole, s.polar);
  const double e = (n - 4.0) / (n - 2.0);
  const double k = (n - 4.0) / ((n - 2.0) * (n - 2.0));
  const double cn = paneitz_constant(n);

  FieldBank bank(m->basis());
  for (const auto& phi : phis) {
    bank.add(phi);
    bank.add(apply_P(*m, phi));
  }
  const size_t nf = phis.size();
  std::vector<double> pairing(nf, 0.0), ricci(nf, 0.0), abs_pairing(nf, 0.0), abs_ricci(nf, 0.0), vals;
  for (int r = 0; r < rule.ring_count(); ++r) {
    // G_L is zonal about the pole, so the ring point carries G and the curvature term.
    const Point& q0 = rule.ring_point(r);
    const double ge = gl->power(q0, e);
    const double rc2 = rule.ring_radius(r) > s.exclusion ? blowup_ricci_norm2(base, *gl, q0) : 0.0;
    for (int d = 0; d < rule.direction_count(); ++d) {
      const double wgt = rule.ring_weight(r) * rule.direction_weight(d) * ge;
      bank.eval(rule.point(r, d), vals);
      for (size_t i = 0; i < nf; ++i) {
        pairing[i] += wgt * vals[2 * i + 1];
        ricci[i] += wgt * rc2 * vals[2 * i];
        abs_pairing[i] += std::abs(wgt * vals[2 * i + 1]);
        abs_ricci[i] += std::abs(wgt * rc2 * vals[2 * i]);
      }
    }
  }
  const double tol_rel = relative_tol(s, m->is_product() ? 1e-2 : 1e-6);
  for (size_t i = 0; i < nf; ++i) {
    const double point = cn * phis[i].eval(pole);
    const double rterm = k * ricci[i];
    // Scale: sizes of the integrands, so test functions vanishing at the pole are not judged on noise.
    const double scale = std::max({abs_pairing[i], std::abs(point), std::abs(k) * abs_ricci[i]});
    CheckRecord c = make_check(n == 3 ? "n3-identity" : "weak-identity", std::abs(pairing[i] - point + rterm),
                               tol_rel * scale);
    c.detail = {{"function", i}, {"pairing", pairing[i]}, {"point_term", point}, {"ricci_term", rterm}, {"scale", scale}};
    rep.checks.push_back(std::move(c));
  }
  rep.runtime_s = seconds_since(t0);
  return rep;
}

VerificationReport check_4d_identity(const ModelPtr& m, const Point& pole, const std::vector<ScalarField>& phis,
                                     const VerifySettings& s) {
  const auto t0 = Clock::now();
  if (m->n() != 4) throw LabError(ErrorCode::UnsupportedDimension, "the 4-dimensional identity needs n = 4");
  ConformalFactor base(m);
  VerificationReport rep;
  rep.suite = "4d-identity";
  rep.backend = m->id();
  rep.hypotheses = hypothesis_ledger(base);
  require_yamabe_positive(rep.hypotheses, m->id());
  rep.resolution = s.to_json();

  GreenPtr gl = make_green(base, OperatorTag::L, pole, s.green);
  PolarRule rule(*m, pole, s.polar);
  FieldBank bank(m->basis());
  for (const auto& phi : phis) {
    bank.add(phi);
    bank.add(apply_P(*m, phi));
  }
  const size_t nf = phis.size();
  std::vector<double> pairing(nf, 0.0), ricci(nf, 0.0), abs_pairing(nf, 0.0), abs_ricci(nf, 0.0), vals;
  for (int r = 0; r < rule.ring_count(); ++r) {
    const Point& q0 = rule.ring_point(r);
    const double lg = std::log(gl->value(q0));
    const double rc2 = rule.ring_radius(r) > s.exclusion ? blowup_ricci_norm2(base, *gl, q0) : 0.0;
    for (int d = 0; d < rule.direction_count(); ++d) {
      const double wgt = rule.ring_weight(r) * rule.direction_weight(d);
      bank.eval(rule.point(r, d), vals);
      for (size_t i = 0; i < nf; ++i) {
        pairing[i] += wgt * lg * vals[2 * i + 1];
        ricci[i] += wgt * rc2 * vals[2 * i];
        abs_pairing[i] += std::abs(wgt * lg * vals[2 * i + 1]);
        abs_ricci[i] += std::abs(wgt * rc2 * vals[2 * i]);
      }
    }
  }
  const ScalarField Q = q_curvature(*m);
  const double target = 16.0 * kPi * kPi;
  const double tol_rel = relative_tol(s, m->is_product() ? 2e-2 : 1e-6);
  for (size_t i = 0; i < nf; ++i) {
    const double point = target * phis[i].eval(pole);
    const double rterm = 0.5 * ricci[i];
    const double qterm = integrate(Q * phis[i]);
    const double scale = std::max({abs_pairing[i], std::abs(point), 0.5 * abs_ricci[i], std::abs(qterm)});
    CheckRecord c = make_check("4d-identity", std::abs(pairing[i] - point + rterm + qterm), tol_rel * scale);
    c.detail = {{"function", i},      {"pairing", pairing[i]}, {"point_term", point},
                {"ricci_term", rterm}, {"q_term", qterm},       {"scale", scale}};
    rep.checks.push_back(std::move(c));
  }
  rep.runtime_s = seconds_since(t0);
  return rep;
}

VerificationReport check_total_q(const ConformalFactor& f, const Point& pole, const VerifySettings& s) {
  const auto t0 = Clock::now();
  const ManifoldModel& m = f.base();
  if (m.n() != 4) throw LabError(ErrorCode::UnsupportedDimension, "total Q formula needs n = 4");
  VerificationReport rep;
  rep.suite = "total-q";
  rep.backend = m.id() + (f.is_identity() ? "" : "+conformal");
  rep.hypotheses = hypothesis_ledger(f);
  require_yamabe_positive(rep.hypotheses, m.id());
  rep.resolution = s.to_json();

  double integral_q = 0.0;
  if (f.is_identity()) {
    integral_q = m.q_value() * m.volume();
  } else {
    // Q of e^{2w} g from the curvature formula, integrated against e^{4w} dmu.
    const auto q = synthesize(conformal_q_direct(m, f)).grid();
    const auto& w = m.volume_weights();
    for (int i = 0; i < m.basis().node_count(); ++i) integral_q += w[i] * std::exp(4.0 * f.w(m.basis().node(i))) * q[i];
  }

  GreenPtr gl = make_green(f, OperatorTag::L, pole, s.green);
  PolarRule rule(m, pole, s.polar);
  double dir_total = 0.0;
  for (int d = 0; d < rule.direction_count(); ++d) dir_total += rule.direction_weight(d);
  double defect = 0.0;
  for (int r = 0; r < rule.ring_count(); ++r) {
    if (rule.ring_radius(r) <= s.exclusion) continue;
    if (f.is_identity()) {
      defect += rule.ring_weight(r) * dir_total * blowup_ricci_norm2(f, *gl, rule.ring_point(r));
      continue;
    }
    for (int d = 0; d < rule.direction_count(); ++d) {
      const Point q = rule.point(r, d);
      defect += rule.ring_weight(r) * rule.direction_weight(d) * std::exp(4.0 * f.w(q)) * blowup_ricci_norm2(f, *gl, q);
    }
  }
  defect *= 0.5;

  const double target = 16.0 * kPi * kPi;
  const double sum = integral_q + defect;
  const double tol_rel = relative_tol(s, m.is_product() ? 2e-2 : (f.is_identity() ? 1e-8 : 1e-3));
  const bool equality = defect <= 1e-8 * target;
  CheckRecord c = make_check("total-q", std::abs(sum - target), tol_rel * target);
  c.detail = {{"integral_q", integral_q}, {"defect", defect}, {"sum", sum}, {"target", target},
              {"verdict", equality ? "EQUALITY" : "STRICT"}};
  rep.detail = c.detail;
  rep.checks.push_back(std::move(c));
  rep.runtime_s = seconds_since(t0);
  return rep;
}

namespace {

struct LawResult {
  double worst = 0.0;  // max residual / scale
  int samples = 0;
  void add(double residual, double scale) {
    worst = std::max(worst, scale > 0 ? residual / scale : residual);
    ++samples;
  }
};

void push_law(VerificationReport& rep, const std::string& eq, const LawResult& r, double tol) {
  CheckRecord c = make_check(eq, r.worst, tol);
  c.detail = {{"samples", r.samples}, {"residual_is_relative", true}};
  rep.checks.push_back(std::move(c));
}

}  // namespace

VerificationReport check_covariance(const ModelPtr& mp, int trials, std::uint64_t seed, const VerifySettings& s) {
  const auto t0 = Clock::now();
  const ManifoldModel& m = *mp;
  const int n = m.n();
  VerificationReport rep;
  rep.suite = "covariance";
  rep.backend = m.id();
  ConformalFactor base(mp);
  rep.hypotheses = hypothesis_ledger(base);
  rep.resolution = s.to_json();
  rep.resolution["trials"] = trials;
  rep.resolution["seed"] = seed;
  const double tol = relative_tol(s, 1e-8);
  std::mt19937_64 rng(seed);
  const ModeBasis& b = m.basis();
  const auto& wts = m.volume_weights();

  // Bilinear form: int P~phi psi dmu~ = int P(rho phi) rho psi dmu with g~ = rho^{4/(n-4)} g (rho = 1 for n = 4).
  {
    LawResult law;
    const double kp = n == 4 ? 0.0 : 0.5 * (n - 4.0);
    for (int t = 0; t < trials; ++t) {
      FunctionPtr w = random_log_factor(m, rng);
      ConformalFactor f = ConformalFactor::from_log(mp, w);
      FunctionPtr phi = random_low_field(m, rng).as_function();
      FunctionPtr psi = random_low_field(m, rng).as_function();
      FunctionPtr rho_phi = make_function([w, phi, kp](const auto& at) {
        using std::exp;
        return exp(call(*w, at) * kp) * call(*phi, at);
      });
      double lhs = 0.0, rhs = 0.0, scale = 0.0;
      for (int i = 0; i < b.node_count(); ++i) {
        const Point& x = b.node(i);
        const double wx = w->value(x);
        const double a = wts[i] * std::exp(n * wx) * apply_at(f, OperatorTag::P, *phi, x) * psi->value(x);
        const double c = wts[i] * apply_at(m, OperatorTag::P, *rho_phi, x) * std::exp(kp * wx) * psi->value(x);
        lhs += a;
        rhs += c;
        scale += std::abs(a);
      }
      law.add(std::abs(lhs - rhs), scale);
    }
    push_law(rep, "bilinear-covariance", law, tol);
  }

  // Green transport against the Moebius oracle G_{Phi^* g}(p, q) = G_g(Phi p, Phi q).
  if (!m.is_product()) {
    LawResult law;
    for (int t = 0; t < trials; ++t) {
      MoebiusMap phi = MoebiusMap::random(n, rng);
      ConformalFactor f = ConformalFactor::from_log(mp, phi.log_factor());
      const Point p = random_point(m, rng);
      for (OperatorTag tag : {OperatorTag::L, OperatorTag::P}) {
        if (tag == OperatorTag::P && n == 4) continue;
        GreenPtr g = make_green(f, tag, p, s.green);
        GreenPtr oracle = green_sphere_closed_form(mp, tag, phi.apply(p));
        for (int j = 0; j < 3; ++j) {
          const Point q = random_point_away(m, p, 0.3, rng);
          const double o = oracle->value(phi.apply(q));
          law.add(std::abs(g->value(q) - o), std::abs(o));
        }
      }
    }
    push_law(rep, "green-transport", law, tol);
  }

  // Density of the blown-up Ricci term: transforms by rho(p)^{-e} rho^{e} with g~ = rho^{4/(n-2)} g.
  {
    LawResult law;
    const double e = (n - 4.0) / (n - 2.0);
    const double kl = 0.5 * (n - 2.0);
    for (int t = 0; t < trials; ++t) {
      FunctionPtr w = random_log_factor(m, rng);
      ConformalFactor f = ConformalFactor::from_log(mp, w);
      const Point p = random_point(m, rng);
      const Point q = random_point_away(m, p, 0.5, rng);
      GreenPtr gl = make_green(base, OperatorTag::L, p, s.green);
      GreenPtr gt = make_green(f, OperatorTag::L, p, s.green);
      const double lhs = gt->power(q, e) * blowup_ricci_norm2(f, *gt, q) * std::exp(n * f.w(q));
      const double factor = std::exp(kl * e * (f.w(q) - f.w(p)));
      const double rhs = factor * gl->power(q, e) * blowup_ricci_norm2(base, *gl, q);
      // Size of the terms that cancel inside the Ricci tensor: |d log G|^2 + |D^2 log G| in the base frame.
      Chart<2> c = m.chart<2>(q);
      Jet<2> lg = log(gl->jet(c));
      double h = 0.0;
      for (int i = 0; i < n; ++i) {
        h += lg.d(i).value() * lg.d(i).value();
        for (int j = 0; j < n; ++j) h += std::abs(lg.d(i).d(j).value());
      }
      h *= std::exp(-2.0 * c.W.value());
      law.add(std::abs(lhs - rhs), factor * gl->power(q, e) * h * h);
    }
    push_law(rep, n == 4 ? "measure-identity-4d" : "measure-identity", law, tol);
  }

  if (n == 4) {
    LawResult cov, qlaw;
    for (int t = 0; t < trials; ++t) {
      FunctionPtr w = random_log_factor(m, rng);
      ConformalFactor f = ConformalFactor::from_log(mp, w);
      ScalarField phi_field = random_low_field(m, rng);
      FunctionPtr phi = phi_field.as_function();
      const auto pg = synthesize(apply_P(m, phi_field)).grid();
      double pmax = 0.0;
      for (double v : pg) pmax = std::max(pmax, std::abs(v));
      const Point q = random_point(m, rng);
      const double e4 = std::exp(-4.0 * f.w(q));
      const double pb = apply_at(m, OperatorTag::P, *phi, q);
      cov.add(std::abs(apply_at(f, OperatorTag::P, *phi, q) - e4 * pb), e4 * pmax);
      const double pw = apply_at(m, OperatorTag::P, *w, q);
      const double qt = q_at(f, q);
      qlaw.add(std::abs(qt - e4 * (pw + m.q_value())), e4 * (std::abs(pw) + std::abs(m.q_value())));
    }
    push_law(rep, "paneitz-covariance-4d", cov, tol);
    push_law(rep, "q-transform-4d", qlaw, tol);
  }

  // c_n G_P - G_L^{(n-4)/(n-2)} transforms by rho(p)^{-1} rho^{-1} with g~ = rho^{4/(n-4)} g.
  if (n >= 5 && !m.is_product()) {
    LawResult law;
    const double e = (n - 4.0) / (n - 2.0);
    const double kp = 0.5 * (n - 4.0);
    const double cn = paneitz_constant(n);
    for (int t = 0; t < trials; ++t) {
      FunctionPtr w = random_log_factor(m, rng);
      ConformalFactor f = ConformalFactor::from_log(mp, w);
      const Point p = random_point(m, rng);
      const Point q = random_point_away(m, p, 0.3, rng);
      GreenPtr gl = make_green(base, OperatorTag::L, p), gp = make_green(base, OperatorTag::P, p);
      GreenPtr tl = make_green(f, OperatorTag::L, p), tp = make_green(f, OperatorTag::P, p);
      const double factor = std::exp(-kp * (f.w(p) + f.w(q)));
      const double lhs = cn * tp->value(q) - tl->power(q, e);
      const double rhs = factor * (cn * gp->value(q) - gl->power(q, e));
      law.add(std::abs(lhs - rhs), factor * std::max(std::abs(cn * gp->value(q)), gl->power(q, e)));
    }
    push_law(rep, "mass-difference-transport", law, tol);
  }

  rep.runtime_s = seconds_since(t0);
  return rep;
}

std::vector<Point> default_poles(const ManifoldModel& m, int count) {
  const int N = m.is_product() ? m.n() : m.n() + 1;
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    const double th = kPi * (i + 0.3) / std::max(count, 1);
    Point p;
    p.x.assign(N, 0.0);
    p.x[N - 1] = std::cos(th);
    p.x[0] = std::sin(th);
    if (m.is_product()) p.t = m.ell_internal() * (i + 0.3) / std::max(count, 1);
    out.push_back(std::move(p));
  }
  return out;
}

VerificationReport check_sign_theorems(const ConformalFactor& f, const std::vector<Point>& poles, const VerifySettings& s) {
  const auto t0 = Clock::now();
  const ManifoldModel& m = f.base();
  const int n = m.n();
  VerificationReport rep;
  rep.suite = "signs";
  rep.backend = m.id() + (f.is_identity() ? "" : "+conformal");
  rep.hypotheses = hypothesis_ledger(f);
  rep.resolution = s.to_json();

  std::optional<SignVerdict> expected;
  if (n > 4) expected = SignVerdict::Positive;
  if (n == 3) expected = SignVerdict::Negative;
  const bool asserted = expected.has_value() && rep.hypotheses.theorem_gate();
  const std::string tag =
      !asserted ? "sign-exploratory" : (*expected == SignVerdict::Positive ? "sign-positive" : "sign-negative");

  std::vector<GreenPtr> fields;
  try {
    for (const auto& p : poles) fields.push_back(make_green(f, OperatorTag::P, p, s.green));
  } catch (const LabError& err) {
    CheckRecord c = make_check(tag, 0.0, 0.0, false);
    c.detail = {{"error", err.what()}};
    rep.checks.push_back(std::move(c));
    rep.runtime_s = seconds_since(t0);
    return rep;
  }
  const SignScanSummary sum = sign_scan(fields);
  double violation = 0.0;
  nlohmann::json per_pole = nlohmann::json::array();
  for (const auto& sc : sum.poles) {
    const double big = std::max(std::abs(sc.min), std::abs(sc.max));
    if (expected == SignVerdict::Positive) violation = std::max(violation, std::max(0.0, -sc.min) / big);
    if (expected == SignVerdict::Negative) violation = std::max(violation, std::max(0.0, sc.max) / big);
    per_pole.push_back({{"min", sc.min},
                        {"max", sc.max},
                        {"diagonal", std::isfinite(sc.diagonal) ? nlohmann::json(sc.diagonal) : nlohmann::json()},
                        {"verdict", to_string(sc.verdict)}});
  }
  CheckRecord c = make_check(tag, violation, 0.0, asserted);
  if (expected) c.pass = c.pass && sum.verdict == *expected;
  c.detail = {{"verdict", to_string(sum.verdict)}, {"poles", per_pole}};
  rep.detail = {{"verdict", to_string(sum.verdict)}, {"asserted", asserted}};
  rep.checks.push_back(std::move(c));
  rep.runtime_s = seconds_since(t0);
  return rep;
}

}  // namespace conflab
