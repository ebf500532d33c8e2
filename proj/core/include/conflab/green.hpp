#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "conflab/operators.hpp"
#include "conflab/polar.hpp"

namespace conflab {

// Leading behaviour coefficient * r^exponent of a Green's function at its pole.
struct SingularModel {
  double coefficient = 0.0;
  double exponent = 0.0;
};

// G(p, .) for L or P with delta_p normalized against the Riemannian measure.
class GreenField : public SmoothFunction {
 public:
  GreenField(ModelPtr model, OperatorTag tag, Point pole) : model_(std::move(model)), tag_(tag), pole_(std::move(pole)) {}

  OperatorTag op() const { return tag_; }
  const Point& pole() const { return pole_; }
  const ManifoldModel& model() const { return *model_; }
  const ModelPtr& model_ptr() const { return model_; }
  virtual std::string representation() const = 0;
  SingularModel singular() const;

  // G^e at q, with the finite limit at the pole where one exists (e.g. G_L^{-1} -> 0).
  virtual double power(const Point& q, double e) const = 0;
  // G(p, p) when finite (Paneitz, n = 3), +inf otherwise.
  double diagonal_value() const { return power(pole_, 1.0); }

 private:
  ModelPtr model_;
  OperatorTag tag_;
  Point pole_;
};

using GreenPtr = std::shared_ptr<const GreenField>;

// Round sphere closed forms in the chordal distance.
GreenPtr green_sphere_closed_form(ModelPtr m, OperatorTag tag, const Point& pole);

struct GreenCutoff {
  int L = 8;               // sphere-factor degrees of the expansion
  double tail_tol = 1e-3;  // CUTOFF_TOO_LOW when the last degree carries more than this fraction
};

// Product backends: cylinder kernel plus the eigen-expansion over sphere-factor degrees, with the
// circle direction of every degree summed in closed form.
GreenPtr green_eigen_expansion(ModelPtr m, OperatorTag tag, const Point& pole, const GreenCutoff& cutoff = {});

// Relative size of the last retained degree (0 for closed forms).
double green_tail_estimate(const GreenField& g);

// Green's function of the conformal metric described by f (the base of f must be g's model).
GreenPtr transport_green(GreenPtr g, const ConformalFactor& f);

// Closed form on spheres, eigen-expansion on products, transported when f is not the identity.
GreenPtr make_green(const ConformalFactor& f, OperatorTag tag, const Point& pole, const GreenCutoff& cutoff = {});

// Zonal eigen-series on a round sphere with Riesz means of order kappa: sum_l (1 - mu_l/mu_L)^kappa
// dim H_l / Vol  P_l(cos theta) / lambda_l.
double zonal_green_series(const ManifoldModel& m, OperatorTag tag, double cos_theta, int L, int kappa = 2);

enum class SignVerdict { Positive, Negative, Mixed };
std::string to_string(SignVerdict v);

struct SignScan {
  Point pole;
  double theta = 0.0;  // min over unmasked nodes (n >= 4) or max (n = 3)
  double min = 0.0, max = 0.0;
  double diagonal = std::numeric_limits<double>::quiet_NaN();  // G(p, p) when finite
  int scanned = 0, masked = 0;
  SignVerdict verdict = SignVerdict::Mixed;
};

struct SignScanSummary {
  std::vector<SignScan> poles;
  SignVerdict verdict = SignVerdict::Mixed;
};

// Default mask radius: three grid spacings of the model basis, at most pi/4 (model metric).
double default_mask_radius(const ManifoldModel& m);
SignScan sign_scan(const GreenField& g, double mask_radius = -1.0);
SignScanSummary sign_scan(const std::vector<GreenPtr>& fields, double mask_radius = -1.0);

// CSV: pole_id, node_index, value, masked_flag
void write_green_csv(std::ostream& os, const std::vector<GreenPtr>& fields, double mask_radius = -1.0);

struct ComparisonResult {
  int n = 0;
  double min_margin = 0.0, max_margin = 0.0;
  Point argmin, argmax;
  double scale = 0.0;  // max |G_L^{(n-4)/(n-2)}| over the compared nodes
  bool includes_diagonal = false;
  std::string verdict;  // EQUALITY | STRICT | VIOLATED
};

// Margin c_n G_P - G_L^{(n-4)/(n-2)} (n > 4) or -(G_L^{-1} + 256 pi^2 G_P) (n = 3) at the
// unmasked model nodes (plus the diagonal for n = 3).
ComparisonResult compare_green(const GreenField& gl, const GreenField& gp, double tol = 1e-8, double mask_radius = -1.0);

struct MassResult {
  Point pole;
  double A_expansion = 0.0;
  double A_integral = 0.0;
  double tolerance = 0.0;
};

// Paneitz mass of a conformal sphere metric (n = 5, 6, 7) by the constant term of
// c_n G_P - G_L^{(n-4)/(n-2)} and by the Ricci integral of the blow-up metric.
MassResult extract_mass(const ConformalFactor& f, const Point& pole, const PolarSpec& spec = {}, double tol = 1e-6);

}  // namespace conflab
