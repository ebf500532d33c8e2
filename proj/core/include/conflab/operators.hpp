#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "conflab/conformal.hpp"

namespace conflab {

enum class OperatorTag { L, P };

std::string to_string(OperatorTag t);

// Per-mode eigenvalues of L or P on a catalog backend (curvature is constant there,
// so both operators are diagonal in the mode basis).
struct SpectralSymbol {
  BasisPtr basis;
  OperatorTag op = OperatorTag::L;
  std::string metric = "base";
  std::vector<double> eigenvalues;

  double max_abs() const;
  ScalarField apply(const ScalarField& f) const;
};

SpectralSymbol build_symbol(const ManifoldModel& m, OperatorTag tag);

// Closed-form eigenvalue for Fourier frequency w = 2 pi k / ell and sphere-factor degree l
// (internal units; divided by the homothety scale afterwards).
double symbol_value(const ManifoldModel& m, OperatorTag tag, double w, int l);

ScalarField apply_L(const ManifoldModel& m, const ScalarField& phi);
ScalarField apply_P(const ManifoldModel& m, const ScalarField& phi);

// Direct pointwise evaluation of L or P at p for the metric e^{2w} g, from jets of phi.
double apply_at(const ConformalFactor& f, OperatorTag tag, const SmoothFunction& phi, const Point& p);
double apply_at(const ManifoldModel& m, OperatorTag tag, const SmoothFunction& phi, const Point& p);

// Second-order form of the Paneitz pairing, by quadrature.
double quadratic_form_E(const ManifoldModel& m, const ScalarField& u, const ScalarField& v);

// CSV: mode_id, factor_indices, eigenvalue_L, eigenvalue_P
void write_symbol_csv(std::ostream& os, const SpectralSymbol& L, const SpectralSymbol& P);

}  // namespace conflab
