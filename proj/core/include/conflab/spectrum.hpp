#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "conflab/green.hpp"
#include "conflab/operators.hpp"

namespace conflab {

// One distinct eigenvalue of a symbol table; ties within 1e-10 (relative) are merged.
struct EigenLevel {
  double value = 0.0;
  int multiplicity = 0;
  std::vector<int> modes;
};

std::vector<EigenLevel> eigen_levels(const SpectralSymbol& s);

struct SpectrumSummary {
  OperatorTag op = OperatorTag::P;
  std::vector<EigenLevel> levels;  // ascending
  double lambda1 = 0.0;            // smallest eigenvalue
  int smallest_positive = -1;      // level indices, -1 if absent
  int largest_negative = -1;
  int kernel_dimension = 0;
  bool kernel_is_constants = true;  // kernel contained in the constants

  // Sign scan of G_P that decides which claims apply; empty when G_P does not exist.
  std::optional<SignVerdict> green_sign;
  int extremal = -1;  // level examined for the claims
  double extremal_min = 0.0, extremal_max = 0.0;
  bool simple = false;
  bool sign_definite = false;
  bool ordering = false;  // every eigenvalue of the other sign is strictly larger in modulus
  bool claims_asserted = false;
  bool claims_hold() const { return simple && sign_definite && ordering; }
};

double lambda1_L(const ManifoldModel& m);

// Throws ZERO_FUNCTION if phi vanishes on the grid.
double yamabe_quotient(const ManifoldModel& m, const ScalarField& phi);

struct YamabeDescent {
  double value = 0.0;
  double start_value = 0.0;
  int iterations = 0;
  std::vector<double> coefficients;
};

// Projected gradient descent of the quotient over the first `dim` modes.
YamabeDescent minimize_yamabe(const ManifoldModel& m, int dim, std::uint64_t seed, int max_iter = 400);

// Value of the quotient on the round sphere of the same dimension: n(n-1)|S^n|^{2/n}.
double round_sphere_yamabe(int n);

SpectrumSummary spectrum_summary(const ManifoldModel& m, OperatorTag tag);

// Simplicity, sign of the extremal eigenfunction and ordering for P, gated on the G_P sign.
SpectrumSummary paneitz_spectrum_check(const ModelPtr& m, std::optional<SignVerdict> green_sign = std::nullopt);

// CSV: rank, eigenvalue, multiplicity, extremal_flag
void write_spectrum_csv(std::ostream& os, const SpectrumSummary& s);

}  // namespace conflab
