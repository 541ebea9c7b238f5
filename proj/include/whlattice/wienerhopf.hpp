#pragma once

#include <stdexcept>

#include "whlattice/lattice.hpp"
#include "whlattice/symbols.hpp"

namespace whl {

struct ResidualTooLarge : std::runtime_error {
  ResidualTooLarge(double residual, double tol);
  double residual;
  double tol;
};

struct FactorOptions {
  double positivity_floor = 1e-8;
  double residual_tol = 1e-7;
  double leak_tol = 1e-7;
  double trim_tol = 1e-14;   // edge coefficients below this times the Wiener norm are cut
  bool series_mode = false;  // exp(Lambda+) by a coefficient-space power series instead of the grid
  int series_radius = 40;
  bool enforce_residual = true;
};

struct WienerHopfFactor {
  HalfSpace halfspace;
  SymbolCoefficients gamma;       // coefficients of omega_+, zero off H
  int grid = 0;
  double factorization_residual = 0;  // sup over grid of |omega - omega_+ omega_+^*|
  double support_leak = 0;            // projected-away mass / ||gamma||_W
  double imag_residue = 0;
  double trim_tail = 0;               // mass dropped by trimming the box
  double lambda0 = 0;
  double omega_wiener = 0;            // ||omega||_W on the same grid

  double gamma_wiener() const { return gamma.wiener_norm(); }
};

// Lambda_+ from symmetric log coefficients (exact half-space split).
SymbolCoefficients split_plus(const SymbolCoefficients& lambda, const HalfSpace& H);

// Weight of grid slot i in the periodic split: 1 for the H side, 0 for the
// other side, 1/2 on slots paired with themselves or on both/neither sides.
double split_weight(const TorusGrid& g, std::size_t slot, const HalfSpace& H);

// sigma given by its values on the torus grid
WienerHopfFactor factorize(const TorusGrid& sigma_values, const HalfSpace& H, const FactorOptions& opt = {});
WienerHopfFactor factorize(const SymbolCoefficients& sigma, const HalfSpace& H, int M, const FactorOptions& opt = {});

struct FactorizationReport {
  double residual = 0;        // sup |1/sigma - omega_+ omega_+^*|
  double omega_wiener = 0;    // ||omega||_W
  double plus_wiener_sq = 0;  // ||omega_+||_W^2, always >= ||omega||_W
  bool norms_consistent = true;
};
FactorizationReport verify_factorization(const TorusGrid& sigma_values, const WienerHopfFactor& f);
FactorizationReport verify_factorization(const SymbolCoefficients& sigma, const WienerHopfFactor& f, int M);

// omega_+ values on an M-grid, from gamma
TorusGrid plus_values(const WienerHopfFactor& f, int M);

// coefficients of 1/omega_+ = exp(-Lambda_+), projected to H and trimmed
SymbolCoefficients inverse_plus(const WienerHopfFactor& f, double trim_tol = 1e-14);

}  // namespace whl
