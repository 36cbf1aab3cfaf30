// Residual checks of the structural identities satisfied by the gradient
// components psi in {v, w} along the characteristic fan:
//
//   transport:  (L + 1/2 trchi) Lb psi = mu lap_ang psi + H - F
//   energy:     E1(t,u) - E1(1,u) + F1(t,u)
//                 = -int_D Phi L psi - int_D [ 1/2 L(c^-2 mu) (L psi)^2
//                                            + 1/2 trchi L psi Lb psi ]
//
// with H = 1/2 c^-2 mu trchi L psi and
// F = 1/2 p mu v^(p-1) Lv L psi + 1/2 p c^2 v^(p-1) (Lv T psi + Tv L psi).
// For psi = v the angular Laplacian vanishes; for psi = w (the radial part
// of the Cartesian gradient components) it contributes the l=1 eigenvalue
// term mu lap_ang psi = -2 mu w / r^2, and Phi = F + 2 mu w / r^2.
// L-derivatives are 2nd-order time differences along each characteristic;
// integrals use the measure 4 pi r^2 du dt.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "geometry.hpp"
#include "solver.hpp"

namespace shockwave {

enum class PsiSelector { v, w };
const char* psi_name(PsiSelector s);

struct ResidualReport {
    std::string name;
    std::size_t samples = 0;
    double max_abs = 0.0;
    double l2 = 0.0;  // RMS over samples
    std::optional<double> refinement_order;
};

// Pointwise transport-identity residual over all fan samples in the
// pre-shock window mu > mu_floor (two samples at each series end are
// excluded to keep the double time stencil centered).
ResidualReport transport_residual(const CharacteristicFan& fan, int p, PsiSelector psi,
                                  double mu_floor = 0.1);

struct EnergyFlux {
    double E1 = 0.0;
    double F1 = 0.0;
    double E2 = 0.0;
    double F2 = 0.0;  // carries mu |angular gradient|^2: identically 0 radially
};

// Energies over Sigma_t^u and fluxes over C_u^t at sample time index
// t_index and label index u_index (u = fan.u[u_index] > 0).
EnergyFlux energy_flux(const CharacteristicFan& fan, std::size_t t_index, std::size_t u_index,
                       PsiSelector psi);

// Residual of the multiplier-L energy identity on D^{t,u}, normalized by
// max(E1(t,u), 1e-30).
ResidualReport energy_identity_residual(const CharacteristicFan& fan, int p, std::size_t t_index,
                                        std::size_t u_index, PsiSelector psi);

struct D2Growth {
    double slope = 0.0;
    double pearson = 0.0;
    std::size_t n = 0;
};

// Fit of log max|dr v| against log(1/mu_min) over the near-blow-up window
// mu_min <= window_hi; the second-derivative blow-up law predicts slope 1.
D2Growth d2_growth(std::span<const MuHistoryRow> history, double window_hi = 0.5);

}  // namespace shockwave
