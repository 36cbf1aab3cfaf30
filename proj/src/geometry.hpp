// Acoustic geometry in spherical symmetry: outgoing characteristics as
// integral curves of L = dt + c dr, the inverse foliation density mu by
// two independent routes, and the radial null frame.
//
// mu is tracked per characteristic by the transport equation
//
//     d mu / dt = c^-1 (Lc) mu + mu dr c,      Lc = dt c + c dr c,
//
// and cross-checked against the eikonal/Jacobian form mu = -c dr/du
// obtained by differencing characteristic positions over their labels.
// Both start from mu = c at t = 1.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pulse.hpp"
#include "solver.hpp"
#include "state.hpp"

namespace shockwave {

// Frame vectors in (dt, dr) components for the metric diag(-c^2, 1):
//   L    = (1, c)                outgoing null
//   Lbar = (c^-2 mu, -c^-1 mu)   incoming null
//   T    = (0, -c^-1 mu)         inward tangent of Sigma_t, Tu = 1
//   That = (0, -1)               unit inward normal
struct NullFrame {
    double L[2];
    double Lbar[2];
    double T[2];
    double That[2];
};

NullFrame null_frame(double mu, double c);

// g(X,Y) = -c^2 X^0 Y^0 + X^1 Y^1.
double lorentz_dot(double c, const double (&x)[2], const double (&y)[2]);

// One time level of the fan: per-characteristic geometry plus field traces
// interpolated at the characteristic positions (for diagnostics).
struct FanSample {
    double t = 1.0;
    std::vector<double> r, c, mu_ode, mu_jac, trchi, trchi_check;
    std::vector<double> v, w, dvdr, dwdr;
};

struct CharacteristicFan {
    double delta = 0.0;
    std::vector<double> u;           // labels, u_j = j*delta/M
    std::vector<FanSample> samples;  // time series from t = 1

    std::size_t count() const { return u.size(); }
    double du() const { return u[1] - u[0]; }
    const FanSample& latest() const { return samples.back(); }
};

// Labels u_j = j*delta/M seeded at r = 1-u with mu = c(1, 1-u).
// fan_count is M (M+1 characteristics), M >= 8.
CharacteristicFan seed_fan(const PulseParams& params, const FieldState& state,
                           std::size_t fan_count);

// One RK4 step of the characteristic system from state a.t to b.t. Field
// values at stage times come from cubic Hermite reconstruction in t
// (endpoint values and PDE time derivatives) and classical cubic
// interpolation in r, keeping the step 4th order in dt. Slope-limited
// interpolation is deliberately not used here: limiting clamps node
// slopes at smooth extrema, and the resulting O(dr^2) kinks in c and
// dr(c) accumulate along characteristics and visibly bias mu at default
// resolution, while the fields stay far from the hyperbolicity floor so
// overshoot is harmless in the tracked window.
void advance_fan(CharacteristicFan& fan, const FieldState& a, const FieldState& b, int p,
                 double h_min = kHyperbolicityFloor);

// mu = -c dr/du by central differences of r over u (one-sided at the fan
// edges). Returns signed values; a sign flip marks crossed characteristics.
std::vector<double> mu_jacobian(const CharacteristicFan& fan, std::size_t sample_index);

// Wavefront expansion trchi = 2c/r and its deviation from the flat cone
// value, trchi_check = 2c/r - 2/rho with rho = t-u.
std::pair<std::vector<double>, std::vector<double>> trchi_check(const CharacteristicFan& fan,
                                                                std::size_t sample_index);

}  // namespace shockwave
