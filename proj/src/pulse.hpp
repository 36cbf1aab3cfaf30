// Short-pulse initial data for the quasilinear wave equation
//
//     -(1 + (dt phi)^p) dt^2 phi + Laplace phi = 0
//
// in spherical symmetry. The data family at t = 1 is
//
//     phi  = delta^(2-eps0) * phi0((r-1)/delta),
//     dtphi = delta^(1-eps0) * phi1((r-1)/delta),
//
// with profiles supported in s = (r-1)/delta in (-1,0). phi1 is derived
// from phi0 so that the outgoing derivative (dt+dr)^k phi at t=1 carries
// the extra smallness order delta^(2-eps0-k*max(0,kappa)),
// kappa = 1-(1-eps0)p.

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "errors.hpp"
#include "state.hpp"

namespace shockwave {

struct PulseParams {
    double delta = 0.1;     // pulse width, 0 < delta <= 0.5
    double eps0 = 0.5;      // smallness exponent, in (0,1)
    int p = 1;              // nonlinearity power, >= 1
    double amplitude = 1.0; // profile scale A >= 0 (0 = zero data)

    double p_critical() const { return 1.0 / (1.0 - eps0); }
    double kappa() const { return 1.0 - (1.0 - eps0) * static_cast<double>(p); }
    // p == p_c up to floating-point noise in (1-eps0)*p.
    bool at_critical() const;
    bool supercritical() const;

    void validate() const;  // throws PreconditionError
};

class ProfileImpl;

// A smooth profile on s in (-1,0), identically zero outside. Value type;
// copies share the immutable implementation.
class Profile {
  public:
    enum class Kind { standard_bump, tabulated, derived };

    Profile();  // zero profile

    static Profile standard_bump(double amplitude);
    // Samples on the uniform grid s0 + j*ds must vanish at (and imply
    // smooth decay toward) the support endpoints.
    static Profile tabulated(std::vector<double> samples, double s0, double ds);
    static Profile zero();

    double eval(double s) const;
    // k-th s-derivative, k in {1,2,3}.
    double deriv(double s, int k) const;

    Kind kind() const;
    double amplitude() const;

  private:
    explicit Profile(std::shared_ptr<const ProfileImpl> impl);
    std::shared_ptr<const ProfileImpl> impl_;
    friend Profile build_phi1(const Profile&, const PulseParams&);
};

// The normalized bump A * e^4 * exp(1/(s(s+1))): peak value A at s = -1/2,
// all derivatives analytic. amplitude <= 0 is invalid.
Profile make_profile(Profile::Kind kind, double amplitude);

// phi1 = -ds phi0 - phi0*delta - (1/(2(p+1))) (-ds phi0)^(p+1) delta^((1-eps0)p),
// the choice that realizes the outgoing constraint orders. Derivatives of
// the returned profile differentiate the formula.
Profile build_phi1(const Profile& phi0, const PulseParams& params);

// The shock quantity Q(s) = phi1(s)^(p-1) * ds phi1(s) and its maximum
// against the data threshold:
//   2/p                         for 1 <= p <  p_c,
//   (p-1) 2^p / ((2^(p-1)-1) p) for p == p_c.
struct ShockMargin {
    double q_max = 0.0;
    double s_star = -0.5;
    double threshold = 0.0;
    bool satisfied = false;
};

// Scans 4096 uniform samples on (-1,0) and refines the maximum by golden
// section. p > p_c has no threshold and is a domain error.
ShockMargin shock_margin(const Profile& phi0, const Profile& phi1, const PulseParams& params);

double shock_quantity(const Profile& phi1, int p, double s);

// (q_max, s_star) over the dense scan plus golden-section refinement.
std::pair<double, double> shock_quantity_max(const Profile& phi1, int p);

// Sample the data family (phi, v, w) at t = 1 on the grid. The grid must
// contain the pulse shell (1-delta, 1) strictly in its interior; fields
// are identically zero outside the shell.
FieldState initial_fields(const PulseParams& params, const Profile& phi0, const Profile& phi1,
                          const RadialGrid& grid);

// Builds the default grid for a pulse: dr = delta / points_per_pulse over
// [r_min, ~r_max] (r_max is rounded up to land on the grid).
RadialGrid make_grid(double r_min, double r_max, double delta, int points_per_pulse);

// Measured decay order of sup_r |(dt+dr)^k phi(1,.)| across a geometric
// delta-grid, against the expected exponent 2 - eps0 - k*max(0,kappa).
// k = 1 uses v + w directly; k = 2 eliminates dt^2 phi via the equation
// dt^2 phi = c^2 (dr^2 phi + (2/r) dr phi).
struct ConstraintFit {
    double slope = 0.0;
    double expected = 0.0;
    double residual = 0.0;  // RMS deviation of log sup from the fitted line
    std::vector<double> sup_values;
};

ConstraintFit constraint_exponent_fit(const PulseParams& base, std::span<const double> deltas,
                                      const Profile& phi0, int k);

// The default delta-grid for exponent fits: a decade-and-a-half, 5 points.
std::vector<double> default_delta_grid();

}  // namespace shockwave
