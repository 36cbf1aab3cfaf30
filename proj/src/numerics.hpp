// Shared numerical kernels: finite-difference stencils on uniform grids,
// monotone (Fritsch-Carlson) cubic interpolation, least-squares line fits,
// bracketed root finding and 1-D maximization.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace shockwave {

// d/dx of a sampled function on a uniform grid. Interior points use the
// 2nd-order centered stencil, both ends the 2nd-order one-sided stencil.
// out may not alias f.
void centered_derivative(std::span<const double> f, double dx, std::span<double> out);

// 4th-order central first derivative (5-point), falling back to the
// 2nd-order stencils within two cells of the ends. out may not alias f.
void centered_derivative4(std::span<const double> f, double dx, std::span<double> out);

// Cubic Hermite basis evaluation on [0,1]: value at theta given endpoint
// values y0, y1 and endpoint derivatives d0, d1 scaled by the step h.
double hermite_value(double y0, double d0, double y1, double d1, double h, double theta);

// Monotone cubic interpolation (Fritsch-Carlson limited slopes) of a
// function sampled on the uniform grid x_j = x0 + j*dx, j = 0..n-1.
// `value` fetches the j-th sample; evaluation clamps x to the grid range.
double pchip_eval(double x0, double dx, std::size_t n,
                  const std::function<double(std::size_t)>& value, double x);

// Convenience overload over a contiguous sample array.
double pchip_eval(double x0, double dx, std::span<const double> f, double x);

// Classical cubic interpolation (Hermite with centered-difference node
// slopes, no limiting): 3rd-order accurate including at smooth extrema,
// where limited slopes degrade to 2nd order with a large constant.
double cubic_eval(double x0, double dx, std::size_t n,
                  const std::function<double(std::size_t)>& value, double x);

double cubic_eval(double x0, double dx, std::span<const double> f, double x);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double pearson_r = 0.0;
    std::size_t n = 0;
};

// Ordinary least squares y = a + b x. Requires n >= 2.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Root of a continuous monotone function on [a,b] by bisection.
// Requires f(a) and f(b) to bracket zero; `iters` halvings (80 gives
// full double precision on unit-scale intervals).
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   int iters = 80);

// Location of the maximum of a smooth unimodal function on [a,b] by
// golden-section search.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12);

// d/dt of a series sampled at strictly increasing times: 3-point Lagrange
// differentiation, 2nd order, one-sided at the ends. Needs >= 3 samples.
std::vector<double> dt_series(std::span<const double> t, std::span<const double> y);

// Composite trapezoid integral of uniformly spaced samples.
double trapezoid(std::span<const double> f, double dx);

// Trapezoid integral of samples at arbitrary increasing abscissae.
double trapezoid(std::span<const double> x, std::span<const double> f);

}  // namespace shockwave
