#include "numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace shockwave {

void centered_derivative(std::span<const double> f, double dx, std::span<double> out) {
    const std::size_t n = f.size();
    assert(out.size() == n);
    assert(n >= 3);
    const double inv2 = 1.0 / (2.0 * dx);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        out[j] = (f[j + 1] - f[j - 1]) * inv2;
    }
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
}

void centered_derivative4(std::span<const double> f, double dx, std::span<double> out) {
    const std::size_t n = f.size();
    assert(out.size() == n);
    if (n < 5) {
        centered_derivative(f, dx, out);
        return;
    }
    const double inv2 = 1.0 / (2.0 * dx);
    const double inv12 = 1.0 / (12.0 * dx);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    out[1] = (f[2] - f[0]) * inv2;
    for (std::size_t j = 2; j + 2 < n; ++j) {
        out[j] = (-f[j + 2] + 8.0 * f[j + 1] - 8.0 * f[j - 1] + f[j - 2]) * inv12;
    }
    out[n - 2] = (f[n - 1] - f[n - 3]) * inv2;
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
}

double hermite_value(double y0, double d0, double y1, double d1, double h, double theta) {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    return y0 * (2.0 * t3 - 3.0 * t2 + 1.0) + h * d0 * (t3 - 2.0 * t2 + theta) +
           y1 * (-2.0 * t3 + 3.0 * t2) + h * d1 * (t3 - t2);
}

namespace {

// Fritsch-Carlson limited node slope. dl, dr are the adjacent secants
// (dl invalid at the left end, dr at the right end).
double fc_interior_slope(double dl, double dr) {
    if (dl * dr <= 0.0) return 0.0;
    return 2.0 * dl * dr / (dl + dr);
}

// Shape-preserving one-sided endpoint slope for uniform spacing.
double fc_endpoint_slope(double d_near, double d_far) {
    double m = 0.5 * (3.0 * d_near - d_far);
    if (m * d_near <= 0.0) return 0.0;
    if (d_near * d_far < 0.0 && std::abs(m) > 3.0 * std::abs(d_near)) return 3.0 * d_near;
    return m;
}

}  // namespace

double pchip_eval(double x0, double dx, std::size_t n,
                  const std::function<double(std::size_t)>& value, double x) {
    assert(n >= 2);
    const double xmax = x0 + dx * static_cast<double>(n - 1);
    x = std::clamp(x, x0, xmax);
    auto k = static_cast<std::size_t>((x - x0) / dx);
    if (k > n - 2) k = n - 2;
    const double theta = (x - (x0 + dx * static_cast<double>(k))) / dx;

    if (n == 2) {
        return value(0) + theta * (value(1) - value(0));
    }

    const double yk = value(k);
    const double yk1 = value(k + 1);
    const double dk = (yk1 - yk) / dx;

    double mk;
    if (k == 0) {
        mk = fc_endpoint_slope(dk, (value(2) - value(1)) / dx);
    } else {
        mk = fc_interior_slope((yk - value(k - 1)) / dx, dk);
    }

    double mk1;
    if (k + 2 > n - 1) {
        mk1 = fc_endpoint_slope(dk, (value(k) - value(k - 1)) / dx);
    } else {
        mk1 = fc_interior_slope(dk, (value(k + 2) - yk1) / dx);
    }

    return hermite_value(yk, mk, yk1, mk1, dx, theta);
}

double pchip_eval(double x0, double dx, std::span<const double> f, double x) {
    return pchip_eval(x0, dx, f.size(), [&f](std::size_t j) { return f[j]; }, x);
}

double cubic_eval(double x0, double dx, std::size_t n,
                  const std::function<double(std::size_t)>& value, double x) {
    assert(n >= 2);
    const double xmax = x0 + dx * static_cast<double>(n - 1);
    x = std::clamp(x, x0, xmax);
    auto k = static_cast<std::size_t>((x - x0) / dx);
    if (k > n - 2) k = n - 2;
    const double theta = (x - (x0 + dx * static_cast<double>(k))) / dx;

    const double yk = value(k);
    const double yk1 = value(k + 1);
    if (n == 2) return yk + theta * (yk1 - yk);

    auto slope = [&](std::size_t j, double yj) {
        if (j == 0) return (value(1) - value(0)) / dx;
        if (j == n - 1) return (value(n - 1) - value(n - 2)) / dx;
        (void)yj;
        return (value(j + 1) - value(j - 1)) / (2.0 * dx);
    };
    return hermite_value(yk, slope(k, yk), yk1, slope(k + 1, yk1), dx, theta);
}

double cubic_eval(double x0, double dx, std::span<const double> f, double x) {
    return cubic_eval(x0, dx, f.size(), [&f](std::size_t j) { return f[j]; }, x);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) {
        throw std::invalid_argument("fit_line: need two series of equal length >= 2");
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double xbar = sx / static_cast<double>(n);
    const double ybar = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ddx = x[i] - xbar;
        const double ddy = y[i] - ybar;
        sxx += ddx * ddx;
        sxy += ddx * ddy;
        syy += ddy * ddy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_line: abscissae are all equal");
    }
    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    if (n > 2) {
        fit.slope_stderr = std::sqrt(ss_res / (static_cast<double>(n - 2) * sxx));
    }
    fit.pearson_r = (syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 0.0;
    return fit;
}

double bisect_root(const std::function<double(double)>& f, double a, double b, int iters) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) {
        throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
    }
    for (int i = 0; i < iters; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    (void)fb;
    return 0.5 * (a + b);
}

double golden_max(const std::function<double(double)>& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> dt_series(std::span<const double> t, std::span<const double> y) {
    const std::size_t n = t.size();
    if (n < 3 || y.size() != n) {
        throw std::invalid_argument("dt_series: need at least 3 samples");
    }
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        // Differentiate the quadratic through (t0,t1,t2) at tau.
        const std::size_t base = (k == 0) ? 0 : (k == n - 1 ? n - 3 : k - 1);
        const double t0 = t[base], t1 = t[base + 1], t2 = t[base + 2];
        const double tau = t[k];
        out[k] = y[base] * (2.0 * tau - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                 y[base + 1] * (2.0 * tau - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                 y[base + 2] * (2.0 * tau - t0 - t1) / ((t2 - t0) * (t2 - t1));
    }
    return out;
}

double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) return 0.0;
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j) s += f[j];
    return s * dx;
}

double trapezoid(std::span<const double> x, std::span<const double> f) {
    double s = 0.0;
    for (std::size_t j = 1; j < x.size(); ++j) {
        s += 0.5 * (f[j] + f[j - 1]) * (x[j] - x[j - 1]);
    }
    return s;
}

}  // namespace shockwave
