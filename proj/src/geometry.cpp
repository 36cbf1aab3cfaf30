#include "geometry.hpp"

#include <algorithm>
#include <cmath>

#include "numerics.hpp"

namespace shockwave {

namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

NullFrame null_frame(double mu, double c) {
    if (!(mu > 0.0) || !(c > 0.0)) {
        throw PreconditionError("null_frame: requires mu > 0 and c > 0");
    }
    NullFrame f;
    f.L[0] = 1.0;
    f.L[1] = c;
    f.That[0] = 0.0;
    f.That[1] = -1.0;
    f.T[0] = 0.0;
    f.T[1] = -mu / c;
    f.Lbar[0] = mu / (c * c);
    f.Lbar[1] = -mu / c;
    return f;
}

double lorentz_dot(double c, const double (&x)[2], const double (&y)[2]) {
    return -c * c * x[0] * y[0] + x[1] * y[1];
}

// ------------------------------------------------------------ field access

namespace {

// Spatial-derivative and time-derivative arrays of one PDE state, built
// once per fan step. vt is the PDE right-hand side for v; it provides the
// Hermite time slopes of v, and its r-derivative those of vr.
struct LevelData {
    const FieldState* s = nullptr;
    std::vector<double> vr, wr, vt, vrt;
};

LevelData build_level(const FieldState& s, int p, double h_min) {
    const std::size_t n = s.size();
    LevelData d;
    d.s = &s;
    d.vr.resize(n);
    d.wr.resize(n);
    d.vt.resize(n);
    d.vrt.resize(n);
    // 4th-order derivative for the transport coefficient dr(c): its
    // truncation bias integrates along the whole characteristic.
    centered_derivative4(s.v, s.grid.dr, d.vr);
    centered_derivative(s.w, s.grid.dr, d.wr);
    for (std::size_t j = 0; j < n; ++j) {
        const double c = wave_speed(s.v[j], p, h_min);
        d.vt[j] = c * c * (d.wr[j] + 2.0 * s.w[j] / s.grid.r(j));
    }
    centered_derivative(d.vt, s.grid.dr, d.vrt);
    return d;
}

// Monotone cubic sample in r of a field reconstructed at stage time
// t_a + theta*dt by cubic Hermite in t.
double sample_stage(const RadialGrid& g, std::span<const double> ya, std::span<const double> da,
                    std::span<const double> yb, std::span<const double> db, double dt,
                    double theta, double x) {
    if (theta == 0.0) return cubic_eval(g.r_min, g.dr, ya, x);
    if (theta == 1.0) return cubic_eval(g.r_min, g.dr, yb, x);
    return cubic_eval(g.r_min, g.dr, g.n,
                      [&](std::size_t j) { return hermite_value(ya[j], da[j], yb[j], db[j], dt, theta); },
                      x);
}

struct CharRate {
    double dr;
    double dnu;
};

// Characteristic system at one stage point. The transport equation
// L mu = c^-1 (Lc) mu + mu dr(c) is integrated in the substituted
// variable nu = mu / c, for which the Lc part integrates exactly:
//   dr/dt  = c,
//   dnu/dt = nu dr(c).
// This removes the dt(c) reconstruction chain from the rate entirely.
CharRate char_rate(const LevelData& a, const LevelData& b, double dt, double theta, double r,
                   double nu, int p, double h_min) {
    const RadialGrid& g = a.s->grid;
    const double v = sample_stage(g, a.s->v, a.vt, b.s->v, b.vt, dt, theta, r);
    const double vr = sample_stage(g, a.vr, a.vrt, b.vr, b.vrt, dt, theta, r);
    const double c = wave_speed(v, p, h_min);
    const double cr = -0.5 * static_cast<double>(p) * c * c * c * ipow(v, p - 1) * vr;
    return {c, nu * cr};
}

void fill_sample_geometry(const CharacteristicFan& fan, FanSample& s) {
    const std::size_t m = fan.u.size();
    s.trchi.resize(m);
    s.trchi_check.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double rho = s.t - fan.u[j];
        s.trchi[j] = 2.0 * s.c[j] / s.r[j];
        s.trchi_check[j] = s.trchi[j] - 2.0 / rho;
    }
}

void fill_sample_traces(const FieldState& state, const LevelData& d, FanSample& s) {
    const RadialGrid& g = state.grid;
    const std::size_t m = s.r.size();
    s.v.resize(m);
    s.w.resize(m);
    s.dvdr.resize(m);
    s.dwdr.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        s.v[j] = cubic_eval(g.r_min, g.dr, state.v, s.r[j]);
        s.w[j] = cubic_eval(g.r_min, g.dr, state.w, s.r[j]);
        s.dvdr[j] = cubic_eval(g.r_min, g.dr, d.vr, s.r[j]);
        s.dwdr[j] = cubic_eval(g.r_min, g.dr, d.wr, s.r[j]);
    }
}

}  // namespace

CharacteristicFan seed_fan(const PulseParams& params, const FieldState& state,
                           std::size_t fan_count) {
    if (fan_count < 8) {
        throw PreconditionError("fan.count must be >= 8");
    }
    if (std::abs(state.t - 1.0) > 1e-12) {
        throw PreconditionError("seed_fan: state must be at t = 1");
    }

    CharacteristicFan fan;
    fan.delta = params.delta;
    const std::size_t m = fan_count + 1;
    fan.u.resize(m);

    FanSample s;
    s.t = state.t;
    s.r.resize(m);
    s.c.resize(m);
    s.mu_ode.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        fan.u[j] = params.delta * static_cast<double>(j) / static_cast<double>(fan_count);
        s.r[j] = 1.0 - fan.u[j];
        const double v = cubic_eval(state.grid.r_min, state.grid.dr, state.v, s.r[j]);
        s.c[j] = wave_speed(v, params.p);
        s.mu_ode[j] = s.c[j];  // mu = c on t = 1
    }
    fan.samples.push_back(std::move(s));
    FanSample& seed = fan.samples.back();
    seed.mu_jac = mu_jacobian(fan, 0);
    fill_sample_geometry(fan, seed);
    const LevelData d = build_level(state, params.p, kHyperbolicityFloor);
    fill_sample_traces(state, d, seed);
    return fan;
}

void advance_fan(CharacteristicFan& fan, const FieldState& a, const FieldState& b, int p,
                 double h_min) {
    const double dt = b.t - a.t;
    if (!(dt > 0.0)) {
        throw PreconditionError("advance_fan: states must be ordered in time");
    }
    const LevelData da = build_level(a, p, h_min);
    const LevelData db = build_level(b, p, h_min);
    const FanSample& cur = fan.latest();
    const std::size_t m = fan.u.size();

    FanSample next;
    next.t = b.t;
    next.r.resize(m);
    next.c.resize(m);
    next.mu_ode.resize(m);

    const RadialGrid& g = a.grid;
    const double r_lo = g.r_min + 2.0 * g.dr;
    const double r_hi = g.r_max() - 2.0 * g.dr;

    for (std::size_t j = 0; j < m; ++j) {
        const double r0 = cur.r[j];
        const double nu0 = cur.mu_ode[j] / cur.c[j];
        const CharRate k1 = char_rate(da, db, dt, 0.0, r0, nu0, p, h_min);
        const CharRate k2 =
            char_rate(da, db, dt, 0.5, r0 + 0.5 * dt * k1.dr, nu0 + 0.5 * dt * k1.dnu, p, h_min);
        const CharRate k3 =
            char_rate(da, db, dt, 0.5, r0 + 0.5 * dt * k2.dr, nu0 + 0.5 * dt * k2.dnu, p, h_min);
        const CharRate k4 =
            char_rate(da, db, dt, 1.0, r0 + dt * k3.dr, nu0 + dt * k3.dnu, p, h_min);
        const double r1 = r0 + dt / 6.0 * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
        const double nu1 = nu0 + dt / 6.0 * (k1.dnu + 2.0 * k2.dnu + 2.0 * k3.dnu + k4.dnu);
        if (!(r1 > r_lo && r1 < r_hi)) {
            throw NumericError("fan escape: characteristic left the grid interior at r = " +
                               std::to_string(r1));
        }
        next.r[j] = r1;
        next.c[j] = wave_speed(cubic_eval(g.r_min, g.dr, b.v, r1), p, h_min);
        next.mu_ode[j] = next.c[j] * nu1;
    }

    fan.samples.push_back(std::move(next));
    FanSample& s = fan.samples.back();
    s.mu_jac = mu_jacobian(fan, fan.samples.size() - 1);
    fill_sample_geometry(fan, s);
    fill_sample_traces(b, db, s);
}

std::vector<double> mu_jacobian(const CharacteristicFan& fan, std::size_t sample_index) {
    const FanSample& s = fan.samples.at(sample_index);
    const std::size_t m = fan.u.size();
    if (m < 3) throw PreconditionError("mu_jacobian: need at least 3 characteristics");
    const double du = fan.du();
    std::vector<double> mu(m);
    for (std::size_t j = 0; j < m; ++j) {
        double drdu;
        if (j == 0) {
            drdu = (-3.0 * s.r[0] + 4.0 * s.r[1] - s.r[2]) / (2.0 * du);
        } else if (j == m - 1) {
            drdu = (3.0 * s.r[m - 1] - 4.0 * s.r[m - 2] + s.r[m - 3]) / (2.0 * du);
        } else {
            drdu = (s.r[j + 1] - s.r[j - 1]) / (2.0 * du);
        }
        mu[j] = -s.c[j] * drdu;
    }
    return mu;
}

std::pair<std::vector<double>, std::vector<double>> trchi_check(const CharacteristicFan& fan,
                                                                std::size_t sample_index) {
    const FanSample& s = fan.samples.at(sample_index);
    const std::size_t m = fan.u.size();
    std::vector<double> tc(m), tcc(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (!(s.r[j] > 0.0)) {
            throw PreconditionError("trchi_check: nonpositive radius");
        }
        tc[j] = 2.0 * s.c[j] / s.r[j];
        tcc[j] = tc[j] - 2.0 / (s.t - fan.u[j]);
    }
    return {tc, tcc};
}

}  // namespace shockwave
