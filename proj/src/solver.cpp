#include "solver.hpp"

#include <algorithm>
#include <cmath>

#include "geometry.hpp"
#include "numerics.hpp"

namespace shockwave {

namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

double wave_speed(double v, int p, double h_min) {
    const double h = 1.0 + ipow(v, p);
    if (h <= h_min) throw HyperbolicityLoss(v, p);
    return 1.0 / std::sqrt(h);
}

double max_wave_speed(const FieldState& state, int p, double h_min) {
    // c is largest where 1 + v^p is smallest.
    double h_lo = std::numeric_limits<double>::infinity();
    double v_lo = 0.0;
    for (double v : state.v) {
        const double h = 1.0 + ipow(v, p);
        if (h < h_lo) {
            h_lo = h;
            v_lo = v;
        }
    }
    if (h_lo <= h_min) throw HyperbolicityLoss(v_lo, p);
    return 1.0 / std::sqrt(h_lo);
}

namespace {

// In-place right-hand side; dv/dw buffers double as derivative scratch.
void rhs_inplace(const FieldState& s, int p, double h_min, std::span<double> dphi,
                 std::span<double> dv, std::span<double> dw) {
    const std::size_t n = s.size();
    centered_derivative(s.w, s.grid.dr, dv);  // dv holds dr w
    centered_derivative(s.v, s.grid.dr, dw);  // dw holds dr v (final value)
    for (std::size_t j = 0; j < n; ++j) {
        const double h = 1.0 + ipow(s.v[j], p);
        if (h <= h_min) throw HyperbolicityLoss(s.v[j], p);
        const double c2 = 1.0 / h;
        const double r = s.grid.r(j);
        dphi[j] = s.v[j];
        dv[j] = c2 * (dv[j] + 2.0 * s.w[j] / r);
    }
}

}  // namespace

RhsResult rhs(const FieldState& state, int p, double h_min) {
    RhsResult out;
    out.dphi.resize(state.size());
    out.dv.resize(state.size());
    out.dw.resize(state.size());
    rhs_inplace(state, p, h_min, out.dphi, out.dv, out.dw);
    return out;
}

EvolveResult evolve(FieldState state, double t_end, const EvolveOptions& opts,
                    std::span<StepObserver* const> observers) {
    if (!(opts.cfl > 0.0 && opts.cfl < 1.0)) {
        throw PreconditionError("time.cfl must be in (0,1)");
    }
    if (t_end < state.t) {
        throw PreconditionError("evolve: t_end must be >= state.t");
    }

    const std::size_t n = state.size();
    EvolveResult result;

    // Stage buffers: y2..y4 hold stage states, k* the stage derivatives.
    FieldState prev = state;
    FieldState stage = state;
    std::vector<double> k1p(n), k1v(n), k1w(n), k2p(n), k2v(n), k2w(n), k3p(n), k3v(n), k3w(n),
        k4p(n), k4v(n), k4w(n);

    auto add_scaled = [n](FieldState& dst, const FieldState& base, double a,
                          std::span<const double> kp, std::span<const double> kv,
                          std::span<const double> kw) {
        dst.t = base.t + a;
        for (std::size_t j = 0; j < n; ++j) {
            dst.phi[j] = base.phi[j] + a * kp[j];
            dst.v[j] = base.v[j] + a * kv[j];
            dst.w[j] = base.w[j] + a * kw[j];
        }
    };

    const double eps = 1e-14 * std::max(1.0, std::abs(t_end));
    bool stopped = false;
    while (!stopped && state.t < t_end - eps) {
        prev = state;
        double dt;
        try {
            const double c_max = max_wave_speed(state, opts.p, opts.h_min);
            dt = opts.cfl * state.grid.dr / c_max;
            if (state.t + dt > t_end) dt = t_end - state.t;

            rhs_inplace(state, opts.p, opts.h_min, k1p, k1v, k1w);
            add_scaled(stage, state, 0.5 * dt, k1p, k1v, k1w);
            rhs_inplace(stage, opts.p, opts.h_min, k2p, k2v, k2w);
            add_scaled(stage, state, 0.5 * dt, k2p, k2v, k2w);
            rhs_inplace(stage, opts.p, opts.h_min, k3p, k3v, k3w);
            add_scaled(stage, state, dt, k3p, k3v, k3w);
            rhs_inplace(stage, opts.p, opts.h_min, k4p, k4v, k4w);
        } catch (const HyperbolicityLoss& e) {
            result.events.push_back({Event::Kind::hyperbolicity_loss, state.t, e.what()});
            break;
        }

        const double w6 = dt / 6.0;
        for (std::size_t j = 0; j < n; ++j) {
            state.phi[j] += w6 * (k1p[j] + 2.0 * k2p[j] + 2.0 * k3p[j] + k4p[j]);
            state.v[j] += w6 * (k1v[j] + 2.0 * k2v[j] + 2.0 * k3v[j] + k4v[j]);
            state.w[j] += w6 * (k1w[j] + 2.0 * k2w[j] + 2.0 * k3w[j] + k4w[j]);
        }
        state.t += dt;
        result.dt_last = dt;
        ++result.steps;

        bool finite = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(state.v[j]) || !std::isfinite(state.w[j])) {
                finite = false;
                break;
            }
        }
        if (!finite) {
            result.events.push_back(
                {Event::Kind::numeric_failure, prev.t, "NaN/Inf in fields after step"});
            state = prev;  // last valid state
            break;
        }

        for (StepObserver* ob : observers) {
            if (!ob->on_step(prev, state)) {
                result.events.push_back({Event::Kind::observer_stop, state.t, ob->name()});
                stopped = true;
                break;
            }
        }
    }

    result.state = std::move(state);
    return result;
}

double wave_energy(const FieldState& state, int p, double h_min) {
    std::vector<double> integrand(state.size());
    for (std::size_t j = 0; j < state.size(); ++j) {
        const double c = wave_speed(state.v[j], p, h_min);
        const double r = state.grid.r(j);
        integrand[j] = (state.v[j] * state.v[j] / (c * c) + state.w[j] * state.w[j]) * r * r;
    }
    return trapezoid(integrand, state.grid.dr);
}

double max_abs_dvdr(const FieldState& state) {
    // Staggered (midpoint) differences: 2nd order like the scheme stencil
    // but evaluated where the information sits, which keeps the estimate
    // faithful for near-shock features a few cells wide.
    double m = 0.0;
    for (std::size_t j = 0; j + 1 < state.size(); ++j) {
        m = std::max(m, std::abs(state.v[j + 1] - state.v[j]));
    }
    return m / state.grid.dr;
}

// ---------------------------------------------------------------- detection

const char* trigger_name(BlowupTrigger trigger) {
    switch (trigger) {
        case BlowupTrigger::mu_floor: return "mu_floor";
        case BlowupTrigger::crossing: return "crossing";
        case BlowupTrigger::d2_cap: return "d2_cap";
    }
    return "unknown";
}

double extrapolate_mu_zero(std::span<const MuHistoryRow> history, std::size_t tail) {
    if (history.empty()) return 0.0;
    const std::size_t n = std::min(tail, history.size());
    if (n < 2) return history.back().t;
    std::vector<double> ts(n), mu(n);
    for (std::size_t i = 0; i < n; ++i) {
        const MuHistoryRow& row = history[history.size() - n + i];
        ts[i] = row.t;
        mu[i] = row.mu_min;
    }
    const LineFit fit = fit_line(ts, mu);
    if (!(fit.slope < 0.0)) return history.back().t;
    return -fit.intercept / fit.slope;
}

std::optional<BlowupEvent> detect_blowup(const CharacteristicFan& fan,
                                         std::span<const MuHistoryRow> history,
                                         const BlowupThresholds& thresholds) {
    const FanSample& s = fan.latest();
    const std::size_t m = fan.u.size();

    double mu_min = s.mu_ode[0];
    std::size_t j_min = 0;
    for (std::size_t j = 1; j < m; ++j) {
        if (s.mu_ode[j] < mu_min) {
            mu_min = s.mu_ode[j];
            j_min = j;
        }
    }

    BlowupEvent ev;
    ev.t = s.t;
    ev.t_blow_extrapolated = extrapolate_mu_zero(history);

    if (mu_min < thresholds.mu_stop) {
        ev.trigger = BlowupTrigger::mu_floor;
        ev.u_star = fan.u[j_min];
        return ev;
    }
    // Characteristic order inverts through a crossing: r strictly
    // decreasing in u while regular.
    for (std::size_t j = 0; j + 1 < m; ++j) {
        if (s.r[j] <= s.r[j + 1]) {
            ev.trigger = BlowupTrigger::crossing;
            ev.u_star = 0.5 * (fan.u[j] + fan.u[j + 1]);
            return ev;
        }
    }
    if (!history.empty() && history.back().max_drv > thresholds.d2_cap) {
        ev.trigger = BlowupTrigger::d2_cap;
        ev.u_star = fan.u[j_min];
        return ev;
    }
    return std::nullopt;
}

}  // namespace shockwave
