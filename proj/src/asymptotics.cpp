#include "asymptotics.hpp"

#include <cmath>
#include <limits>

#include "numerics.hpp"

namespace shockwave {

CriticalData critical_data(const PulseParams& params) {
    params.validate();
    CriticalData cd;
    cd.p_c = params.p_critical();
    cd.kappa = params.kappa();
    cd.t_star = 1.0 + std::pow(params.delta, cd.kappa);
    return cd;
}

double G_factor(double t, int p) {
    if (!(t >= 1.0)) {
        throw PreconditionError("G_factor: requires t >= 1");
    }
    if (p == 1) return std::log(t);
    const double pm1 = static_cast<double>(p - 1);
    return (1.0 - std::pow(t, -pm1)) / pm1;
}

double Lmu_initial(double s, const PulseParams& params, const Profile& phi1) {
    const double q = shock_quantity(phi1, params.p, s);
    return -0.5 * static_cast<double>(params.p) * std::pow(params.delta, -params.kappa()) * q;
}

double mu_asymptotic(double t, double s, const PulseParams& params, const Profile& phi1) {
    return 1.0 + G_factor(t, params.p) * Lmu_initial(s, params, phi1);
}

Prediction predict_blowup(const PulseParams& params, const Profile& phi0, const Profile& phi1) {
    const CriticalData cd = critical_data(params);
    Prediction pred;
    pred.p_c = cd.p_c;
    pred.kappa = cd.kappa;
    pred.t_star = cd.t_star;

    if (params.supercritical()) {
        // Global-existence side: no shock threshold, no prediction. The
        // shock quantity maximum is still reported for context.
        const auto [q_max, s_star] = shock_quantity_max(phi1, params.p);
        pred.q_max = q_max;
        pred.s_pred = s_star;
        pred.u_pred = -params.delta * s_star;
        pred.threshold = std::numeric_limits<double>::quiet_NaN();
        pred.status = Prediction::Status::not_applicable;
        return pred;
    }

    const ShockMargin margin = shock_margin(phi0, phi1, params);
    pred.q_max = margin.q_max;
    pred.threshold = margin.threshold;
    pred.s_pred = margin.s_star;
    pred.u_pred = -params.delta * margin.s_star;

    if (!margin.satisfied) {
        pred.status = Prediction::Status::margin_unsatisfied;
        return pred;
    }

    // mu hits zero when G_p(t) = 2 delta^kappa / (p q_max).
    const double target = 2.0 * std::pow(params.delta, cd.kappa) /
                          (static_cast<double>(params.p) * margin.q_max);
    const double t_hi = cd.t_star + 0.5;
    if (G_factor(t_hi, params.p) < target) {
        pred.status = Prediction::Status::no_blowup_before_t_star;
        return pred;
    }
    pred.status = Prediction::Status::predicted;
    pred.t_blow_pred =
        bisect_root([&](double t) { return G_factor(t, params.p) - target; }, 1.0, t_hi);
    return pred;
}

}  // namespace shockwave
