// Closed-form predictions for the short-pulse family: the critical
// exponent p_c = 1/(1-eps0), the threshold time t* = 1 + delta^kappa with
// kappa = 1-(1-eps0)p, and the leading-order inverse foliation density
//
//     mu(t,s) = 1 - (p/2) delta^(-kappa) Q(s) G_p(t),
//     Q(s) = phi1(s)^(p-1) ds phi1(s),
//     G_p(t) = (1/(p-1)) (1 - t^(1-p)),  G_1(t) = ln t.
//
// The predicted blow-up time solves mu = 0 at the maximum of Q.

#pragma once

#include <optional>

#include "pulse.hpp"

namespace shockwave {

struct CriticalData {
    double p_c;
    double kappa;
    double t_star;
};

CriticalData critical_data(const PulseParams& params);

// G_p(t) for t >= 1: the time-integral of t^-p from 1 to t.
double G_factor(double t, int p);

// Leading-order Lmu at t = 1 as a function of the pulse coordinate:
// Lmu(1,s) = -(p/2) delta^(-kappa) Q(s).
double Lmu_initial(double s, const PulseParams& params, const Profile& phi1);

// mu(t,s) to leading order; equals 1 + G_p(t) * Lmu_initial(s).
double mu_asymptotic(double t, double s, const PulseParams& params, const Profile& phi1);

struct Prediction {
    enum class Status { predicted, margin_unsatisfied, no_blowup_before_t_star, not_applicable };

    double p_c = 0.0;
    double kappa = 0.0;
    double t_star = 0.0;
    double q_max = 0.0;
    double threshold = 0.0;
    double s_pred = 0.0;  // argmax of Q
    double u_pred = 0.0;  // corresponding label, u = -delta*s
    Status status = Status::not_applicable;
    std::optional<double> t_blow_pred;

    bool margin_satisfied() const { return status == Status::predicted || status == Status::no_blowup_before_t_star; }
};

// Solves G_p(t) = 2 delta^kappa / (p q_max) by bisection (G_p is strictly
// increasing) on [1, t*+1/2]. p > p_c carries no prediction
// (not_applicable); an unsatisfied shock margin yields t_blow_pred = none.
Prediction predict_blowup(const PulseParams& params, const Profile& phi0, const Profile& phi1);

}  // namespace shockwave
