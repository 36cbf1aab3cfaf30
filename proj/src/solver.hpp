// Method-of-lines evolution of the spherically symmetric quasilinear wave
// equation as the first-order system
//
//     dt phi = v,
//     dt v   = c^2 (dr w + (2/r) w),    c = (1 + v^p)^(-1/2),
//     dt w   = dr v,
//
// with 2nd-order centered differences in r and classical RK4 in t.
// The scheme stops strictly before the shock; accuracy, not capturing.

#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "state.hpp"

namespace shockwave {

// Strict-hyperbolicity floor for 1 + v^p. The pulse regime keeps
// |v| = O(delta^(1-eps0)) small; reaching the floor signals a setup error.
inline constexpr double kHyperbolicityFloor = 0.1;

// c = (1 + v^p)^(-1/2). Throws HyperbolicityLoss at or below the floor.
double wave_speed(double v, int p, double h_min = kHyperbolicityFloor);

double max_wave_speed(const FieldState& state, int p, double h_min = kHyperbolicityFloor);

struct RhsResult {
    std::vector<double> dphi, dv, dw;
};

RhsResult rhs(const FieldState& state, int p, double h_min = kHyperbolicityFloor);

// ---------------------------------------------------------------- stepping

struct Event {
    enum class Kind { hyperbolicity_loss, numeric_failure, observer_stop };
    Kind kind;
    double t;
    std::string detail;
};

// Invoked after every accepted RK4 step with the states bracketing the
// step. Returning false halts the run (recorded as an observer_stop event).
class StepObserver {
  public:
    virtual ~StepObserver() = default;
    virtual const char* name() const = 0;
    virtual bool on_step(const FieldState& prev, const FieldState& next) = 0;
};

struct EvolveOptions {
    int p = 1;
    double cfl = 0.4;
    double h_min = kHyperbolicityFloor;
};

struct EvolveResult {
    FieldState state;
    std::vector<Event> events;
    std::size_t steps = 0;
    double dt_last = 0.0;

    bool clean() const { return events.empty(); }
};

// Steps with dt = cfl * dr / c_max(state), c_max recomputed per step, the
// final step clipped to land on t_end. Hyperbolicity loss and NaN/Inf halt
// early with the last valid state and an event; observer stops keep the
// state at the stop step.
EvolveResult evolve(FieldState state, double t_end, const EvolveOptions& opts,
                    std::span<StepObserver* const> observers = {});

// ------------------------------------------------------------- diagnostics

// Discrete energy integral (c^-2 v^2 + w^2) r^2 dr; conserved by the
// continuum dynamics in the linear regime.
double wave_energy(const FieldState& state, int p, double h_min = kHyperbolicityFloor);

double max_abs_dvdr(const FieldState& state);

// -------------------------------------------------------------- detection

struct MuHistoryRow {
    double t;
    double mu_min;
    double u_argmin;
    double max_drv;  // max_r |dr v|
};

enum class BlowupTrigger { mu_floor, crossing, d2_cap };
const char* trigger_name(BlowupTrigger trigger);

struct BlowupThresholds {
    double mu_stop = 0.05;
    double d2_cap = std::numeric_limits<double>::infinity();
};

struct BlowupEvent {
    double t;
    double u_star;
    BlowupTrigger trigger;
    double t_blow_extrapolated;
};

struct CharacteristicFan;

// Fires when the fan's minimum mu (ODE estimate) drops below mu_stop,
// adjacent characteristics cross in r, or max|dr v| exceeds d2_cap.
std::optional<BlowupEvent> detect_blowup(const CharacteristicFan& fan,
                                         std::span<const MuHistoryRow> history,
                                         const BlowupThresholds& thresholds);

// Least-squares line through the last `tail` (t, mu_min) samples,
// extrapolated to mu = 0. Falls back to the last sample time when the
// fitted slope is not negative.
double extrapolate_mu_zero(std::span<const MuHistoryRow> history, std::size_t tail = 10);

}  // namespace shockwave
