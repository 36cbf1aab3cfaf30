// Run orchestration: data construction with amplitude auto-tuning, single
// runs with fan tracking and blow-up detection, delta-sweeps with exponent
// fits, mu comparisons against the closed-form asymptotic, convergence
// studies, and CSV/SVG emission.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "config.hpp"
#include "diagnostics.hpp"
#include "geometry.hpp"
#include "numerics.hpp"
#include "pulse.hpp"
#include "solver.hpp"

namespace shockwave {

struct DataBundle {
    PulseParams params;  // amplitude resolved (auto-tuned in margin mode)
    Profile phi0, phi1;
    Prediction prediction;
};

// Builds (phi0, phi1) from the config. In margin mode the amplitude is
// tuned by bisection so q_max = margin * threshold.
DataBundle build_data(const RunConfig& cfg);

struct BlowupReport {
    double p_c = 0.0, kappa = 0.0, t_star = 0.0;
    double amplitude = 0.0, q_max = 0.0, threshold = 0.0;
    std::optional<double> t_blow_predicted;
    std::optional<double> s_star_predicted;

    std::optional<double> t_blow_measured;  // mu-extrapolated, not the stop time
    std::optional<double> u_star_measured;
    std::string trigger = "none";
    double t_final = 1.0;
    double mu_min_final = 1.0;
    double dt_last = 0.0;
    std::size_t steps = 0;

    std::vector<std::string> events;
    std::vector<std::string> manifest;

    bool blew_up() const { return t_blow_measured.has_value(); }
};

struct RunArtifacts {
    BlowupReport report;
    CharacteristicFan fan;
    std::vector<MuHistoryRow> mu_history;
    FieldState final_state;
    std::vector<ResidualReport> residuals;
    std::optional<D2Growth> d2;
    std::optional<std::string> run_error;  // solver/geometry failure, run kept partial
};

RunArtifacts run_single(const RunConfig& cfg, bool write_files = true);

// --------------------------------------------------------------------- sweep

struct SweepRow {
    double delta = 0.0;
    int p = 1;
    double eps0 = 0.5;
    double amplitude = 0.0;
    double q_max = 0.0;
    std::optional<double> t_blow_measured, t_blow_predicted;
    double t_star = 0.0;
    std::string status;  // ok | no_event | error:...
};

struct SweepResult {
    std::vector<SweepRow> rows;
    // log(t_blow-1) vs log(delta) slope per p-group with >= 4 surviving rows
    std::map<int, LineFit> exponent_fits;
    std::vector<std::string> manifest;
};

SweepResult run_sweep(const RunConfig& cfg, bool write_files = true);

// ------------------------------------------------------------------- compare

struct CompareRow {
    double delta, t, u, mu_ode, mu_jac, mu_asym;
};

struct CompareDeltaSummary {
    double delta = 0.0;
    double sup_err_asym = 0.0;      // sup |mu_ode - mu_asymptotic|
    double sup_rel_jac = 0.0;       // sup |mu_ode - mu_jac|/mu_ode while mu > 0.2
    std::string status;
};

struct CompareResult {
    std::vector<CompareRow> rows;  // strided samples for the table
    std::vector<CompareDeltaSummary> summaries;
    std::optional<LineFit> remainder_fit;  // order of sup_err_asym in delta
    std::vector<std::string> manifest;
};

CompareResult compare_mu(const RunConfig& cfg, bool write_files = true);

// --------------------------------------------------------------- convergence

struct ConvergenceResult {
    double t_ref = 0.0;
    std::vector<int> ppp;  // per level
    // errors between consecutive levels and observed orders between pairs
    std::vector<double> field_err, field_order;
    std::vector<double> mu_ode_err, mu_ode_order;
    std::vector<double> mu_jac_err, mu_jac_order;
    std::vector<double> transport_v_l2, transport_v_order;
    std::vector<double> transport_w_l2, transport_w_order;
    std::vector<double> energy_v_res, energy_v_order;
    std::vector<double> energy_w_res, energy_w_order;
    std::vector<double> crossval;  // max rel |mu_ode-mu_jac| per level
    std::vector<std::string> manifest;
};

ConvergenceResult convergence_study(const RunConfig& cfg, int levels, bool write_files = true);

// ---------------------------------------------------------------- check-data

struct CheckDataResult {
    ShockMargin margin;
    double amplitude = 0.0;
    std::vector<double> deltas;
    ConstraintFit fit_k1, fit_k2;
    std::vector<std::string> manifest;
};

CheckDataResult check_data(const RunConfig& cfg, bool write_files = true);

// ------------------------------------------------------------------ plumbing

// Rendered text summaries (what the CLI prints) and flat scalar metrics
// (what the C API exposes).
struct CommandOutput {
    std::string text;
    std::map<std::string, double> metrics;
};

CommandOutput describe(const RunConfig& cfg, const RunArtifacts& run);
CommandOutput describe(const RunConfig& cfg, const SweepResult& sweep);
CommandOutput describe(const RunConfig& cfg, const CompareResult& compare);
CommandOutput describe(const RunConfig& cfg, const ConvergenceResult& conv);
CommandOutput describe(const RunConfig& cfg, const CheckDataResult& check);
CommandOutput describe_prediction(const RunConfig& cfg);

}  // namespace shockwave
