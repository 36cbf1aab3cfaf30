// Run configuration: flat "key = value" text files with '#' comments,
// plus command-line overrides applied last.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "pulse.hpp"

namespace shockwave {

struct RunConfig {
    double delta = 0.1;
    double eps0 = 0.5;
    int p = 1;

    std::string profile_kind = "standard_bump";
    std::optional<double> profile_amplitude;
    std::optional<double> profile_margin;  // target q_max = margin * threshold

    double r_min = 0.2;
    double r_max = 2.2;
    int points_per_pulse = 200;

    double cfl = 0.4;
    double t_max = 1.75;

    // 128 labels across the pulse: the Jacobian-route mu uses a central
    // difference of r over u, and 64 labels leave ~2% stencil truncation
    // at the mu-dip shoulder, eating the whole cross-validation budget.
    int fan_count = 128;

    double mu_stop = 0.05;
    std::optional<double> d2_cap;  // absolute cap on max|dr v|; auto when unset

    std::string output_dir = "out";

    std::vector<double> sweep_delta;
    std::vector<int> sweep_p;

    PulseParams pulse_params() const {
        return PulseParams{delta, eps0, p, profile_amplitude.value_or(0.0)};
    }

    void validate() const;  // throws ConfigError naming the offending key
};

// Parse `path`, then apply "key=value" overrides, then validate.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides);

// Apply a single "key=value" assignment (used for overrides).
void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value,
                      const std::string& where);

// Canonical "key = value" rendering of the resolved configuration.
std::string render_config(const RunConfig& cfg);

}  // namespace shockwave
