#include "shockwave/shockwave.h"

#include <cstring>
#include <map>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "harness.hpp"

#if defined(__GNUC__)
#define SW_API __attribute__((visibility("default")))
#else
#define SW_API
#endif

struct sw_config {
    shockwave::RunConfig cfg;
};

struct sw_report {
    std::string text;
    std::map<std::string, double> metrics;
    std::vector<std::string> names;  // stable enumeration order
};

namespace {

thread_local std::string g_last_error;

sw_status fail(sw_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
sw_status guarded(Fn&& fn) {
    try {
        fn();
        return SW_OK;
    } catch (const shockwave::ConfigError& e) {
        return fail(SW_ERR_CONFIG, e.what());
    } catch (const shockwave::NumericError& e) {
        return fail(SW_ERR_NUMERIC, e.what());
    } catch (const shockwave::PreconditionError& e) {
        return fail(SW_ERR_PRECONDITION, e.what());
    } catch (const std::exception& e) {
        return fail(SW_ERR_NUMERIC, e.what());
    }
}

sw_report* make_report(shockwave::CommandOutput&& out) {
    auto* rep = new sw_report;
    rep->text = std::move(out.text);
    rep->metrics = std::move(out.metrics);
    for (const auto& [name, value] : rep->metrics) {
        (void)value;
        rep->names.push_back(name);
    }
    return rep;
}

}  // namespace

extern "C" {

SW_API const char* sw_version(void) { return "1.0.0"; }

SW_API const char* sw_last_error(void) { return g_last_error.c_str(); }

SW_API sw_status sw_config_load(const char* path, const char* const* overrides,
                                size_t n_overrides, sw_config** out) {
    if (!path || !out) return fail(SW_ERR_PRECONDITION, "sw_config_load: NULL argument");
    *out = nullptr;
    return guarded([&]() {
        std::vector<std::string> ovs;
        for (size_t i = 0; i < n_overrides; ++i) {
            ovs.emplace_back(overrides[i] ? overrides[i] : "");
        }
        auto* handle = new sw_config{shockwave::load_config(path, ovs)};
        *out = handle;
    });
}

SW_API sw_status sw_config_set(sw_config* config, const char* key, const char* value) {
    if (!config || !key || !value) {
        return fail(SW_ERR_PRECONDITION, "sw_config_set: NULL argument");
    }
    return guarded([&]() {
        shockwave::RunConfig next = config->cfg;
        shockwave::apply_assignment(next, key, value, std::string("set '") + key + "'");
        next.validate();
        config->cfg = next;
    });
}

SW_API void sw_config_free(sw_config* config) { delete config; }

SW_API sw_status sw_cmd_check_data(const sw_config* config, sw_report** out) {
    if (!config || !out) return fail(SW_ERR_PRECONDITION, "sw_cmd_check_data: NULL argument");
    *out = nullptr;
    return guarded([&]() {
        const shockwave::CheckDataResult res = shockwave::check_data(config->cfg);
        *out = make_report(shockwave::describe(config->cfg, res));
    });
}

SW_API sw_status sw_cmd_run(const sw_config* config, sw_report** out) {
    if (!config || !out) return fail(SW_ERR_PRECONDITION, "sw_cmd_run: NULL argument");
    *out = nullptr;
    return guarded([&]() {
        const shockwave::RunArtifacts art = shockwave::run_single(config->cfg);
        if (art.run_error) {
            // Partial outputs are on disk; surface the failure.
            throw shockwave::NumericError(*art.run_error);
        }
        *out = make_report(shockwave::describe(config->cfg, art));
    });
}

SW_API sw_status sw_cmd_sweep(const sw_config* config, sw_report** out) {
    if (!config || !out) return fail(SW_ERR_PRECONDITION, "sw_cmd_sweep: NULL argument");
    *out = nullptr;
    return guarded([&]() {
        const shockwave::SweepResult res = shockwave::run_sweep(config->cfg);
        *out = make_report(shockwave::describe(config->cfg, res));
    });
}

SW_API sw_status sw_cmd_predict(const sw_config* config, sw_report** out) {
    if (!config || !out) return fail(SW_ERR_PRECONDITION, "sw_cmd_predict: NULL argument");
    *out = nullptr;
    return guarded([&]() { *out = make_report(shockwave::describe_prediction(config->cfg)); });
}

SW_API sw_status sw_cmd_compare(const sw_config* config, sw_report** out) {
    if (!config || !out) return fail(SW_ERR_PRECONDITION, "sw_cmd_compare: NULL argument");
    *out = nullptr;
    return guarded([&]() {
        const shockwave::CompareResult res = shockwave::compare_mu(config->cfg);
        *out = make_report(shockwave::describe(config->cfg, res));
    });
}

SW_API sw_status sw_cmd_convergence(const sw_config* config, int levels, sw_report** out) {
    if (!config || !out) return fail(SW_ERR_PRECONDITION, "sw_cmd_convergence: NULL argument");
    *out = nullptr;
    return guarded([&]() {
        const shockwave::ConvergenceResult res =
            shockwave::convergence_study(config->cfg, levels);
        *out = make_report(shockwave::describe(config->cfg, res));
    });
}

SW_API const char* sw_report_text(const sw_report* report) {
    return report ? report->text.c_str() : "";
}

SW_API sw_status sw_report_metric(const sw_report* report, const char* name, double* out) {
    if (!report || !name || !out) {
        return fail(SW_ERR_PRECONDITION, "sw_report_metric: NULL argument");
    }
    const auto it = report->metrics.find(name);
    if (it == report->metrics.end()) {
        return fail(SW_ERR_PRECONDITION,
                    (std::string("sw_report_metric: no metric named '") + name + "'").c_str());
    }
    *out = it->second;
    return SW_OK;
}

SW_API size_t sw_report_metric_count(const sw_report* report) {
    return report ? report->names.size() : 0;
}

SW_API const char* sw_report_metric_name(const sw_report* report, size_t index) {
    if (!report || index >= report->names.size()) return nullptr;
    return report->names[index].c_str();
}

SW_API void sw_report_free(sw_report* report) { delete report; }

}  // extern "C"
