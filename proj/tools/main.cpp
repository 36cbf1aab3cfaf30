// shockwave CLI: thin front end over the C library API.
//
// usage: shockwave <subcommand> --config PATH [--out DIR] [--set key=value]...
// subcommands: check-data, run, sweep, predict, compare, convergence
// exit codes: 0 success, 2 config error, 3 numeric failure,
//             4 precondition violation

#include <stdio.h>
#include <string.h>

#include <string>
#include <vector>

#include "shockwave/shockwave.h"

namespace {

void usage(FILE* to) {
    fprintf(to,
            "usage: shockwave <subcommand> --config PATH [--out DIR] [--set key=value]...\n"
            "subcommands:\n"
            "  check-data   verify shock margin and outgoing-constraint exponents\n"
            "  run          single evolution with characteristic tracking\n"
            "  sweep        delta/p sweep with blow-up exponent fit\n"
            "  predict      closed-form prediction only\n"
            "  compare      mu estimates vs the closed-form asymptotic\n"
            "  convergence  3-level grid refinement study\n"
            "global flags:\n"
            "  --config PATH   configuration file (required)\n"
            "  --out DIR       override output.dir\n"
            "  --set key=value override any config key (repeatable)\n");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        usage(stderr);
        return 2;
    }
    const std::string cmd = argv[1];
    if (cmd == "-h" || cmd == "--help" || cmd == "help") {
        usage(stdout);
        return 0;
    }

    std::string config_path;
    std::vector<std::string> overrides;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            config_path = argv[++i];
        } else if (arg == "--out" && i + 1 < argc) {
            overrides.push_back(std::string("output.dir=") + argv[++i]);
        } else if (arg == "--set" && i + 1 < argc) {
            overrides.push_back(argv[++i]);
        } else {
            fprintf(stderr, "unknown or incomplete flag: %s\n", arg.c_str());
            usage(stderr);
            return 2;
        }
    }
    if (config_path.empty()) {
        fprintf(stderr, "--config PATH is required\n");
        return 2;
    }

    std::vector<const char*> ov_ptrs;
    ov_ptrs.reserve(overrides.size());
    for (const std::string& ov : overrides) ov_ptrs.push_back(ov.c_str());

    sw_config* config = NULL;
    sw_status st = sw_config_load(config_path.c_str(), ov_ptrs.data(), ov_ptrs.size(), &config);
    if (st != SW_OK) {
        fprintf(stderr, "error: %s\n", sw_last_error());
        return (int)st;
    }

    sw_report* report = NULL;
    if (cmd == "check-data") {
        st = sw_cmd_check_data(config, &report);
    } else if (cmd == "run") {
        st = sw_cmd_run(config, &report);
    } else if (cmd == "sweep") {
        st = sw_cmd_sweep(config, &report);
    } else if (cmd == "predict") {
        st = sw_cmd_predict(config, &report);
    } else if (cmd == "compare") {
        st = sw_cmd_compare(config, &report);
    } else if (cmd == "convergence") {
        st = sw_cmd_convergence(config, 3, &report);
    } else {
        fprintf(stderr, "unknown subcommand: %s\n", cmd.c_str());
        usage(stderr);
        sw_config_free(config);
        return 2;
    }

    if (st != SW_OK) {
        fprintf(stderr, "error: %s\n", sw_last_error());
        sw_config_free(config);
        return (int)st;
    }

    fputs(sw_report_text(report), stdout);
    sw_report_free(report);
    sw_config_free(config);
    return 0;
}
