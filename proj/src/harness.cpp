#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <sstream>

#include "report.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;

namespace shockwave {

namespace {

std::string opt17(const std::optional<double>& x) { return x ? fmt17(*x) : "nan"; }

std::string event_line(const Event& ev) {
    const char* kind = "";
    switch (ev.kind) {
        case Event::Kind::hyperbolicity_loss: kind = "hyperbolicity_loss"; break;
        case Event::Kind::numeric_failure: kind = "numeric_failure"; break;
        case Event::Kind::observer_stop: kind = "observer_stop"; break;
    }
    return std::string(kind) + " at t = " + fmt17(ev.t) + " (" + ev.detail + ")";
}

// Indices 0, stride, 2*stride, ..., always including the last sample.
std::vector<std::size_t> strided_indices(std::size_t n, std::size_t target) {
    std::vector<std::size_t> idx;
    if (n == 0) return idx;
    const std::size_t stride = std::max<std::size_t>(1, n / std::max<std::size_t>(1, target));
    for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

}  // namespace

// ----------------------------------------------------------------- data

DataBundle build_data(const RunConfig& cfg) {
    cfg.validate();
    PulseParams params{cfg.delta, cfg.eps0, cfg.p, 0.0};

    DataBundle bundle;
    if (cfg.profile_amplitude) {
        params.amplitude = *cfg.profile_amplitude;
        bundle.phi0 = (params.amplitude > 0.0) ? Profile::standard_bump(params.amplitude)
                                               : Profile::zero();
    } else {
        // Margin mode: scale the amplitude so q_max = margin * threshold.
        const double margin = cfg.profile_margin.value_or(2.0);
        PulseParams probe = params;
        probe.amplitude = 1.0;
        const double threshold =
            shock_margin(Profile::standard_bump(1.0), build_phi1(Profile::standard_bump(1.0), probe), probe)
                .threshold;
        const double target = margin * threshold;
        auto q_of = [&](double a) {
            const Profile f0 = Profile::standard_bump(a);
            return shock_quantity_max(build_phi1(f0, probe), probe.p).first;
        };
        double a_lo = 1e-6, a_hi = 1e-6;
        while (q_of(a_hi) < target) {
            a_hi *= 2.0;
            if (a_hi > 1e6) {
                throw NumericError("amplitude tuning failed: q_max never reaches the target");
            }
        }
        params.amplitude =
            (q_of(a_lo) >= target)
                ? a_lo
                : bisect_root([&](double a) { return q_of(a) - target; }, a_lo, a_hi);
        bundle.phi0 = Profile::standard_bump(params.amplitude);
    }

    bundle.params = params;
    bundle.phi1 = (params.amplitude > 0.0) ? build_phi1(bundle.phi0, params) : Profile::zero();
    bundle.prediction = predict_blowup(params, bundle.phi0, bundle.phi1);
    return bundle;
}

// --------------------------------------------------------------- tracking

namespace {

class RunTracker final : public StepObserver {
  public:
    RunTracker(CharacteristicFan& fan, std::vector<MuHistoryRow>& history, int p,
               BlowupThresholds thresholds, bool detect)
        : fan_(fan), history_(history), p_(p), thresholds_(thresholds), detect_(detect) {}

    const char* name() const override { return "fan-tracker"; }

    bool on_step(const FieldState& prev, const FieldState& next) override {
        try {
            advance_fan(fan_, prev, next, p_);
        } catch (const Error& e) {
            error_ = e.what();
            return false;
        }
        history_.push_back(history_row(fan_, next));
        if (!detect_) return true;
        if (auto ev = detect_blowup(fan_, history_, thresholds_)) {
            event_ = *ev;
            return false;
        }
        return true;
    }

    static MuHistoryRow history_row(const CharacteristicFan& fan, const FieldState& state) {
        const FanSample& s = fan.latest();
        MuHistoryRow row;
        row.t = s.t;
        row.mu_min = s.mu_ode[0];
        row.u_argmin = fan.u[0];
        for (std::size_t j = 1; j < fan.u.size(); ++j) {
            if (s.mu_ode[j] < row.mu_min) {
                row.mu_min = s.mu_ode[j];
                row.u_argmin = fan.u[j];
            }
        }
        row.max_drv = max_abs_dvdr(state);
        return row;
    }

    std::optional<BlowupEvent> event_;
    std::optional<std::string> error_;

  private:
    CharacteristicFan& fan_;
    std::vector<MuHistoryRow>& history_;
    int p_;
    BlowupThresholds thresholds_;
    bool detect_;
};

void write_run_files(const RunConfig& cfg, RunArtifacts& art) {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    std::vector<std::string>& manifest = art.report.manifest;

    const std::string cfg_path = (dir / "config_resolved.txt").string();
    write_text_file(cfg_path, render_config(cfg));
    manifest.push_back(cfg_path);

    // fan.csv, strided in time
    CsvWriter fan_csv((dir / "fan.csv").string(),
                      {"t", "u", "r", "c", "mu_ode", "mu_jac", "trchi", "trchi_check"});
    const auto idx = strided_indices(art.fan.samples.size(), 200);
    for (std::size_t i : idx) {
        const FanSample& s = art.fan.samples[i];
        for (std::size_t j = 0; j < art.fan.u.size(); ++j) {
            fan_csv.row({fmt17(s.t), fmt17(art.fan.u[j]), fmt17(s.r[j]), fmt17(s.c[j]),
                         fmt17(s.mu_ode[j]), fmt17(s.mu_jac[j]), fmt17(s.trchi[j]),
                         fmt17(s.trchi_check[j])});
        }
    }
    fan_csv.write();
    manifest.push_back(fan_csv.path());

    CsvWriter mu_csv((dir / "muhist.csv").string(), {"t", "mu_min", "u_argmin", "max_drv"});
    for (const MuHistoryRow& row : art.mu_history) {
        mu_csv.row({fmt17(row.t), fmt17(row.mu_min), fmt17(row.u_argmin), fmt17(row.max_drv)});
    }
    mu_csv.write();
    manifest.push_back(mu_csv.path());

    {
        SvgSeries s;
        s.label = "mu_min";
        for (const MuHistoryRow& row : art.mu_history) {
            s.x.push_back(row.t);
            s.y.push_back(row.mu_min);
        }
        SvgOptions opt;
        opt.title = "inverse foliation density minimum";
        opt.x_label = "t";
        opt.y_label = "mu_min";
        const std::string path = (dir / "mu_min.svg").string();
        write_svg_plot(path, opt, {s});
        manifest.push_back(path);
    }
    {
        std::vector<SvgSeries> series(art.fan.u.size());
        for (std::size_t j = 0; j < art.fan.u.size(); ++j) {
            for (std::size_t i : idx) {
                series[j].x.push_back(art.fan.samples[i].t);
                series[j].y.push_back(art.fan.samples[i].r[j]);
            }
        }
        SvgOptions opt;
        opt.title = "outgoing characteristics";
        opt.x_label = "t";
        opt.y_label = "r(t; u)";
        const std::string path = (dir / "fan.svg").string();
        write_svg_plot(path, opt, series);
        manifest.push_back(path);
    }
}

}  // namespace

RunArtifacts run_single(const RunConfig& cfg, bool write_files) {
    cfg.validate();
    RunArtifacts art;

    const DataBundle bundle = build_data(cfg);
    const PulseParams& params = bundle.params;
    const Prediction& pred = bundle.prediction;

    BlowupReport& rep = art.report;
    rep.p_c = pred.p_c;
    rep.kappa = pred.kappa;
    rep.t_star = pred.t_star;
    rep.amplitude = params.amplitude;
    rep.q_max = pred.q_max;
    rep.threshold = pred.threshold;
    rep.t_blow_predicted = pred.t_blow_pred;
    if (pred.status == Prediction::Status::predicted) rep.s_star_predicted = pred.s_pred;

    const RadialGrid grid = make_grid(cfg.r_min, cfg.r_max, cfg.delta, cfg.points_per_pulse);
    FieldState state = initial_fields(params, bundle.phi0, bundle.phi1, grid);
    art.fan = seed_fan(params, state, static_cast<std::size_t>(cfg.fan_count));

    BlowupThresholds thresholds;
    thresholds.mu_stop = cfg.mu_stop;
    const double drv0 = max_abs_dvdr(state);
    if (cfg.d2_cap) {
        thresholds.d2_cap = *cfg.d2_cap;
    } else if (drv0 > 0.0) {
        thresholds.d2_cap = 1e3 / params.delta * drv0;
    }

    art.mu_history.push_back(RunTracker::history_row(art.fan, state));
    RunTracker tracker(art.fan, art.mu_history, params.p, thresholds, true);
    StepObserver* obs[] = {&tracker};

    EvolveOptions opts;
    opts.p = params.p;
    opts.cfl = cfg.cfl;
    EvolveResult evr = evolve(std::move(state), cfg.t_max, opts, obs);

    art.final_state = std::move(evr.state);
    art.run_error = tracker.error_;
    rep.steps = evr.steps;
    rep.dt_last = evr.dt_last;
    rep.t_final = art.final_state.t;
    rep.mu_min_final = art.mu_history.back().mu_min;
    for (const Event& ev : evr.events) rep.events.push_back(event_line(ev));
    if (tracker.error_) rep.events.push_back("run error: " + *tracker.error_);

    if (tracker.event_) {
        rep.trigger = trigger_name(tracker.event_->trigger);
        rep.u_star_measured = tracker.event_->u_star;
        rep.t_blow_measured = tracker.event_->t_blow_extrapolated;
    }
    for (const Event& ev : evr.events) {
        if (ev.kind == Event::Kind::hyperbolicity_loss || ev.kind == Event::Kind::numeric_failure) {
            art.run_error = art.run_error.value_or(ev.detail);
        }
    }

    // Diagnostics over the recorded fan history.
    if (art.fan.samples.size() >= 7) {
        art.residuals.push_back(transport_residual(art.fan, params.p, PsiSelector::v));
        art.residuals.push_back(transport_residual(art.fan, params.p, PsiSelector::w));
        std::size_t t_idx = art.fan.samples.size() - 1;
        for (std::size_t i = art.mu_history.size(); i-- > 0;) {
            if (art.mu_history[i].mu_min >= 0.3) {
                t_idx = i;
                break;
            }
        }
        if (t_idx >= 4) {
            const std::size_t u_idx = art.fan.u.size() - 1;
            art.residuals.push_back(
                energy_identity_residual(art.fan, params.p, t_idx, u_idx, PsiSelector::v));
            art.residuals.push_back(
                energy_identity_residual(art.fan, params.p, t_idx, u_idx, PsiSelector::w));
        }
        try {
            art.d2 = d2_growth(art.mu_history);
        } catch (const PreconditionError&) {
            // window never opened (no near-blow-up samples)
        }
    }

    if (write_files) {
        write_run_files(cfg, art);
        const CommandOutput out = describe(cfg, art);
        const std::string path = (fs::path(cfg.output_dir) / "report.txt").string();
        std::string text = out.text + "\nmanifest:\n";
        for (const std::string& f : art.report.manifest) text += "  " + f + "\n";
        text += "  " + path + "\n";
        art.report.manifest.push_back(path);
        write_text_file(path, text);
    }
    return art;
}

// -------------------------------------------------------------------- sweep

SweepResult run_sweep(const RunConfig& cfg, bool write_files) {
    cfg.validate();
    const std::vector<double> deltas = cfg.sweep_delta.empty()
                                           ? std::vector<double>{cfg.delta}
                                           : cfg.sweep_delta;
    const std::vector<int> ps = cfg.sweep_p.empty() ? std::vector<int>{cfg.p} : cfg.sweep_p;

    struct Task {
        RunConfig cfg;
        SweepRow row;
        std::vector<std::string> files;
    };
    std::vector<Task> tasks;
    for (int p : ps) {
        for (double d : deltas) {
            Task task;
            task.cfg = cfg;
            task.cfg.delta = d;
            task.cfg.p = p;
            task.cfg.sweep_delta.clear();
            task.cfg.sweep_p.clear();
            std::ostringstream sub;
            sub << "sweep_delta=" << d << "_p=" << p;
            task.cfg.output_dir = (fs::path(cfg.output_dir) / sub.str()).string();
            task.row.delta = d;
            task.row.p = p;
            task.row.eps0 = cfg.eps0;
            tasks.push_back(std::move(task));
        }
    }

    SweepResult result;
    std::vector<std::future<Task>> futures;
    futures.reserve(tasks.size());
    for (Task& task : tasks) {
        futures.push_back(std::async(std::launch::async, [task, write_files]() mutable {
            try {
                const RunArtifacts art = run_single(task.cfg, write_files);
                task.row.amplitude = art.report.amplitude;
                task.row.q_max = art.report.q_max;
                task.row.t_star = art.report.t_star;
                task.row.t_blow_predicted = art.report.t_blow_predicted;
                task.files = art.report.manifest;
                if (art.run_error) {
                    task.row.status = "error: " + *art.run_error;
                } else if (art.report.blew_up()) {
                    task.row.t_blow_measured = art.report.t_blow_measured;
                    task.row.status = "ok";
                } else {
                    task.row.status = "no_event";
                }
            } catch (const Error& e) {
                task.row.status = std::string("error: ") + e.what();
            }
            return task;
        }));
    }
    for (auto& f : futures) {
        Task task = f.get();
        result.rows.push_back(task.row);
        for (std::string& file : task.files) result.manifest.push_back(std::move(file));
    }

    // kappa fit per p-group with >= 4 surviving blow-up rows
    for (int p : ps) {
        std::vector<double> lx, ly;
        for (const SweepRow& row : result.rows) {
            if (row.p != p || row.status != "ok" || !row.t_blow_measured) continue;
            const double tb = *row.t_blow_measured - 1.0;
            if (tb <= 0.0) continue;
            lx.push_back(std::log(row.delta));
            ly.push_back(std::log(tb));
        }
        if (lx.size() >= 4) {
            result.exponent_fits[p] = fit_line(lx, ly);
        }
    }

    if (write_files) {
        const fs::path dir(cfg.output_dir);
        CsvWriter csv((dir / "sweep.csv").string(),
                      {"delta", "p", "eps0", "amplitude", "q_max", "t_blow_measured",
                       "t_blow_predicted", "t_star", "status"});
        for (const SweepRow& row : result.rows) {
            csv.row({fmt17(row.delta), std::to_string(row.p), fmt17(row.eps0),
                     fmt17(row.amplitude), fmt17(row.q_max), opt17(row.t_blow_measured),
                     opt17(row.t_blow_predicted), fmt17(row.t_star), row.status});
        }
        csv.write();
        result.manifest.push_back(csv.path());

        std::vector<SvgSeries> series;
        for (int p : ps) {
            SvgSeries s;
            s.label = "p = " + std::to_string(p);
            std::vector<std::pair<double, double>> pts;
            for (const SweepRow& row : result.rows) {
                if (row.p == p && row.t_blow_measured && *row.t_blow_measured > 1.0) {
                    pts.emplace_back(row.delta, *row.t_blow_measured - 1.0);
                }
            }
            std::sort(pts.begin(), pts.end());
            for (auto& [x, y] : pts) {
                s.x.push_back(x);
                s.y.push_back(y);
            }
            if (!s.x.empty()) series.push_back(std::move(s));
        }
        SvgOptions opt;
        opt.title = "blow-up time scaling";
        opt.x_label = "delta";
        opt.y_label = "t_blow - 1";
        opt.log_x = true;
        opt.log_y = true;
        const std::string svg_path = (dir / "sweep.svg").string();
        write_svg_plot(svg_path, opt, series);
        result.manifest.push_back(svg_path);

        const CommandOutput out = describe(cfg, result);
        const std::string rep_path = (dir / "report.txt").string();
        std::string text = out.text + "\nmanifest:\n";
        for (const std::string& f : result.manifest) text += "  " + f + "\n";
        text += "  " + rep_path + "\n";
        result.manifest.push_back(rep_path);
        write_text_file(rep_path, text);
    }
    return result;
}

// ------------------------------------------------------------------ compare

CompareResult compare_mu(const RunConfig& cfg, bool write_files) {
    cfg.validate();
    const std::vector<double> deltas = cfg.sweep_delta.empty()
                                           ? std::vector<double>{cfg.delta}
                                           : cfg.sweep_delta;

    CompareResult result;
    for (double d : deltas) {
        RunConfig rc = cfg;
        rc.delta = d;
        rc.sweep_delta.clear();
        rc.sweep_p.clear();

        CompareDeltaSummary summary;
        summary.delta = d;
        try {
            const RunArtifacts art = run_single(rc, false);
            const DataBundle bundle = build_data(rc);
            if (art.run_error) {
                summary.status = "error: " + *art.run_error;
            } else {
                summary.status = "ok";
                const auto t_idx = strided_indices(art.fan.samples.size(), 24);
                const std::size_t m = art.fan.u.size();
                const std::size_t u_stride = std::max<std::size_t>(1, m / 16);
                for (std::size_t i = 0; i < art.fan.samples.size(); ++i) {
                    const FanSample& s = art.fan.samples[i];
                    // cross-validation window: all samples at times while
                    // the fan minimum is still above 0.2
                    const double mu_min =
                        *std::min_element(s.mu_ode.begin(), s.mu_ode.end());
                    for (std::size_t j = 0; j < m; ++j) {
                        const double sj = -art.fan.u[j] / d;
                        const double asym = mu_asymptotic(s.t, sj, bundle.params, bundle.phi1);
                        summary.sup_err_asym =
                            std::max(summary.sup_err_asym, std::abs(s.mu_ode[j] - asym));
                        if (mu_min > 0.2) {
                            summary.sup_rel_jac =
                                std::max(summary.sup_rel_jac,
                                         std::abs(s.mu_ode[j] - s.mu_jac[j]) / s.mu_ode[j]);
                        }
                        if (std::find(t_idx.begin(), t_idx.end(), i) != t_idx.end() &&
                            j % u_stride == 0) {
                            result.rows.push_back(
                                {d, s.t, art.fan.u[j], s.mu_ode[j], s.mu_jac[j], asym});
                        }
                    }
                }
            }
        } catch (const Error& e) {
            summary.status = std::string("error: ") + e.what();
        }
        result.summaries.push_back(summary);
    }

    std::vector<double> lx, ly;
    for (const CompareDeltaSummary& s : result.summaries) {
        if (s.status == "ok" && s.sup_err_asym > 0.0) {
            lx.push_back(std::log(s.delta));
            ly.push_back(std::log(s.sup_err_asym));
        }
    }
    if (lx.size() >= 2) result.remainder_fit = fit_line(lx, ly);

    if (write_files) {
        const fs::path dir(cfg.output_dir);
        CsvWriter csv((dir / "compare.csv").string(),
                      {"delta", "t", "u", "mu_ode", "mu_jac", "mu_asym", "err_jac", "err_asym"});
        for (const CompareRow& row : result.rows) {
            csv.row({fmt17(row.delta), fmt17(row.t), fmt17(row.u), fmt17(row.mu_ode),
                     fmt17(row.mu_jac), fmt17(row.mu_asym),
                     fmt17(std::abs(row.mu_ode - row.mu_jac)),
                     fmt17(std::abs(row.mu_ode - row.mu_asym))});
        }
        csv.write();
        result.manifest.push_back(csv.path());

        const CommandOutput out = describe(cfg, result);
        const std::string rep_path = (dir / "report.txt").string();
        std::string text = out.text + "\nmanifest:\n";
        for (const std::string& f : result.manifest) text += "  " + f + "\n";
        text += "  " + rep_path + "\n";
        result.manifest.push_back(rep_path);
        write_text_file(rep_path, text);
    }
    return result;
}

// -------------------------------------------------------------- convergence

namespace {

double order_between(double coarse_err, double fine_err) {
    if (!(coarse_err > 0.0) || !(fine_err > 0.0)) return 0.0;
    return std::log2(coarse_err / fine_err);
}

}  // namespace

ConvergenceResult convergence_study(const RunConfig& cfg, int levels, bool write_files) {
    cfg.validate();
    if (levels < 3) {
        throw PreconditionError("convergence_study: levels must be >= 3");
    }

    const DataBundle bundle = build_data(cfg);
    const double t_pred = bundle.prediction.t_blow_pred.value_or(cfg.t_max);
    ConvergenceResult result;
    result.t_ref = std::min(1.0 + 0.5 * (t_pred - 1.0), cfg.t_max);

    struct Level {
        FieldState state;
        CharacteristicFan fan;
        ResidualReport tv, tw, ev, ew;
        double crossval = 0.0;
    };
    std::vector<Level> lv;

    for (int l = 0; l < levels; ++l) {
        RunConfig rc = cfg;
        rc.points_per_pulse = cfg.points_per_pulse << l;
        result.ppp.push_back(rc.points_per_pulse);

        const RadialGrid grid = make_grid(rc.r_min, rc.r_max, rc.delta, rc.points_per_pulse);
        FieldState state = initial_fields(bundle.params, bundle.phi0, bundle.phi1, grid);
        Level level;
        level.fan = seed_fan(bundle.params, state, static_cast<std::size_t>(rc.fan_count));

        std::vector<MuHistoryRow> history;
        history.push_back(RunTracker::history_row(level.fan, state));
        RunTracker tracker(level.fan, history, bundle.params.p, BlowupThresholds{}, false);
        StepObserver* obs[] = {&tracker};
        EvolveOptions opts;
        opts.p = bundle.params.p;
        opts.cfl = rc.cfl;
        EvolveResult evr = evolve(std::move(state), result.t_ref, opts, obs);
        if (tracker.error_) {
            throw NumericError("convergence_study level " + std::to_string(l) + ": " +
                               *tracker.error_);
        }
        level.state = std::move(evr.state);

        level.tv = transport_residual(level.fan, bundle.params.p, PsiSelector::v);
        level.tw = transport_residual(level.fan, bundle.params.p, PsiSelector::w);
        const std::size_t t_idx = level.fan.samples.size() - 1;
        const std::size_t u_idx = level.fan.u.size() - 1;
        level.ev = energy_identity_residual(level.fan, bundle.params.p, t_idx, u_idx, PsiSelector::v);
        level.ew = energy_identity_residual(level.fan, bundle.params.p, t_idx, u_idx, PsiSelector::w);

        for (const FanSample& s : level.fan.samples) {
            if (*std::min_element(s.mu_ode.begin(), s.mu_ode.end()) <= 0.2) continue;
            for (std::size_t j = 0; j < level.fan.u.size(); ++j) {
                level.crossval = std::max(level.crossval,
                                          std::abs(s.mu_ode[j] - s.mu_jac[j]) / s.mu_ode[j]);
            }
        }
        lv.push_back(std::move(level));
    }

    // Field errors between nested grids: fine index 2j matches coarse j.
    for (int l = 0; l + 1 < levels; ++l) {
        const FieldState& sc = lv[l].state;
        const FieldState& sf = lv[l + 1].state;
        double sum2 = 0.0;
        for (std::size_t j = 0; j < sc.size(); ++j) {
            const std::size_t jf = 2 * j;
            if (jf >= sf.size()) break;
            const double d = sc.v[j] - sf.v[jf];
            sum2 += d * d;
        }
        result.field_err.push_back(std::sqrt(sum2 * sc.grid.dr));

        const FanSample& fc = lv[l].fan.latest();
        const FanSample& ff = lv[l + 1].fan.latest();
        double e_ode = 0.0, e_jac = 0.0;
        for (std::size_t j = 0; j < fc.mu_ode.size(); ++j) {
            e_ode = std::max(e_ode, std::abs(fc.mu_ode[j] - ff.mu_ode[j]));
            e_jac = std::max(e_jac, std::abs(fc.mu_jac[j] - ff.mu_jac[j]));
        }
        result.mu_ode_err.push_back(e_ode);
        result.mu_jac_err.push_back(e_jac);
    }
    for (int l = 0; l + 2 < levels; ++l) {
        result.field_order.push_back(order_between(result.field_err[l], result.field_err[l + 1]));
        result.mu_ode_order.push_back(order_between(result.mu_ode_err[l], result.mu_ode_err[l + 1]));
        result.mu_jac_order.push_back(order_between(result.mu_jac_err[l], result.mu_jac_err[l + 1]));
    }
    for (int l = 0; l < levels; ++l) {
        result.transport_v_l2.push_back(lv[l].tv.l2);
        result.transport_w_l2.push_back(lv[l].tw.l2);
        result.energy_v_res.push_back(lv[l].ev.max_abs);
        result.energy_w_res.push_back(lv[l].ew.max_abs);
        result.crossval.push_back(lv[l].crossval);
    }
    for (int l = 0; l + 1 < levels; ++l) {
        result.transport_v_order.push_back(
            order_between(result.transport_v_l2[l], result.transport_v_l2[l + 1]));
        result.transport_w_order.push_back(
            order_between(result.transport_w_l2[l], result.transport_w_l2[l + 1]));
        result.energy_v_order.push_back(
            order_between(result.energy_v_res[l], result.energy_v_res[l + 1]));
        result.energy_w_order.push_back(
            order_between(result.energy_w_res[l], result.energy_w_res[l + 1]));
    }

    if (write_files) {
        const fs::path dir(cfg.output_dir);
        CsvWriter csv((dir / "convergence.csv").string(),
                      {"level", "points_per_pulse", "field_err", "mu_ode_err", "mu_jac_err",
                       "transport_v_l2", "transport_w_l2", "energy_v_res", "energy_w_res",
                       "crossval"});
        for (int l = 0; l < levels; ++l) {
            auto err_at = [&](const std::vector<double>& e) {
                return (l < static_cast<int>(e.size())) ? fmt17(e[l]) : std::string("nan");
            };
            csv.row({std::to_string(l), std::to_string(result.ppp[l]), err_at(result.field_err),
                     err_at(result.mu_ode_err), err_at(result.mu_jac_err),
                     fmt17(result.transport_v_l2[l]), fmt17(result.transport_w_l2[l]),
                     fmt17(result.energy_v_res[l]), fmt17(result.energy_w_res[l]),
                     fmt17(result.crossval[l])});
        }
        csv.write();
        result.manifest.push_back(csv.path());

        const CommandOutput out = describe(cfg, result);
        const std::string rep_path = (dir / "report.txt").string();
        std::string text = out.text + "\nmanifest:\n";
        for (const std::string& f : result.manifest) text += "  " + f + "\n";
        text += "  " + rep_path + "\n";
        result.manifest.push_back(rep_path);
        write_text_file(rep_path, text);
    }
    return result;
}

// --------------------------------------------------------------- check-data

CheckDataResult check_data(const RunConfig& cfg, bool write_files) {
    cfg.validate();
    const DataBundle bundle = build_data(cfg);

    CheckDataResult result;
    result.amplitude = bundle.params.amplitude;
    if (!bundle.params.supercritical() && bundle.params.amplitude > 0.0) {
        result.margin = shock_margin(bundle.phi0, bundle.phi1, bundle.params);
    } else {
        result.margin.q_max = bundle.prediction.q_max;
        result.margin.threshold = std::numeric_limits<double>::quiet_NaN();
        result.margin.satisfied = false;
    }

    result.deltas = (cfg.sweep_delta.size() >= 4) ? cfg.sweep_delta : default_delta_grid();
    result.fit_k1 = constraint_exponent_fit(bundle.params, result.deltas, bundle.phi0, 1);
    result.fit_k2 = constraint_exponent_fit(bundle.params, result.deltas, bundle.phi0, 2);

    if (write_files) {
        const CommandOutput out = describe(cfg, result);
        const std::string rep_path = (fs::path(cfg.output_dir) / "report.txt").string();
        std::string text = out.text + "\nmanifest:\n  " + rep_path + "\n";
        result.manifest.push_back(rep_path);
        write_text_file(rep_path, text);
    }
    return result;
}

// ------------------------------------------------------------- description

CommandOutput describe(const RunConfig& cfg, const RunArtifacts& art) {
    const BlowupReport& rep = art.report;
    CommandOutput out;
    std::ostringstream os;
    os << "run: p=" << cfg.p << " eps0=" << fmt17(cfg.eps0) << " delta=" << fmt17(cfg.delta)
       << "\n";
    os << "data: amplitude=" << fmt17(rep.amplitude) << " q_max=" << fmt17(rep.q_max)
       << " threshold=" << fmt17(rep.threshold) << "\n";
    os << "critical: p_c=" << fmt17(rep.p_c) << " kappa=" << fmt17(rep.kappa)
       << " t_star=" << fmt17(rep.t_star) << "\n";
    os << "predicted: t_blow=" << opt17(rep.t_blow_predicted)
       << " s_star=" << opt17(rep.s_star_predicted) << "\n";
    os << "measured: trigger=" << rep.trigger << " t_blow=" << opt17(rep.t_blow_measured)
       << " u_star=" << opt17(rep.u_star_measured) << "\n";
    os << "final: t=" << fmt17(rep.t_final) << " mu_min=" << fmt17(rep.mu_min_final)
       << " steps=" << rep.steps << "\n";
    for (const ResidualReport& r : art.residuals) {
        os << "residual " << r.name << ": max=" << fmt17(r.max_abs) << " rms=" << fmt17(r.l2)
           << " samples=" << r.samples << "\n";
        out.metrics[r.name + ".max"] = r.max_abs;
        out.metrics[r.name + ".l2"] = r.l2;
    }
    if (art.d2) {
        os << "d2_growth: slope=" << fmt17(art.d2->slope) << " pearson=" << fmt17(art.d2->pearson)
           << " n=" << art.d2->n << "\n";
        out.metrics["d2.slope"] = art.d2->slope;
        out.metrics["d2.pearson"] = art.d2->pearson;
    }
    for (const std::string& ev : rep.events) os << "event: " << ev << "\n";

    out.metrics["p_c"] = rep.p_c;
    out.metrics["kappa"] = rep.kappa;
    out.metrics["t_star"] = rep.t_star;
    out.metrics["amplitude"] = rep.amplitude;
    out.metrics["q_max"] = rep.q_max;
    out.metrics["threshold"] = rep.threshold;
    out.metrics["t_final"] = rep.t_final;
    out.metrics["mu_min_final"] = rep.mu_min_final;
    out.metrics["steps"] = static_cast<double>(rep.steps);
    out.metrics["blew_up"] = rep.blew_up() ? 1.0 : 0.0;
    if (rep.t_blow_measured) out.metrics["t_blow_measured"] = *rep.t_blow_measured;
    if (rep.t_blow_predicted) out.metrics["t_blow_predicted"] = *rep.t_blow_predicted;
    if (rep.u_star_measured) out.metrics["u_star_measured"] = *rep.u_star_measured;
    if (rep.s_star_predicted) out.metrics["s_star_predicted"] = *rep.s_star_predicted;
    out.text = os.str();
    return out;
}

CommandOutput describe(const RunConfig& cfg, const SweepResult& sweep) {
    CommandOutput out;
    std::ostringstream os;
    os << "sweep: eps0=" << fmt17(cfg.eps0) << "\n";
    os << "delta,p,q_max,t_blow_measured,t_blow_predicted,t_star,status\n";
    for (const SweepRow& row : sweep.rows) {
        os << fmt17(row.delta) << "," << row.p << "," << fmt17(row.q_max) << ","
           << opt17(row.t_blow_measured) << "," << opt17(row.t_blow_predicted) << ","
           << fmt17(row.t_star) << "," << row.status << "\n";
    }
    for (const auto& [p, fit] : sweep.exponent_fits) {
        os << "exponent fit p=" << p << ": slope=" << fmt17(fit.slope)
           << " stderr=" << fmt17(fit.slope_stderr) << " expected kappa="
           << fmt17(1.0 - (1.0 - cfg.eps0) * static_cast<double>(p)) << "\n";
        out.metrics["exponent.p" + std::to_string(p) + ".slope"] = fit.slope;
        out.metrics["exponent.p" + std::to_string(p) + ".stderr"] = fit.slope_stderr;
    }
    out.metrics["rows"] = static_cast<double>(sweep.rows.size());
    if (!sweep.exponent_fits.empty()) {
        out.metrics["exponent.slope"] = sweep.exponent_fits.begin()->second.slope;
        out.metrics["exponent.stderr"] = sweep.exponent_fits.begin()->second.slope_stderr;
    }
    out.text = os.str();
    return out;
}

CommandOutput describe(const RunConfig& cfg, const CompareResult& compare) {
    CommandOutput out;
    std::ostringstream os;
    os << "compare: p=" << cfg.p << " eps0=" << fmt17(cfg.eps0) << "\n";
    os << "delta,sup|mu_ode-mu_asym|,sup_rel|mu_ode-mu_jac|,status\n";
    for (const CompareDeltaSummary& s : compare.summaries) {
        os << fmt17(s.delta) << "," << fmt17(s.sup_err_asym) << "," << fmt17(s.sup_rel_jac) << ","
           << s.status << "\n";
        out.metrics["sup_rel_jac@" + fmt17(s.delta)] = s.sup_rel_jac;
    }
    if (compare.remainder_fit) {
        os << "remainder order in delta: " << fmt17(compare.remainder_fit->slope)
           << " (expected >= (1-eps0)p = "
           << fmt17((1.0 - cfg.eps0) * static_cast<double>(cfg.p)) << ")\n";
        out.metrics["remainder.order"] = compare.remainder_fit->slope;
    }
    if (!compare.summaries.empty()) {
        double worst = 0.0;
        for (const CompareDeltaSummary& s : compare.summaries) {
            worst = std::max(worst, s.sup_rel_jac);
        }
        out.metrics["sup_rel_jac.max"] = worst;
    }
    out.text = os.str();
    return out;
}

CommandOutput describe(const RunConfig& cfg, const ConvergenceResult& conv) {
    (void)cfg;
    CommandOutput out;
    std::ostringstream os;
    os << "convergence study at t_ref=" << fmt17(conv.t_ref) << "\n";
    auto print_orders = [&os, &out](const char* name, const std::vector<double>& ords) {
        if (ords.empty()) return;
        double lo = ords[0];
        os << name << " orders:";
        for (double o : ords) {
            os << " " << fmt17(o);
            lo = std::min(lo, o);
        }
        os << "\n";
        out.metrics[std::string(name) + ".order.min"] = lo;
    };
    print_orders("field", conv.field_order);
    print_orders("mu_ode", conv.mu_ode_order);
    print_orders("mu_jac", conv.mu_jac_order);
    print_orders("transport_v", conv.transport_v_order);
    print_orders("transport_w", conv.transport_w_order);
    print_orders("energy_v", conv.energy_v_order);
    print_orders("energy_w", conv.energy_w_order);
    os << "crossval per level:";
    for (double c : conv.crossval) os << " " << fmt17(c);
    os << "\n";
    if (!conv.crossval.empty()) {
        out.metrics["crossval.first"] = conv.crossval.front();
        out.metrics["crossval.last"] = conv.crossval.back();
    }
    out.text = os.str();
    return out;
}

CommandOutput describe(const RunConfig& cfg, const CheckDataResult& check) {
    CommandOutput out;
    std::ostringstream os;
    os << "check-data: p=" << cfg.p << " eps0=" << fmt17(cfg.eps0) << " amplitude="
       << fmt17(check.amplitude) << "\n";
    os << "shock margin: q_max=" << fmt17(check.margin.q_max)
       << " threshold=" << fmt17(check.margin.threshold) << " s_star="
       << fmt17(check.margin.s_star) << " satisfied=" << (check.margin.satisfied ? "yes" : "no")
       << "\n";
    os << "constraint order k=1: slope=" << fmt17(check.fit_k1.slope)
       << " expected=" << fmt17(check.fit_k1.expected)
       << " residual=" << fmt17(check.fit_k1.residual) << "\n";
    os << "constraint order k=2: slope=" << fmt17(check.fit_k2.slope)
       << " expected=" << fmt17(check.fit_k2.expected)
       << " residual=" << fmt17(check.fit_k2.residual) << "\n";
    out.metrics["margin.q_max"] = check.margin.q_max;
    out.metrics["margin.threshold"] = check.margin.threshold;
    out.metrics["margin.satisfied"] = check.margin.satisfied ? 1.0 : 0.0;
    out.metrics["k1.slope"] = check.fit_k1.slope;
    out.metrics["k1.expected"] = check.fit_k1.expected;
    out.metrics["k2.slope"] = check.fit_k2.slope;
    out.metrics["k2.expected"] = check.fit_k2.expected;
    out.text = os.str();
    return out;
}

CommandOutput describe_prediction(const RunConfig& cfg) {
    const DataBundle bundle = build_data(cfg);
    const Prediction& pred = bundle.prediction;
    CommandOutput out;
    std::ostringstream os;
    os << "predict: p=" << cfg.p << " eps0=" << fmt17(cfg.eps0) << " delta=" << fmt17(cfg.delta)
       << "\n";
    os << "p_c=" << fmt17(pred.p_c) << " kappa=" << fmt17(pred.kappa)
       << " t_star=" << fmt17(pred.t_star) << "\n";
    os << "amplitude=" << fmt17(bundle.params.amplitude) << " q_max=" << fmt17(pred.q_max)
       << " threshold=" << fmt17(pred.threshold) << "\n";
    switch (pred.status) {
        case Prediction::Status::predicted:
            os << "t_blow_pred=" << fmt17(*pred.t_blow_pred) << " at s=" << fmt17(pred.s_pred)
               << " (u=" << fmt17(pred.u_pred) << ")\n";
            break;
        case Prediction::Status::margin_unsatisfied:
            os << "no blow-up predicted: shock margin unsatisfied\n";
            break;
        case Prediction::Status::no_blowup_before_t_star:
            os << "no blow-up before t_star: margin too small\n";
            break;
        case Prediction::Status::not_applicable:
            os << "p > p_c: global-existence regime, no prediction\n";
            break;
    }
    out.metrics["p_c"] = pred.p_c;
    out.metrics["kappa"] = pred.kappa;
    out.metrics["t_star"] = pred.t_star;
    out.metrics["q_max"] = pred.q_max;
    out.metrics["threshold"] = pred.threshold;
    out.metrics["amplitude"] = bundle.params.amplitude;
    if (pred.t_blow_pred) out.metrics["t_blow_pred"] = *pred.t_blow_pred;
    out.text = os.str();
    return out;
}

}  // namespace shockwave
