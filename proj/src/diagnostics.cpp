#include "diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "numerics.hpp"

namespace shockwave {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

// Per-characteristic time series of the null-frame derivatives and the
// identity building blocks, indexed [characteristic][time].
struct FanSeries {
    std::size_t m = 0, k = 0;
    std::vector<double> t;
    std::vector<std::vector<double>> r, c, mu, trchi, v, w;
    std::vector<std::vector<double>> Lpsi, Tpsi, Lbpsi, LLbpsi, Lv, Tv, H, F, ang, Lc2mu;
};

FanSeries build_series(const CharacteristicFan& fan, int p, PsiSelector psi) {
    FanSeries fs;
    fs.m = fan.u.size();
    fs.k = fan.samples.size();
    if (fs.k < 5) {
        throw PreconditionError("needs more samples: the L-derivative stencil requires >= 5");
    }
    fs.t.resize(fs.k);
    for (std::size_t i = 0; i < fs.k; ++i) fs.t[i] = fan.samples[i].t;

    auto alloc = [&](std::vector<std::vector<double>>& a) {
        a.assign(fs.m, std::vector<double>(fs.k));
    };
    alloc(fs.r);
    alloc(fs.c);
    alloc(fs.mu);
    alloc(fs.trchi);
    alloc(fs.v);
    alloc(fs.w);
    alloc(fs.Lpsi);
    alloc(fs.Tpsi);
    alloc(fs.Lbpsi);
    alloc(fs.LLbpsi);
    alloc(fs.Lv);
    alloc(fs.Tv);
    alloc(fs.H);
    alloc(fs.F);
    alloc(fs.ang);
    alloc(fs.Lc2mu);

    std::vector<double> series(fs.k), psir(fs.k), c2mu(fs.k);
    for (std::size_t j = 0; j < fs.m; ++j) {
        for (std::size_t i = 0; i < fs.k; ++i) {
            const FanSample& s = fan.samples[i];
            fs.r[j][i] = s.r[j];
            fs.c[j][i] = s.c[j];
            fs.mu[j][i] = s.mu_ode[j];
            fs.trchi[j][i] = s.trchi[j];
            fs.v[j][i] = s.v[j];
            fs.w[j][i] = s.w[j];
        }

        // psi trace and its radial derivative along this characteristic
        for (std::size_t i = 0; i < fs.k; ++i) {
            const FanSample& s = fan.samples[i];
            series[i] = (psi == PsiSelector::v) ? s.v[j] : s.w[j];
            psir[i] = (psi == PsiSelector::v) ? s.dvdr[j] : s.dwdr[j];
        }
        fs.Lpsi[j] = dt_series(fs.t, series);
        fs.Lv[j] = dt_series(fs.t, fs.v[j]);

        for (std::size_t i = 0; i < fs.k; ++i) {
            const double c = fs.c[j][i];
            const double mu = fs.mu[j][i];
            fs.Tpsi[j][i] = -(mu / c) * psir[i];
            fs.Lbpsi[j][i] = (mu / (c * c)) * fs.Lpsi[j][i] + 2.0 * fs.Tpsi[j][i];
            fs.Tv[j][i] = -(mu / c) * fan.samples[i].dvdr[j];
            c2mu[i] = mu / (c * c);
        }
        fs.LLbpsi[j] = dt_series(fs.t, fs.Lbpsi[j]);
        fs.Lc2mu[j] = dt_series(fs.t, c2mu);

        for (std::size_t i = 0; i < fs.k; ++i) {
            const double c = fs.c[j][i];
            const double mu = fs.mu[j][i];
            const double vv = fs.v[j][i];
            const double pd = static_cast<double>(p);
            const double vpm1 = ipow(vv, p - 1);
            fs.H[j][i] = 0.5 * (mu / (c * c)) * fs.trchi[j][i] * fs.Lpsi[j][i];
            fs.F[j][i] = 0.5 * pd * mu * vpm1 * fs.Lv[j][i] * fs.Lpsi[j][i] +
                         0.5 * pd * c * c * vpm1 *
                             (fs.Lv[j][i] * fs.Tpsi[j][i] + fs.Tv[j][i] * fs.Lpsi[j][i]);
            // l = 1 angular eigenvalue for the radial part of the spatial
            // gradient; vanishes for psi = v.
            fs.ang[j][i] = (psi == PsiSelector::w)
                               ? -2.0 * mu * fs.w[j][i] / (fs.r[j][i] * fs.r[j][i])
                               : 0.0;
        }
    }
    return fs;
}

}  // namespace

const char* psi_name(PsiSelector s) { return s == PsiSelector::v ? "v" : "w"; }

ResidualReport transport_residual(const CharacteristicFan& fan, int p, PsiSelector psi,
                                  double mu_floor) {
    const FanSeries fs = build_series(fan, p, psi);

    ResidualReport rep;
    rep.name = std::string("transport[") + psi_name(psi) + "]";
    double sum2 = 0.0;
    for (std::size_t j = 0; j < fs.m; ++j) {
        for (std::size_t i = 2; i + 2 < fs.k; ++i) {
            if (fs.mu[j][i] <= mu_floor) continue;
            const double res = fs.LLbpsi[j][i] + 0.5 * fs.trchi[j][i] * fs.Lbpsi[j][i] -
                               fs.ang[j][i] - fs.H[j][i] + fs.F[j][i];
            rep.max_abs = std::max(rep.max_abs, std::abs(res));
            sum2 += res * res;
            ++rep.samples;
        }
    }
    if (rep.samples > 0) rep.l2 = std::sqrt(sum2 / static_cast<double>(rep.samples));
    return rep;
}

namespace {

// E_i over Sigma_t^u: trapezoid in u of the integrand times 4 pi r^2.
double sigma_integral(const FanSeries& fs, const CharacteristicFan& fan, std::size_t i,
                      std::size_t J, const std::function<double(std::size_t)>& integrand) {
    std::vector<double> f(J + 1);
    for (std::size_t j = 0; j <= J; ++j) {
        f[j] = integrand(j) * kFourPi * fs.r[j][i] * fs.r[j][i];
    }
    return trapezoid(f, fan.du());
}

}  // namespace

EnergyFlux energy_flux(const CharacteristicFan& fan, std::size_t t_index, std::size_t u_index,
                       PsiSelector psi) {
    if (u_index < 1 || u_index >= fan.u.size()) {
        throw PreconditionError("energy_flux: u must lie in (0, delta]");
    }
    if (t_index >= fan.samples.size()) {
        throw PreconditionError("energy_flux: time index out of range");
    }
    // p only enters F; the fluxes themselves are p-independent.
    const FanSeries fs = build_series(fan, 1, psi);
    for (std::size_t j = 0; j <= u_index; ++j) {
        if (!(fs.mu[j][t_index] > 0.0)) {
            throw PreconditionError("energy_flux: mu must be positive on Sigma_t^u");
        }
    }

    EnergyFlux ef;
    ef.E1 = sigma_integral(fs, fan, t_index, u_index, [&](std::size_t j) {
        const double c = fs.c[j][t_index];
        return 0.5 * (fs.mu[j][t_index] / (c * c)) * fs.Lpsi[j][t_index] * fs.Lpsi[j][t_index];
    });
    ef.E2 = sigma_integral(fs, fan, t_index, u_index, [&](std::size_t j) {
        return 0.5 * fs.Lbpsi[j][t_index] * fs.Lbpsi[j][t_index];
    });
    std::vector<double> ft(t_index + 1), tt(t_index + 1);
    for (std::size_t i = 0; i <= t_index; ++i) {
        tt[i] = fs.t[i];
        ft[i] = fs.Lpsi[u_index][i] * fs.Lpsi[u_index][i] * kFourPi * fs.r[u_index][i] *
                fs.r[u_index][i];
    }
    ef.F1 = trapezoid(tt, ft);
    ef.F2 = 0.0;
    return ef;
}

ResidualReport energy_identity_residual(const CharacteristicFan& fan, int p, std::size_t t_index,
                                        std::size_t u_index, PsiSelector psi) {
    if (u_index < 1 || u_index >= fan.u.size()) {
        throw PreconditionError("energy_identity_residual: u must lie in (0, delta]");
    }
    if (t_index >= fan.samples.size()) {
        throw PreconditionError("energy_identity_residual: time index out of range");
    }
    const FanSeries fs = build_series(fan, p, psi);

    auto e1_at = [&](std::size_t i) {
        return sigma_integral(fs, fan, i, u_index, [&](std::size_t j) {
            const double c = fs.c[j][i];
            return 0.5 * (fs.mu[j][i] / (c * c)) * fs.Lpsi[j][i] * fs.Lpsi[j][i];
        });
    };
    const double e1_t = e1_at(t_index);
    const double e1_1 = e1_at(0);

    std::vector<double> ft(t_index + 1), tt(t_index + 1);
    for (std::size_t i = 0; i <= t_index; ++i) {
        tt[i] = fs.t[i];
        ft[i] = fs.Lpsi[u_index][i] * fs.Lpsi[u_index][i] * kFourPi * fs.r[u_index][i] *
                fs.r[u_index][i];
    }
    const double f1 = trapezoid(tt, ft);

    const double lhs = e1_t - e1_1 + f1;

    // Bulk: Phi L psi plus the deformation-tensor contraction for V = L.
    std::vector<double> inner(t_index + 1), outer(u_index + 1);
    for (std::size_t j = 0; j <= u_index; ++j) {
        for (std::size_t i = 0; i <= t_index; ++i) {
            const double phi_src = fs.F[j][i] - fs.ang[j][i];  // mu box_g psi
            const double b = phi_src * fs.Lpsi[j][i] +
                             0.5 * fs.Lc2mu[j][i] * fs.Lpsi[j][i] * fs.Lpsi[j][i] +
                             0.5 * fs.trchi[j][i] * fs.Lpsi[j][i] * fs.Lbpsi[j][i];
            inner[i] = b * kFourPi * fs.r[j][i] * fs.r[j][i];
        }
        outer[j] = trapezoid(tt, inner);
    }
    const double rhs = -trapezoid(outer, fan.du());

    ResidualReport rep;
    rep.name = std::string("energy_identity[") + psi_name(psi) + "]";
    rep.samples = (t_index + 1) * (u_index + 1);
    rep.max_abs = std::abs(lhs - rhs) / std::max(e1_t, 1e-30);
    rep.l2 = rep.max_abs;
    return rep;
}

D2Growth d2_growth(std::span<const MuHistoryRow> history, double window_hi) {
    std::vector<double> x, y;
    for (const MuHistoryRow& row : history) {
        if (row.mu_min <= window_hi && row.mu_min > 0.0 && row.max_drv > 0.0) {
            x.push_back(std::log(1.0 / row.mu_min));
            y.push_back(std::log(row.max_drv));
        }
    }
    if (x.size() < 3) {
        throw PreconditionError("insufficient data: the run never entered the mu window");
    }
    const LineFit fit = fit_line(x, y);
    return {fit.slope, fit.pearson_r, x.size()};
}

}  // namespace shockwave
