#include "pulse.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "numerics.hpp"
#include "solver.hpp"

namespace shockwave {

namespace {

// Integer power with x^0 = 1.
double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

}  // namespace

// ------------------------------------------------------------------ params

bool PulseParams::at_critical() const {
    return std::abs((1.0 - eps0) * static_cast<double>(p) - 1.0) <= 1e-9;
}

bool PulseParams::supercritical() const {
    return (1.0 - eps0) * static_cast<double>(p) > 1.0 + 1e-9;
}

void PulseParams::validate() const {
    if (!(delta > 0.0 && delta <= 0.5)) {
        throw PreconditionError("params.delta must be in (0, 0.5]");
    }
    if (!(eps0 > 0.0 && eps0 < 1.0)) {
        throw PreconditionError("params.eps0 must be in (0, 1)");
    }
    if (p < 1) {
        throw PreconditionError("params.p must be an integer >= 1");
    }
    if (!(amplitude >= 0.0)) {
        throw PreconditionError("params.amplitude must be >= 0");
    }
}

// ---------------------------------------------------------------- profiles

class ProfileImpl {
  public:
    virtual ~ProfileImpl() = default;
    virtual double eval(double s) const = 0;
    virtual double deriv(double s, int k) const = 0;  // k in 1..4
    virtual Profile::Kind kind() const = 0;
    virtual double amplitude() const = 0;
};

namespace {

// B(s) = A e^4 exp(1/(s(s+1))) on (-1,0). Derivatives follow from
// (e^h)^(k) via Faa di Bruno with h = 1/(s^2+s).
class StandardBumpImpl final : public ProfileImpl {
  public:
    explicit StandardBumpImpl(double amplitude) : a_(amplitude) {}

    double eval(double s) const override {
        double b, h1, h2, h3, h4;
        if (!factors(s, b, h1, h2, h3, h4)) return 0.0;
        return b;
    }

    double deriv(double s, int k) const override {
        double b, h1, h2, h3, h4;
        if (!factors(s, b, h1, h2, h3, h4)) return 0.0;
        switch (k) {
            case 1: return b * h1;
            case 2: return b * (h2 + h1 * h1);
            case 3: return b * (h3 + 3.0 * h1 * h2 + h1 * h1 * h1);
            case 4:
                return b * (h4 + 4.0 * h1 * h3 + 3.0 * h2 * h2 + 6.0 * h1 * h1 * h2 +
                            h1 * h1 * h1 * h1);
            default: throw PreconditionError("profile derivative order must be in 1..4");
        }
    }

    Profile::Kind kind() const override { return Profile::Kind::standard_bump; }
    double amplitude() const override { return a_; }

  private:
    bool factors(double s, double& b, double& h1, double& h2, double& h3, double& h4) const {
        if (s <= -1.0 || s >= 0.0) return false;
        const double q = s * (s + 1.0);  // negative on (-1,0)
        const double h = 1.0 / q;
        // exp underflows to 0 well before the polynomial factors matter.
        if (h < -700.0) return false;
        const double qp = 2.0 * s + 1.0;
        const double q2 = q * q;
        const double q3 = q2 * q;
        const double q4 = q3 * q;
        const double q5 = q4 * q;
        b = a_ * std::exp(4.0 + h);
        h1 = -qp / q2;
        h2 = -2.0 / q2 + 2.0 * qp * qp / q3;
        h3 = 12.0 * qp / q3 - 6.0 * qp * qp * qp / q4;
        h4 = 24.0 / q3 - 72.0 * qp * qp / q4 + 24.0 * qp * qp * qp * qp / q5;
        return true;
    }

    double a_;
};

class ZeroImpl final : public ProfileImpl {
  public:
    double eval(double) const override { return 0.0; }
    double deriv(double, int) const override { return 0.0; }
    Profile::Kind kind() const override { return Profile::Kind::tabulated; }
    double amplitude() const override { return 0.0; }
};

class TabulatedImpl final : public ProfileImpl {
  public:
    TabulatedImpl(std::vector<double> samples, double s0, double ds)
        : s0_(s0), ds_(ds), rows_(5) {
        if (samples.size() < 4) {
            throw PreconditionError("tabulated profile needs at least 4 samples");
        }
        rows_[0] = std::move(samples);
        for (int k = 1; k <= 4; ++k) {
            rows_[k].resize(rows_[0].size());
            centered_derivative(rows_[k - 1], ds_, rows_[k]);
        }
        peak_ = 0.0;
        for (double y : rows_[0]) peak_ = std::max(peak_, std::abs(y));
    }

    double eval(double s) const override { return sample(0, s); }
    double deriv(double s, int k) const override {
        if (k < 1 || k > 4) throw PreconditionError("profile derivative order must be in 1..4");
        return sample(k, s);
    }
    Profile::Kind kind() const override { return Profile::Kind::tabulated; }
    double amplitude() const override { return peak_; }

  private:
    double sample(int row, double s) const {
        const double s_hi = s0_ + ds_ * static_cast<double>(rows_[0].size() - 1);
        if (s <= s0_ || s >= s_hi) return 0.0;
        return pchip_eval(s0_, ds_, rows_[static_cast<std::size_t>(row)], s);
    }

    double s0_, ds_, peak_;
    std::vector<std::vector<double>> rows_;
};

// phi1 from phi0 by the outgoing-constraint formula; derivatives come from
// differentiating the formula, so the chain needs phi0 up to order k+1.
class DerivedPhi1Impl final : public ProfileImpl {
  public:
    DerivedPhi1Impl(Profile phi0, const PulseParams& params)
        : phi0_(std::move(phi0)),
          delta_(params.delta),
          p_(params.p),
          beta_(std::pow(params.delta, (1.0 - params.eps0) * static_cast<double>(params.p)) /
                (2.0 * static_cast<double>(params.p + 1))) {}

    double eval(double s) const override {
        const double wv = -phi0_.deriv(s, 1);
        return wv - delta_ * phi0_.eval(s) - beta_ * ipow(wv, p_ + 1);
    }

    double deriv(double s, int k) const override {
        const double wv = -phi0_.deriv(s, 1);
        const double w1 = -phi0_.deriv(s, 2);
        const double bp = beta_ * static_cast<double>(p_ + 1);
        switch (k) {
            case 1:
                return -phi0_.deriv(s, 2) - delta_ * phi0_.deriv(s, 1) - bp * ipow(wv, p_) * w1;
            case 2: {
                const double w2 = -phi0_.deriv(s, 3);
                return -phi0_.deriv(s, 3) - delta_ * phi0_.deriv(s, 2) -
                       bp * (static_cast<double>(p_) * ipow(wv, p_ - 1) * w1 * w1 +
                             ipow(wv, p_) * w2);
            }
            case 3: {
                const double w2 = -phi0_.deriv(s, 3);
                const double w3 = -phi0_.deriv(s, 4);
                const double pd = static_cast<double>(p_);
                double chain = ipow(wv, p_) * w3 + 3.0 * pd * ipow(wv, p_ - 1) * w1 * w2;
                if (p_ >= 2) chain += pd * (pd - 1.0) * ipow(wv, p_ - 2) * w1 * w1 * w1;
                return -phi0_.deriv(s, 4) - delta_ * phi0_.deriv(s, 3) - bp * chain;
            }
            default: throw PreconditionError("derived profile supports derivative orders 1..3");
        }
    }

    Profile::Kind kind() const override { return Profile::Kind::derived; }
    double amplitude() const override { return phi0_.amplitude(); }

  private:
    Profile phi0_;
    double delta_;
    int p_;
    double beta_;
};

}  // namespace

Profile::Profile() : impl_(std::make_shared<ZeroImpl>()) {}
Profile::Profile(std::shared_ptr<const ProfileImpl> impl) : impl_(std::move(impl)) {}

Profile Profile::standard_bump(double amplitude) {
    if (!(amplitude > 0.0)) {
        throw PreconditionError("invalid parameter: profile amplitude must be > 0");
    }
    return Profile(std::make_shared<StandardBumpImpl>(amplitude));
}

Profile Profile::tabulated(std::vector<double> samples, double s0, double ds) {
    return Profile(std::make_shared<TabulatedImpl>(std::move(samples), s0, ds));
}

Profile Profile::zero() { return Profile(); }

double Profile::eval(double s) const { return impl_->eval(s); }

double Profile::deriv(double s, int k) const {
    if (k < 1 || k > 3) {
        throw PreconditionError("profile derivative order must be in {1,2,3}");
    }
    return impl_->deriv(s, k);
}

Profile::Kind Profile::kind() const { return impl_->kind(); }
double Profile::amplitude() const { return impl_->amplitude(); }

Profile make_profile(Profile::Kind kind, double amplitude) {
    switch (kind) {
        case Profile::Kind::standard_bump: return Profile::standard_bump(amplitude);
        case Profile::Kind::tabulated:
            throw PreconditionError("tabulated profiles are built from samples, use Profile::tabulated");
        default: throw PreconditionError("make_profile: unsupported profile kind");
    }
}

Profile build_phi1(const Profile& phi0, const PulseParams& params) {
    params.validate();
    return Profile(std::make_shared<DerivedPhi1Impl>(phi0, params));
}

// ------------------------------------------------------------ shock margin

double shock_quantity(const Profile& phi1, int p, double s) {
    return ipow(phi1.eval(s), p - 1) * phi1.deriv(s, 1);
}

std::pair<double, double> shock_quantity_max(const Profile& phi1, int p) {
    constexpr int kScan = 4096;
    const double h = 1.0 / static_cast<double>(kScan + 1);
    double best_s = -0.5;
    double best_q = shock_quantity(phi1, p, best_s);
    for (int i = 1; i <= kScan; ++i) {
        const double s = -1.0 + h * static_cast<double>(i);
        const double q = shock_quantity(phi1, p, s);
        if (q > best_q) {
            best_q = q;
            best_s = s;
        }
    }
    const double lo = std::max(best_s - h, -1.0 + 1e-12);
    const double hi = std::min(best_s + h, -1e-12);
    const double s_ref = golden_max([&](double s) { return shock_quantity(phi1, p, s); }, lo, hi);
    const double q_ref = shock_quantity(phi1, p, s_ref);
    if (q_ref > best_q) {
        best_q = q_ref;
        best_s = s_ref;
    }
    return {best_q, best_s};
}

ShockMargin shock_margin(const Profile& /*phi0*/, const Profile& phi1, const PulseParams& params) {
    params.validate();
    if (params.supercritical()) {
        throw PreconditionError("domain error: shock assumption thresholds are defined for p <= p_c only");
    }

    ShockMargin m;
    if (params.p == 1 || !params.at_critical()) {
        m.threshold = 2.0 / static_cast<double>(params.p);
    } else {
        const double p = static_cast<double>(params.p);
        m.threshold = (p - 1.0) * std::pow(2.0, p) / ((std::pow(2.0, p - 1.0) - 1.0) * p);
    }

    const auto [q_max, s_star] = shock_quantity_max(phi1, params.p);
    m.q_max = q_max;
    m.s_star = s_star;
    m.satisfied = q_max > m.threshold;
    return m;
}

// ----------------------------------------------------------- initial data

RadialGrid make_grid(double r_min, double r_max, double delta, int points_per_pulse) {
    if (points_per_pulse < 4) {
        throw PreconditionError("grid.points_per_pulse must be >= 4");
    }
    RadialGrid g;
    g.r_min = r_min;
    g.dr = delta / static_cast<double>(points_per_pulse);
    g.n = static_cast<std::size_t>(std::ceil((r_max - r_min) / g.dr - 1e-9)) + 1;
    return g;
}

FieldState initial_fields(const PulseParams& params, const Profile& phi0, const Profile& phi1,
                          const RadialGrid& grid) {
    params.validate();
    if (!(grid.r_min > 0.0 && grid.r_min < 1.0 - params.delta && grid.r_max() > 1.0)) {
        throw PreconditionError(
            "invalid grid: pulse shell (1-delta, 1) must lie strictly inside [r_min, r_max]");
    }

    const double a_phi = std::pow(params.delta, 2.0 - params.eps0);
    const double a_grad = std::pow(params.delta, 1.0 - params.eps0);

    FieldState st;
    st.t = 1.0;
    st.grid = grid;
    st.phi.assign(grid.n, 0.0);
    st.v.assign(grid.n, 0.0);
    st.w.assign(grid.n, 0.0);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double s = (grid.r(j) - 1.0) / params.delta;
        if (s <= -1.0 || s >= 0.0) continue;
        st.phi[j] = a_phi * phi0.eval(s);
        st.v[j] = a_grad * phi1.eval(s);
        st.w[j] = a_grad * phi0.deriv(s, 1);
    }
    return st;
}

// ------------------------------------------------------- constraint orders

std::vector<double> default_delta_grid() { return {0.2, 0.141, 0.1, 0.0707, 0.05}; }

namespace {

// sup over the pulse shell of |(dt+dr)^k phi(1,.)|, evaluated analytically
// from the profiles at scaled coordinate s.
double constraint_sup(const PulseParams& params, const Profile& phi0, const Profile& phi1, int k) {
    const double d = params.delta;
    const double e0 = params.eps0;

    auto expr = [&](double s) -> double {
        if (k == 1) {
            return std::pow(d, 1.0 - e0) * (phi1.eval(s) + phi0.deriv(s, 1));
        }
        // (dt+dr)^2 phi = dt^2 phi + 2 dr v + dr w, with
        // dt^2 phi = c^2 (dr w + (2/r) w) from the equation.
        const double v = std::pow(d, 1.0 - e0) * phi1.eval(s);
        const double w = std::pow(d, 1.0 - e0) * phi0.deriv(s, 1);
        const double wr = std::pow(d, -e0) * phi0.deriv(s, 2);
        const double vr = std::pow(d, -e0) * phi1.deriv(s, 1);
        const double c = wave_speed(v, params.p);
        const double r = 1.0 + s * d;
        return c * c * (wr + 2.0 * w / r) + 2.0 * vr + wr;
    };

    constexpr int kScan = 8192;
    const double h = 1.0 / static_cast<double>(kScan + 1);
    double best_s = -0.5;
    double best = std::abs(expr(best_s));
    for (int i = 1; i <= kScan; ++i) {
        const double s = -1.0 + h * static_cast<double>(i);
        const double a = std::abs(expr(s));
        if (a > best) {
            best = a;
            best_s = s;
        }
    }
    const double lo = std::max(best_s - h, -1.0 + 1e-12);
    const double hi = std::min(best_s + h, -1e-12);
    const double s_ref = golden_max([&](double s) { return std::abs(expr(s)); }, lo, hi);
    return std::max(best, std::abs(expr(s_ref)));
}

}  // namespace

ConstraintFit constraint_exponent_fit(const PulseParams& base, std::span<const double> deltas,
                                      const Profile& phi0, int k) {
    if (k != 1 && k != 2) {
        throw PreconditionError("constraint_exponent_fit: k must be 1 or 2");
    }
    if (deltas.size() < 4) {
        throw PreconditionError("constraint_exponent_fit: need at least 4 delta values");
    }

    ConstraintFit out;
    std::vector<double> lx, ly;
    for (double d : deltas) {
        PulseParams params = base;
        params.delta = d;
        params.validate();
        const Profile phi1 = build_phi1(phi0, params);
        const double sup = constraint_sup(params, phi0, phi1, k);
        out.sup_values.push_back(sup);
        if (sup > 1e-14) {
            lx.push_back(std::log(d));
            ly.push_back(std::log(sup));
        }
    }
    if (lx.size() < deltas.size()) {
        throw NumericError("degenerate data: constraint sup values below 1e-14");
    }

    const LineFit fit = fit_line(lx, ly);
    out.slope = fit.slope;
    const double kappa = base.kappa();
    out.expected = 2.0 - base.eps0 - static_cast<double>(k) * std::max(0.0, kappa);
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += r * r;
    }
    out.residual = std::sqrt(ss / static_cast<double>(lx.size()));
    return out;
}

}  // namespace shockwave
