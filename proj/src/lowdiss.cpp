#include "qcarnot/lowdiss.hpp"

#include <cmath>
#include <limits>

namespace qcarnot {

namespace {

void check_inputs(const LowDissInputs& in) {
    if (!(in.dS > 0.0))
        throw ValidationError("low-dissipation model needs dS > 0, got " +
                              std::to_string(in.dS));
    if (in.Sigma_h < 0.0 || in.Sigma_c < 0.0)
        throw ValidationError("dissipation coefficients must be non-negative");
    if (!(in.T_c > 0.0) || !(in.T_c < in.T_h))
        throw ValidationError("low-dissipation model needs 0 < T_c < T_h");
}

} // namespace

double eta_minus_bound(double eta_C) { return eta_C / 2.0; }

double eta_plus_bound(double eta_C) { return eta_C / (2.0 - eta_C); }

std::pair<double, double> ld_heats(const LowDissInputs& in, double tau_h, double tau_c) {
    check_inputs(in);
    if (!(tau_h > 0.0))
        throw ValidationError("ld_heats needs tau_h > 0");
    if (!(tau_c > 0.0) && in.Sigma_c != 0.0)
        throw ValidationError("ld_heats needs tau_c > 0 when Sigma_c > 0");
    const double s_ir_h = in.Sigma_h / tau_h;
    const double s_ir_c = in.Sigma_c == 0.0 ? 0.0 : in.Sigma_c / tau_c;
    return {in.T_h * (in.dS - s_ir_h), in.T_c * (-in.dS - s_ir_c)};
}

OptimalTimes ld_optimal_times(const LowDissInputs& in) {
    check_inputs(in);
    if (in.Sigma_h == 0.0 && in.Sigma_c == 0.0)
        throw ValidationError("ld_optimal_times needs Sigma_h > 0 or Sigma_c > 0");
    const double dT = in.T_h - in.T_c;
    if (in.Sigma_c == 0.0) {
        // tau_c* -> 0 faster than its Sigma prefactor diverges
        return {2.0 * in.T_h * in.Sigma_h / (dT * in.dS), 0.0};
    }
    const double r = std::sqrt(in.T_c * in.Sigma_c / (in.T_h * in.Sigma_h));
    OptimalTimes t;
    t.tau_h_star = 2.0 * in.T_h * in.Sigma_h / (dT * in.dS) * (1.0 + r);
    t.tau_c_star = 2.0 * in.T_c * in.Sigma_c / (dT * in.dS) * (1.0 + 1.0 / r);
    return t;
}

EmpModel ld_emp(const LowDissInputs& in) {
    const OptimalTimes t = ld_optimal_times(in);
    auto [Q_h, Q_c] = ld_heats(in, t.tau_h_star,
                               t.tau_c_star > 0.0 ? t.tau_c_star : 1.0);
    EmpModel m;
    m.tau_h_star = t.tau_h_star;
    m.tau_c_star = t.tau_c_star;
    m.P_max = (Q_h + Q_c) / (t.tau_h_star + t.tau_c_star);
    m.eta_star = (Q_h + Q_c) / Q_h;
    const double eta_C = 1.0 - in.T_c / in.T_h;
    m.eta_minus = eta_minus_bound(eta_C);
    m.eta_plus = eta_plus_bound(eta_C);
    return m;
}

LowDissInputs high_T_coefficients(const EngineParams& p) {
    const DerivedParams d = derive(p);
    LowDissInputs in;
    in.T_h = p.T_h;
    in.T_c = p.T_c;
    in.dS = (p.omega_h_i * p.omega_h_i - p.omega_h_f * p.omega_h_f) /
            (8.0 * p.T_h * p.T_h);
    // Linear-ramp coefficient Sigma = dS * |span| / (2 gamma T); the cold
    // span (omega_c_f - omega_c_i) carries the same dS magnitude through
    // the adiabatic matching relations.
    in.Sigma_h = std::abs(in.dS) * std::abs(p.omega_h_i - p.omega_h_f) /
                 (2.0 * p.gamma_h * p.T_h);
    in.Sigma_c = p.gamma_c.is_infinite()
                     ? 0.0
                     : std::abs(in.dS) * std::abs(d.omega_c_f - d.omega_c_i) /
                           (2.0 * p.gamma_c.value() * p.T_c);
    return in;
}

bool high_T_suspect(const EngineParams& p) {
    validate(p);
    return p.omega_h_i / p.T_h > 0.3;
}

DimensionlessTimes ld_dimensionless_times(const EngineParams& p) {
    const DerivedParams d = derive(p);
    const double ratio_h = p.gamma_c.is_infinite()
                               ? 0.0
                               : p.gamma_h / p.gamma_c.value();
    const double span = (p.omega_h_i - p.omega_h_f) / (p.omega_h_i + p.omega_h_f);
    const double pre = 2.0 / d.eta_C * span;
    DimensionlessTimes t;
    t.tau_tilde_h_star = pre * (1.0 + std::sqrt((1.0 - d.eta_C) * ratio_h));
    t.tau_tilde_c_star =
        p.gamma_c.is_infinite()
            ? std::numeric_limits<double>::infinity()
            : pre * (std::sqrt((1.0 - d.eta_C) / ratio_h) + 1.0 - d.eta_C);
    return t;
}

RegimeCheck regime_check(const EngineParams& p, double margin) {
    const DerivedParams d = derive(p);
    if (!(margin > 0.0 && margin <= 1.0))
        throw ValidationError("margin must lie in (0, 1]");
    RegimeCheck r;
    r.threshold = 2.0 * (1.0 - d.delta) / (1.0 + d.delta);
    r.in_regime = d.eta_C <= margin * r.threshold;
    return r;
}

LowDissPrediction ld_predict(const EngineParams& p, double margin) {
    const LowDissInputs in = high_T_coefficients(p);
    const EmpModel m = ld_emp(in);
    const DimensionlessTimes dt = ld_dimensionless_times(p);
    const RegimeCheck rc = regime_check(p, margin);
    LowDissPrediction out;
    out.tau_h_star = m.tau_h_star;
    out.tau_c_star = m.tau_c_star;
    out.tau_tilde_h_star = dt.tau_tilde_h_star;
    out.tau_tilde_c_star = dt.tau_tilde_c_star;
    out.P_max = m.P_max;
    out.eta_star = m.eta_star;
    out.eta_minus = m.eta_minus;
    out.eta_plus = m.eta_plus;
    out.regime_threshold = rc.threshold;
    out.in_regime = rc.in_regime;
    return out;
}

} // namespace qcarnot
