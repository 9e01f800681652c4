#include "qcarnot/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcarnot {

namespace {

constexpr int n_samples = 512;

bool is_engine(double W, double Q_h) { return W > 0.0 && Q_h > 0.0; }

double efficiency(double W, double Q_h) {
    return Q_h != 0.0 ? W / Q_h : std::numeric_limits<double>::quiet_NaN();
}

} // namespace

CycleResult run_ideal_cold_cycle(const CycleSpec& spec, double tol) {
    const EngineParams& p = spec.params;
    const DerivedParams d = derive(p);
    if (!p.gamma_c.is_infinite())
        throw ValidationError("run_ideal_cold_cycle needs the infinite gamma_c marker");
    if (!(spec.tau_h > 0.0))
        throw ValidationError("tau_h must be positive");

    const double p0 = equilibrium_population(p.omega_h_i, p.T_h);
    const Ramp hot_ramp{p.omega_h_i, p.omega_h_f, spec.tau_h};
    const BathContact hot_bath{p.T_h, p.gamma_h};
    StrokeResult hot = integrate_stroke(p0, hot_ramp, hot_bath, tol);

    // Adiabat: population frozen at p1, spacing drops until the state meets
    // the cold equilibrium curve; the cold stroke is then a reversible
    // isotherm back to p0 (the gamma_c -> infinity cold bath tracks the
    // instantaneous equilibrium at no entropy cost).
    const double p1 = hot.p_end;
    const double omega_land = p.T_c * std::log((1.0 - p1) / p1);
    const double Q_c = p.T_c * (two_level_entropy(p0) - two_level_entropy(p1));

    CycleResult res;
    res.Q_h = hot.Q;
    res.Q_c = Q_c;
    res.W = hot.Q + Q_c;
    res.P = res.W / spec.tau_h;
    res.eta = efficiency(res.W, res.Q_h);
    res.S_ir_h = hot.S_ir;
    res.S_ir_c = 0.0;
    res.engine = is_engine(res.W, res.Q_h);
    res.closure_error = 0.0;  // the cold isotherm ends at p0 by construction

    res.cold.omega_start = omega_land;
    res.cold.omega_end = d.omega_c_f;
    res.cold.p_start = p1;
    res.cold.p_end = p0;
    res.cold.Q = Q_c;
    res.cold.W_on = (d.omega_c_f * p0 - omega_land * p1) - Q_c;  // first law
    res.cold.dS = two_level_entropy(p0) - two_level_entropy(p1);
    res.cold.S_ir = 0.0;
    res.cold.trajectory.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double w = omega_land + (d.omega_c_f - omega_land) * k / (n_samples - 1);
        res.cold.trajectory.push_back({spec.tau_h, w, equilibrium_population(w, p.T_c)});
    }
    res.hot = std::move(hot);
    return res;
}

CycleResult run_finite_cycle(const CycleSpec& spec, double closure_tol, double tol) {
    const EngineParams& p = spec.params;
    const DerivedParams d = derive(p);
    if (p.gamma_c.is_infinite())
        throw ValidationError("run_finite_cycle needs a finite gamma_c");
    if (!(spec.tau_h > 0.0))
        throw ValidationError("tau_h must be positive");
    if (!spec.tau_c.has_value() || !(*spec.tau_c > 0.0))
        throw ValidationError("run_finite_cycle needs tau_c > 0");
    const double tau_c = *spec.tau_c;

    const Ramp hot_ramp{p.omega_h_i, p.omega_h_f, spec.tau_h};
    const Ramp cold_ramp{d.omega_c_i, d.omega_c_f, tau_c};
    const BathContact hot_bath{p.T_h, p.gamma_h};
    const BathContact cold_bath{p.T_c, p.gamma_c.value()};

    // One step grid per stroke for both the maps and the reported pass.
    const std::int64_t n_h = std::max(resolve_step_count(0.0, hot_ramp, hot_bath, tol),
                                      resolve_step_count(1.0, hot_ramp, hot_bath, tol));
    const std::int64_t n_c = std::max(resolve_step_count(0.0, cold_ramp, cold_bath, tol),
                                      resolve_step_count(1.0, cold_ramp, cold_bath, tol));
    const double H_h = integrate_stroke_at(0.0, hot_ramp, hot_bath, n_h).p_end;
    const double G_h = integrate_stroke_at(1.0, hot_ramp, hot_bath, n_h).p_end - H_h;
    const double H_c = integrate_stroke_at(0.0, cold_ramp, cold_bath, n_c).p_end;
    const double G_c = integrate_stroke_at(1.0, cold_ramp, cold_bath, n_c).p_end - H_c;

    const double contraction = 1.0 - G_c * G_h;
    if (std::abs(contraction) < 1e-12)
        throw SolverError("limit cycle has no contraction: |1 - G_c G_h| < 1e-12");
    const double p_star = (G_c * H_h + H_c) / contraction;

    StrokeResult hot = integrate_stroke_at(p_star, hot_ramp, hot_bath, n_h);
    StrokeResult cold = integrate_stroke_at(hot.p_end, cold_ramp, cold_bath, n_c);

    CycleResult res;
    res.closure_error = std::abs(cold.p_end - p_star);
    if (res.closure_error > closure_tol)
        throw SolverError("limit cycle closure " + std::to_string(res.closure_error) +
                          " exceeds tolerance " + std::to_string(closure_tol));

    res.Q_h = hot.Q;
    res.Q_c = cold.Q;
    res.W = hot.Q + cold.Q;
    res.P = res.W / (spec.tau_h + tau_c);
    res.eta = efficiency(res.W, res.Q_h);
    res.S_ir_h = hot.S_ir;
    res.S_ir_c = cold.S_ir;
    res.engine = is_engine(res.W, res.Q_h);

    res.cold.omega_start = d.omega_c_i;
    res.cold.omega_end = d.omega_c_f;
    res.cold.p_start = cold.p_start;
    res.cold.p_end = cold.p_end;
    res.cold.Q = cold.Q;
    res.cold.W_on = cold.W_on;
    res.cold.dS = cold.dS;
    res.cold.S_ir = cold.S_ir;
    res.cold.trajectory = std::move(cold.trajectory);
    for (auto& s : res.cold.trajectory) s.t += spec.tau_h;  // cycle clock
    res.hot = std::move(hot);
    return res;
}

} // namespace qcarnot
