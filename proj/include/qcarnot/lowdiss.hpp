#ifndef QCARNOT_LOWDISS_HPP
#define QCARNOT_LOWDISS_HPP

#include <utility>

#include "qcarnot/params.hpp"

namespace qcarnot {

// Inputs of the low-dissipation model: per-stroke heats
//   Q_h = T_h (dS - Sigma_h/tau_h),  Q_c = T_c (-dS - Sigma_c/tau_c).
struct LowDissInputs {
    double dS;       // reversible entropy change per hot stroke, > 0
    double Sigma_h;  // hot dissipation coefficient, >= 0
    double Sigma_c;  // cold dissipation coefficient, >= 0
    double T_h;
    double T_c;
};

struct OptimalTimes {
    double tau_h_star;
    double tau_c_star;  // exactly 0 when Sigma_c == 0
};

// Efficiency-at-maximum-power prediction of the model.
struct EmpModel {
    double tau_h_star;
    double tau_c_star;
    double P_max;
    double eta_star;
    double eta_minus;  // eta_C/2
    double eta_plus;   // eta_C/(2-eta_C)
};

struct DimensionlessTimes {
    double tau_tilde_h_star;
    double tau_tilde_c_star;  // +inf for the ideal cold bath
};

struct RegimeCheck {
    double threshold;  // 2(1-delta)/(1+delta)
    bool in_regime;    // eta_C <= margin * threshold
};

// Full analytic report for one parameter set.
struct LowDissPrediction {
    double tau_h_star, tau_c_star;
    double tau_tilde_h_star, tau_tilde_c_star;
    double P_max;
    double eta_star, eta_minus, eta_plus;
    double regime_threshold;
    bool in_regime;
};

double eta_minus_bound(double eta_C);  // eta_C/2
double eta_plus_bound(double eta_C);   // eta_C/(2-eta_C)

// Model heats at given stroke durations (Sigma/tau taken as 0 when the
// matching Sigma is 0, so the dissipation-free limit is exact).
std::pair<double, double> ld_heats(const LowDissInputs& in, double tau_h, double tau_c);

// Closed-form power-maximizing durations
//   tau_h* = 2 T_h Sigma_h / ((T_h-T_c) dS) * (1 + sqrt(T_c Sigma_c / (T_h Sigma_h)))
// and the h<->c mirrored expression for tau_c*.
OptimalTimes ld_optimal_times(const LowDissInputs& in);

// Power and efficiency evaluated at ld_optimal_times, plus the EMP bounds.
EmpModel ld_emp(const LowDissInputs& in);

// High-temperature coefficients for the linear ramp of the master equation:
//   dS      = (omega_h_i^2 - omega_h_f^2) / (8 T_h^2)
//   Sigma_a = dS * |omega_a_i - omega_a_f| / (2 gamma_a T_a)
// The same dS magnitude results from the hot and cold endpoints by the
// adiabatic matching relations. Sigma_c = 0 for the ideal cold bath.
LowDissInputs high_T_coefficients(const EngineParams& p);

// True when omega_h_i/T_h > 0.3 and the high-temperature expansion is dubious.
bool high_T_suspect(const EngineParams& p);

// tau_tilde_a* = tau_a* gamma_tilde_a as closed forms in eta_C, the ramp
// endpoints and gamma_h/gamma_c:
//   tau_tilde_h* = (2/eta_C) (w_i-w_f)/(w_i+w_f) [1 + sqrt((1-eta_C) gamma_h/gamma_c)]
//   tau_tilde_c* = (2/eta_C) (w_i-w_f)/(w_i+w_f) [sqrt((1-eta_C) gamma_c/gamma_h) + 1-eta_C]
DimensionlessTimes ld_dimensionless_times(const EngineParams& p);

// Self-consistency regime of the 1/tau scaling at the optimal times.
RegimeCheck regime_check(const EngineParams& p, double margin);

// Assembles the full analytic report (all operations above).
LowDissPrediction ld_predict(const EngineParams& p, double margin = 0.1);

} // namespace qcarnot

#endif
