#ifndef QCARNOT_CYCLE_HPP
#define QCARNOT_CYCLE_HPP

#include <optional>
#include <vector>

#include "qcarnot/dynamics.hpp"
#include "qcarnot/params.hpp"

namespace qcarnot {

struct CycleSpec {
    EngineParams params;
    double tau_h;                 // hot stroke duration
    std::optional<double> tau_c;  // cold stroke duration; absent in ideal mode
};

// Cold-bath contact summary. In the ideal (gamma_c -> infinity) mode the
// cold side is a reversible isotherm: the adiabat lands on the cold
// equilibrium curve at omega_start = T_c*ln((1-p1)/p1) and S_ir = 0; the
// trajectory holds t constant at tau_h. In finite mode these come from the
// integrated cold stroke.
struct ColdStrokeInfo {
    double omega_start;
    double omega_end;
    double p_start;
    double p_end;
    double Q;
    double W_on;
    double dS;
    double S_ir;
    std::vector<TrajectorySample> trajectory;
};

struct CycleResult {
    double Q_h;   // heat absorbed from the hot bath (> 0 in engine mode)
    double Q_c;   // heat absorbed from the cold bath (< 0 in engine mode)
    double W;     // net output work, Q_h + Q_c by construction
    double P;     // W/tau_h (ideal mode) or W/(tau_h+tau_c)
    double eta;   // W/Q_h; NaN when Q_h == 0
    double S_ir_h;
    double S_ir_c;
    bool engine;           // W > 0 and Q_h > 0
    double closure_error;  // |p(end of cycle) - p(start of cycle)|
    StrokeResult hot;
    ColdStrokeInfo cold;
};

// Four-stroke cycle in the ideal-cold-bath limit: exact hot stroke from
// p0 = p_eq(omega_h_i, T_h), frozen-population adiabats of zero duration,
// reversible cold isotherm back to p0. Requires the infinite gamma_c marker.
CycleResult run_ideal_cold_cycle(const CycleSpec& spec, double tol = 1e-9);

// Periodic steady cycle with a finite cold coupling: the limit-cycle
// population is the fixed point p* = (G_c H_h + H_c)/(1 - G_c G_h) of the
// stroke affine maps (adiabats are identity on the population), then one
// full pass from p* is reported. Throws SolverError if |1 - G_c G_h| < 1e-12.
CycleResult run_finite_cycle(const CycleSpec& spec, double closure_tol = 1e-10,
                             double tol = 1e-9);

} // namespace qcarnot

#endif
