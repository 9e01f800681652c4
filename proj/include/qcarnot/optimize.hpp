#ifndef QCARNOT_OPTIMIZE_HPP
#define QCARNOT_OPTIMIZE_HPP

#include <span>
#include <vector>

#include "qcarnot/cycle.hpp"
#include "qcarnot/params.hpp"

namespace qcarnot {

// Log-spaced duration scan.
struct ScanGrid {
    double lo;
    double hi;
    int n;  // >= 8
};

// Default scan range [0.05, 400] * t_r.
ScanGrid default_scan_grid(const DerivedParams& d, int n = 33);

struct PowerOptimum1D {
    double tau_h_star;
    double P_max;
    double eta_MP;
};

struct PowerOptimum2D {
    double tau_h_star;
    double tau_c_star;
    double P_max;
    double eta_MP;
    int passes;
};

// One row of an EMP sweep.
struct EmpPoint {
    double eta_C;
    double T_c;
    double tau_h_star;
    double tau_h_star_over_tr;
    double P_max;
    double eta_MP;
    double eta_minus;
    double eta_plus;
    bool in_regime;
    bool exceeded_upper_bound;
};

struct EmpSweep {
    std::vector<EmpPoint> points;        // sorted by eta_C
    std::vector<double> skipped_eta_C;   // values with no engine regime
};

// Maximum of P(tau_h) for the ideal-cold-bath cycle: coarse log-grid scan
// picks the best bracket, golden-section refines it to relative duration
// tolerance tol; the returned power is never below any sampled grid value.
// Throws SolverError when every grid point gives W <= 0.
PowerOptimum1D maximize_power_1d(const EngineParams& p, const ScanGrid& grid,
                                 double tol = 1e-4);

// Alternating per-coordinate golden-section passes over (tau_h, tau_c) on
// the finite-gamma_c limit cycle; stops when both coordinates move less
// than tol relative in a pass (cap 100 passes).
PowerOptimum2D maximize_power_2d(const EngineParams& p, const ScanGrid& grid_h,
                                 const ScanGrid& grid_c, double tol = 1e-4);

// One EmpPoint per eta_C via maximize_power_1d with T_c = T_h (1 - eta_C);
// eta_C values with no engine regime are skipped and reported.
EmpSweep emp_sweep(const EngineParams& base, std::span<const double> eta_C_values,
                   const ScanGrid& grid, double margin = 0.1);

} // namespace qcarnot

#endif
