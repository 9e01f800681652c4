#ifndef QCARNOT_DYNAMICS_HPP
#define QCARNOT_DYNAMICS_HPP

#include <cstdint>
#include <vector>

#include "qcarnot/errors.hpp"

namespace qcarnot {

// Linear frequency sweep omega(t) = omega_start + (omega_end-omega_start)*t/duration.
struct Ramp {
    double omega_start;
    double omega_end;
    double duration;
};

struct BathContact {
    double T;      // bath temperature
    double gamma;  // coupling strength
};

struct TrajectorySample {
    double t;
    double omega;
    double p_e;
};

// One quasi-isothermal stroke. Sign conventions: Q > 0 means heat flowed
// from the bath into the working substance; W_on is work done on the
// substance by the drive, so Q + W_on = omega_end*p_end - omega_start*p_start.
struct StrokeResult {
    std::vector<TrajectorySample> trajectory;  // 512 equally spaced samples
    double p_start;
    double p_end;
    double Q;     // integral of omega * dp/dt
    double W_on;  // integral of p * domega/dt
    double dS;    // S(p_end) - S(p_start), exact two-level Shannon entropy
    double S_ir;  // dS - Q/T, irreversible entropy generation
};

// Affine endpoint map p_end = G*p0 + H of one stroke (the master equation
// is linear in p_e). 0 <= G < 1 for any positive duration.
struct AffineMap {
    double G;
    double H;
};

struct Rates {
    double kappa;  // effective dissipation rate gamma*(2n+1)
    double C;      // excitation rate gamma*n
};

// Two-level Shannon entropy -p ln p - (1-p) ln(1-p); the argument is
// clamped to [1e-15, 1-1e-15] inside the logarithms only.
double two_level_entropy(double p);

// Thermal excited-state population 1/(exp(omega/T)+1), strictly in (0, 1/2).
double equilibrium_population(double omega, double T);

// Bose occupation 1/(exp(omega/T)-1).
double bose_occupation(double omega, double T);

// Rates of the master equation dp/dt = -kappa(t) p + C(t) at spacing omega.
Rates rates(double omega, const BathContact& contact);

// Integrates the stroke with classical fixed-step RK4, step
// h = min(duration/2000, t_rel/200) with t_rel = min(omega)/(2 gamma T),
// rounded so 512 output samples land on nodes. The run is repeated at
// half step until the Richardson estimate of the final-population error
// is below tol; throws SolverError if the step budget is exhausted.
StrokeResult integrate_stroke(double p0, const Ramp& ramp, const BathContact& contact,
                              double tol = 1e-9);

// (G, H) from two integrations (p0 = 0 and p0 = 1) at a shared step count.
AffineMap stroke_affine_map(const Ramp& ramp, const BathContact& contact,
                            double tol = 1e-9);

// Fixed-resolution variants used by the cycle composer so the affine maps
// and the reported pass share one step grid (RK4 is exactly affine in p_e,
// so the limit-cycle closure is then tight to rounding).
std::int64_t resolve_step_count(double p0, const Ramp& ramp, const BathContact& contact,
                                double tol);
StrokeResult integrate_stroke_at(double p0, const Ramp& ramp, const BathContact& contact,
                                 std::int64_t n_steps);

} // namespace qcarnot

#endif
