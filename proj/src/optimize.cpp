#include "qcarnot/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qcarnot/lowdiss.hpp"

namespace qcarnot {

namespace {

void check_grid(const ScanGrid& g) {
    if (!(g.lo > 0.0) || !(g.lo < g.hi))
        throw ValidationError("scan grid needs 0 < lo < hi");
    if (g.n < 8)
        throw ValidationError("scan grid needs n >= 8");
}

void check_engine_orientation(const EngineParams& p) {
    if (!(p.omega_h_f < p.omega_h_i))
        throw ValidationError("engine mode needs omega_h_f < omega_h_i");
}

std::vector<double> log_spaced(double lo, double hi, int n) {
    std::vector<double> v(n);
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo * std::exp(step * i);
    v.front() = lo;
    v.back() = hi;
    return v;
}

// Golden-section maximization of a unimodal f on [a, b] to relative width
// tol; never returns a worse point than the supplied bracket center.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double center, double f_center, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - (b - a) * invphi;
    double d = a + (b - a) * invphi;
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol * b) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - (b - a) * invphi;
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + (b - a) * invphi;
            fd = f(d);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm >= f_center) return mid;
    return center;  // grid sample stays the winner (e.g. edge-saturated optimum)
}

// Coarse scan + golden refinement of P(tau) for one engine configuration.
struct Scan1D {
    double tau_star;
    double P_max;
};

Scan1D scan_and_refine(const std::function<double(double)>& power,
                       const std::vector<double>& taus, double tol,
                       const char* what) {
    int best = -1;
    double P_best = 0.0;
    std::vector<double> P(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        P[i] = power(taus[i]);
        if (P[i] > 0.0 && (best < 0 || P[i] > P_best)) {
            best = static_cast<int>(i);
            P_best = P[i];
        }
    }
    if (best < 0)
        throw SolverError(std::string("no engine regime: W <= 0 at every ") + what +
                          " grid point");
    const double a = taus[std::max(best - 1, 0)];
    const double b = taus[std::min<std::size_t>(best + 1, taus.size() - 1)];
    const double t = golden_max(power, a, b, taus[best], P_best, tol);
    return {t, power(t)};
}

} // namespace

ScanGrid default_scan_grid(const DerivedParams& d, int n) {
    return {0.05 * d.t_r, 400.0 * d.t_r, n};
}

PowerOptimum1D maximize_power_1d(const EngineParams& p, const ScanGrid& grid, double tol) {
    check_grid(grid);
    check_engine_orientation(p);
    if (!p.gamma_c.is_infinite())
        throw ValidationError("maximize_power_1d runs in the ideal-cold-bath mode; "
                              "gamma_c must be the infinite marker");
    if (!(tol > 0.0))
        throw ValidationError("tolerance must be positive");

    auto power = [&](double tau_h) {
        return run_ideal_cold_cycle({p, tau_h, std::nullopt}).P;
    };
    const Scan1D s =
        scan_and_refine(power, log_spaced(grid.lo, grid.hi, grid.n), tol, "tau_h");
    const CycleResult at = run_ideal_cold_cycle({p, s.tau_star, std::nullopt});
    return {s.tau_star, at.P, at.eta};
}

PowerOptimum2D maximize_power_2d(const EngineParams& p, const ScanGrid& grid_h,
                                 const ScanGrid& grid_c, double tol) {
    check_grid(grid_h);
    check_grid(grid_c);
    check_engine_orientation(p);
    if (p.gamma_c.is_infinite())
        throw ValidationError("maximize_power_2d needs a finite gamma_c");
    if (!(tol > 0.0))
        throw ValidationError("tolerance must be positive");

    constexpr int passes_cap = 100;
    constexpr int slice_points = 9;

    double tau_h = std::sqrt(grid_h.lo * grid_h.hi);
    double tau_c = std::sqrt(grid_c.lo * grid_c.hi);

    auto power = [&](double th, double tc) {
        return run_finite_cycle({p, th, tc}).P;
    };

    int pass = 0;
    for (; pass < passes_cap; ++pass) {
        const double th_prev = tau_h;
        const double tc_prev = tau_c;
        auto along_h = [&](double t) { return power(t, tau_c); };
        tau_h = scan_and_refine(along_h, log_spaced(grid_h.lo, grid_h.hi, slice_points),
                                tol, "tau_h")
                    .tau_star;
        auto along_c = [&](double t) { return power(tau_h, t); };
        tau_c = scan_and_refine(along_c, log_spaced(grid_c.lo, grid_c.hi, slice_points),
                                tol, "tau_c")
                    .tau_star;
        const double move = std::max(std::abs(tau_h - th_prev) / tau_h,
                                     std::abs(tau_c - tc_prev) / tau_c);
        if (move < tol) {
            ++pass;
            break;
        }
    }
    const CycleResult at = run_finite_cycle({p, tau_h, tau_c});
    return {tau_h, tau_c, at.P, at.eta, pass};
}

EmpSweep emp_sweep(const EngineParams& base, std::span<const double> eta_C_values,
                   const ScanGrid& grid, double margin) {
    check_grid(grid);
    check_engine_orientation(base);
    if (!base.gamma_c.is_infinite())
        throw ValidationError("emp_sweep runs in the ideal-cold-bath mode");

    EmpSweep sweep;
    for (double eta_C : eta_C_values) {
        if (!(eta_C > 0.0 && eta_C < 1.0))
            throw ValidationError("eta_C values must lie in (0, 1), got " +
                                  std::to_string(eta_C));
        EngineParams p = base;
        p.T_c = base.T_h * (1.0 - eta_C);
        const DerivedParams d = derive(p);
        PowerOptimum1D opt;
        try {
            opt = maximize_power_1d(p, grid);
        } catch (const SolverError&) {
            sweep.skipped_eta_C.push_back(eta_C);
            continue;
        }
        EmpPoint pt;
        pt.eta_C = eta_C;
        pt.T_c = p.T_c;
        pt.tau_h_star = opt.tau_h_star;
        pt.tau_h_star_over_tr = opt.tau_h_star / d.t_r;
        pt.P_max = opt.P_max;
        pt.eta_MP = opt.eta_MP;
        pt.eta_minus = eta_minus_bound(eta_C);
        pt.eta_plus = eta_plus_bound(eta_C);
        pt.in_regime = regime_check(p, margin).in_regime;
        pt.exceeded_upper_bound = pt.eta_MP > pt.eta_plus;
        sweep.points.push_back(pt);
    }
    std::sort(sweep.points.begin(), sweep.points.end(),
              [](const EmpPoint& a, const EmpPoint& b) { return a.eta_C < b.eta_C; });
    std::sort(sweep.skipped_eta_C.begin(), sweep.skipped_eta_C.end());
    return sweep;
}

} // namespace qcarnot
