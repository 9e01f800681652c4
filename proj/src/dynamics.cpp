#include "qcarnot/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace qcarnot {

namespace {

constexpr int n_samples = 512;             // trajectory output resolution
constexpr std::int64_t step_budget = 1 << 26;  // total RK4 steps per stroke

void check_contact(const BathContact& c) {
    if (!(c.T > 0.0) || !std::isfinite(c.T))
        throw ValidationError("bath temperature must be positive, got " + std::to_string(c.T));
    if (!(c.gamma > 0.0) || !std::isfinite(c.gamma))
        throw ValidationError("bath coupling must be positive, got " + std::to_string(c.gamma));
}

void check_ramp(const Ramp& r) {
    if (!(r.duration > 0.0) || !std::isfinite(r.duration))
        throw ValidationError("stroke duration must be positive, got " +
                              std::to_string(r.duration));
    if (!(r.omega_start > 0.0) || !(r.omega_end > 0.0))
        throw ValidationError("ramp spacings must stay positive");
}

// State advanced by RK4: population plus the two running integrals.
struct State {
    double p;
    double Q;     // integral omega * dp/dt
    double W_on;  // integral p * domega/dt
};

struct FixedStepRun {
    double p_end;
    double Q;
    double W_on;
    std::vector<TrajectorySample> trajectory;
};

// One full pass over the ramp with n steps (n a multiple of 511 so the
// 512 samples sit exactly on nodes). The heat integrand uses the ODE
// right-hand side at the RK nodes, never a differenced trajectory.
FixedStepRun integrate_fixed(double p0, const Ramp& ramp, const BathContact& contact,
                             std::int64_t n, bool want_trajectory) {
    const double h = ramp.duration / static_cast<double>(n);
    const double slope = (ramp.omega_end - ramp.omega_start) / ramp.duration;

    auto omega_at = [&](std::int64_t step, double frac) {
        // omega on the node grid; frac is 0, 0.5 or 1 within the step
        double t = (static_cast<double>(step) + frac) * h;
        return ramp.omega_start + slope * t;
    };
    auto deriv = [&](double omega, const State& s, State& ds) {
        Rates r = rates(omega, contact);
        ds.p = -r.kappa * s.p + r.C;
        ds.Q = omega * ds.p;
        ds.W_on = s.p * slope;
    };

    FixedStepRun out;
    const std::int64_t stride = want_trajectory ? n / (n_samples - 1) : 0;
    if (want_trajectory) {
        out.trajectory.reserve(n_samples);
        out.trajectory.push_back({0.0, ramp.omega_start, p0});
    }

    State s{p0, 0.0, 0.0};
    State k1, k2, k3, k4, tmp;
    for (std::int64_t i = 0; i < n; ++i) {
        const double w0 = omega_at(i, 0.0);
        const double wm = omega_at(i, 0.5);
        const double w1 = omega_at(i, 1.0);
        deriv(w0, s, k1);
        tmp = {s.p + 0.5 * h * k1.p, 0, 0};
        deriv(wm, tmp, k2);
        tmp = {s.p + 0.5 * h * k2.p, 0, 0};
        deriv(wm, tmp, k3);
        tmp = {s.p + h * k3.p, 0, 0};
        deriv(w1, tmp, k4);
        s.p += h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
        s.Q += h / 6.0 * (k1.Q + 2.0 * k2.Q + 2.0 * k3.Q + k4.Q);
        s.W_on += h / 6.0 * (k1.W_on + 2.0 * k2.W_on + 2.0 * k3.W_on + k4.W_on);
        if (want_trajectory && (i + 1) % stride == 0) {
            double t = static_cast<double>(i + 1) * h;
            out.trajectory.push_back({t, w1, s.p});
        }
    }
    out.p_end = s.p;
    out.Q = s.Q;
    out.W_on = s.W_on;
    return out;
}

// Base step count: h = min(tau/2000, t_rel/200) with t_rel the fastest
// relaxation time along the ramp, rounded up to a multiple of 511.
std::int64_t base_steps(const Ramp& ramp, const BathContact& contact) {
    const double omega_min = std::min(ramp.omega_start, ramp.omega_end);
    const double t_rel = omega_min / (2.0 * contact.gamma * contact.T);
    double n_raw = std::max(2000.0, ramp.duration / (t_rel / 200.0));
    if (n_raw > static_cast<double>(step_budget))
        throw SolverError("stroke needs more than the step budget at the base resolution; "
                          "duration/t_rel = " + std::to_string(ramp.duration / t_rel));
    std::int64_t n = static_cast<std::int64_t>(std::ceil(n_raw / (n_samples - 1)));
    return n * (n_samples - 1);
}

// Runs at n and 2n steps, doubling until the Richardson error estimate of
// the final population meets tol. Returns the accepted (finer) step count.
std::int64_t resolve_steps(double p0, const Ramp& ramp, const BathContact& contact,
                           double tol) {
    std::int64_t n = base_steps(ramp, contact);
    FixedStepRun coarse = integrate_fixed(p0, ramp, contact, n, false);
    while (true) {
        if (2 * n > step_budget) {
            std::ostringstream os;
            os << "step halving did not reach tol = " << tol << " within the budget ("
               << step_budget << " steps)";
            throw SolverError(os.str());
        }
        FixedStepRun fine = integrate_fixed(p0, ramp, contact, 2 * n, false);
        const double est = std::abs(fine.p_end - coarse.p_end) / 15.0;
        if (est <= tol * std::max(std::abs(fine.p_end), 1e-30))
            return 2 * n;
        n *= 2;
        coarse = fine;
    }
}

StrokeResult assemble(double p0, const BathContact& contact, const FixedStepRun& run) {
    StrokeResult res;
    res.trajectory = run.trajectory;
    res.p_start = p0;
    res.p_end = run.p_end;
    res.Q = run.Q;
    res.W_on = run.W_on;
    res.dS = two_level_entropy(run.p_end) - two_level_entropy(p0);
    res.S_ir = res.dS - run.Q / contact.T;
    return res;
}

} // namespace

double two_level_entropy(double p) {
    const double q = std::clamp(p, 1e-15, 1.0 - 1e-15);
    return -q * std::log(q) - (1.0 - q) * std::log(1.0 - q);
}

double equilibrium_population(double omega, double T) {
    if (!(omega > 0.0))
        throw ValidationError("equilibrium_population needs omega > 0");
    if (!(T > 0.0))
        throw ValidationError("equilibrium_population needs T > 0");
    const double x = omega / T;
    // exp(-x)/(1+exp(-x)) stays finite for any x > 0
    const double e = std::exp(-x);
    return e / (1.0 + e);
}

double bose_occupation(double omega, double T) {
    if (!(omega > 0.0))
        throw ValidationError("bose_occupation needs omega > 0 (occupation diverges)");
    if (!(T > 0.0))
        throw ValidationError("bose_occupation needs T > 0");
    return 1.0 / std::expm1(omega / T);
}

Rates rates(double omega, const BathContact& contact) {
    check_contact(contact);
    const double n = bose_occupation(omega, contact.T);
    return {contact.gamma * (2.0 * n + 1.0), contact.gamma * n};
}

StrokeResult integrate_stroke(double p0, const Ramp& ramp, const BathContact& contact,
                              double tol) {
    check_ramp(ramp);
    check_contact(contact);
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw ValidationError("initial population must lie in [0, 1], got " +
                              std::to_string(p0));
    if (!(tol > 0.0))
        throw ValidationError("tolerance must be positive");
    std::int64_t n = base_steps(ramp, contact);
    FixedStepRun coarse = integrate_fixed(p0, ramp, contact, n, false);
    while (true) {
        if (2 * n > step_budget) {
            std::ostringstream os;
            os << "step halving did not reach tol = " << tol << " within the budget ("
               << step_budget << " steps)";
            throw SolverError(os.str());
        }
        FixedStepRun fine = integrate_fixed(p0, ramp, contact, 2 * n, true);
        const double est = std::abs(fine.p_end - coarse.p_end) / 15.0;
        if (est <= tol * std::max(std::abs(fine.p_end), 1e-30))
            return assemble(p0, contact, fine);
        n *= 2;
        coarse = std::move(fine);
    }
}

AffineMap stroke_affine_map(const Ramp& ramp, const BathContact& contact, double tol) {
    check_ramp(ramp);
    check_contact(contact);
    // shared step count keeps the two runs exactly affine-consistent
    const std::int64_t n0 = resolve_steps(0.0, ramp, contact, tol);
    const std::int64_t n1 = resolve_steps(1.0, ramp, contact, tol);
    const std::int64_t n = std::max(n0, n1);
    const double H = integrate_fixed(0.0, ramp, contact, n, false).p_end;
    const double G = integrate_fixed(1.0, ramp, contact, n, false).p_end - H;
    return {G, H};
}

std::int64_t resolve_step_count(double p0, const Ramp& ramp, const BathContact& contact,
                                double tol) {
    check_ramp(ramp);
    check_contact(contact);
    return resolve_steps(p0, ramp, contact, tol);
}

StrokeResult integrate_stroke_at(double p0, const Ramp& ramp, const BathContact& contact,
                                 std::int64_t n_steps) {
    check_ramp(ramp);
    check_contact(contact);
    if (n_steps <= 0 || n_steps % (n_samples - 1) != 0)
        throw ValidationError("n_steps must be a positive multiple of 511");
    return assemble(p0, contact, integrate_fixed(p0, ramp, contact, n_steps, true));
}

} // namespace qcarnot
