#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sedh/vec3.hpp"

namespace sedh {

// Analytic space-time autocorrelators of the synthesized field in Bohr
// units, with the exponential spectral cutoff at time tau_c. rbar is the
// scaled separation |Z alpha (r - q)| and dt the time separation.

/// Trace part: -(3/2pi) Re 1 / ((dt - i tau_c)^2 - rbar^2).
double cs_analytic(double rbar, double dt, double tau_c);

/// Radial projection; closed logarithmic form, switching to the small-rbar
/// series below rbar = 1e-3 |dt - i tau_c| where the log form cancels badly.
double cp_analytic(double rbar, double dt, double tau_c);

/// Decomposition coefficients: C_A = c0 * 1 - c1 * rhat rhat.
inline double c0_from_cs_cp(double cs, double cp) { return cs - cp; }
inline double c1_from_cs_cp(double cs, double cp) { return cs - 3.0 * cp; }

/// Leading small-r tensor form:
/// -(1/pi) Re[1/s^2] 1 + (3/5pi) Re[1/s^4] (rbar rbar - 2 rbar^2 1),  s = dt - i tau_c.
Mat3 ca_smallr(const Vec3& rbar, double dt, double tau_c);

struct CorrelatorPoint {
    Vec3 rbar;
    Vec3 qbar;
    double dt = 0.0;
};

struct McSettings {
    double grid_n = 2000.0;
    double omega_max = 40.0;
    double tau_c = 0.5;
    int n_ensembles = 2000;
    int base_times = 64;     // per-bank time averaging over a stationary span
    double t_start = 5.0;
    double t_span = 1800.0;  // keep t + dt below grid_n where the sum is faithful
    std::uint64_t seed = 1;
    int threads = 1;
};

struct TensorEstimate {
    Mat3 mean;
    Mat3 se;
    std::uint64_t ensembles = 0;
};

/// Monte-Carlo estimate of <A_i(t+dt, rbar) A_j(t, qbar)> per point: each of
/// n_ensembles independent banks contributes a base-time-averaged product;
/// mean and standard error come from the ensemble scatter. Deterministic for
/// fixed settings regardless of thread count.
std::vector<TensorEstimate> mc_autocorrelator(const McSettings& st,
                                              std::span<const CorrelatorPoint> points);

/// Difference estimator <A A> at (point) minus at (point shifted in space by
/// `shift` and in time by t_shift), sharing banks between the two so the
/// translation-invariance residual resolves far below the raw variance.
TensorEstimate mc_translation_difference(const McSettings& st, const CorrelatorPoint& point,
                                         const Vec3& shift, double t_shift);

/// Second spatial difference [A(h x) + A(-h x) - 2 A(0)] A(0) / (2 h^2):
/// estimates the quadratic-in-position coefficient tensor of the
/// autocorrelator, to compare against (3/5pi) Re[1/s^4] (xx - 2 1).
TensorEstimate mc_quadratic_coefficient(const McSettings& st, double h, double dt);

/// Direct windowed spectral sum  sum_n dw w_n W^2(w_n) cos(w_n dt) / pi,
/// the exact expectation of the synthesized <A_i(t+dt,0) A_i(t,0)>.
double spectral_sum_autocorrelator(const McSettings& st, double dt);

}  // namespace sedh
