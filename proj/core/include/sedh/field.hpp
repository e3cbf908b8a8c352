#pragma once

#include "sedh/mode_bank.hpp"
#include "sedh/vec3.hpp"

namespace sedh {

/// Electric field and antisymmetric field tensor at one space-time point.
/// A factor sqrt(3/2) is absorbed into the field normalization so the
/// radiation coupling beta multiplies E directly in the equation of motion.
struct FieldSample {
    Vec3 e;
    Mat3 f;

    Vec3 b() const { return {f(1, 2), f(2, 0), f(0, 1)}; }
    /// Magnetic part of the Lorentz force: (v x B)_i = F_ij v_j.
    Vec3 lorentz(const Vec3& v) const { return mul(f, v); }
};

/// Time-dependent coefficient sums of the frequency synthesis, evaluated at
/// one time with the current window. The spatial dependence is polynomial:
/// assembling with the position reproduces the mode sums exactly, so these
/// are what the coarse sampler interpolates.
///
/// Channels (vector potential / electric field / field tensor):
///   a0,e0   order-1 vector sums
///   a1,e1   the 8 linear-channel sums, contracted with the lambda basis
///   a2,e2   order-r^2 vector sums; field part is (u.r) r - 2 u r^2
///   g       tensor channels 2,5,7 at the Eq-level amplitude
///   f2      order-r tensor vector sum
struct FieldCoefficients {
    double a0[3]{}, a1[8]{}, a2[3]{};
    double e0[3]{}, e1[8]{}, e2[3]{};
    double g[3]{}, f2[3]{};
};

namespace detail {

/// Per-mode contribution at phase (c, s) = (cos wt, sin wt). amp1 is the
/// windowed order-1 amplitude sqrt(dw w / pi) W(w) times the window weight.
/// with_a skips the vector-potential channels (the integrator needs E and F
/// only).
inline void accumulate_mode(double omega, double amp1, double c, double s,
                            const double a[3], const double b[3],
                            const double b1[8], const double b2[8],
                            FieldCoefficients& acc, bool with_a) {
    constexpr double inv_2sqrt5 = 0.22360679774997896964;  // 1/(2 sqrt 5)
    const double amp3 = amp1 * omega;
    const double lam_e = amp3 * omega * inv_2sqrt5;
    const double quad_e = amp3 * omega * omega * 0.1;
    const double amp_f = 2.0 * amp3 * inv_2sqrt5;      // sqrt(dw w^3 / 5 pi)
    const double amp5 = amp3 * omega * 0.5;            // sqrt(dw w^5 / 4 pi)

    double cos_side[3], sin_side[3];
    for (int i = 0; i < 3; ++i) {
        cos_side[i] = b[i] * c + a[i] * s;   // multiplies the even time combo
        sin_side[i] = b[i] * s - a[i] * c;   // shows up in -dA/dt
    }
    for (int i = 0; i < 3; ++i) {
        acc.e0[i] += amp3 * sin_side[i];
        acc.e2[i] += quad_e * sin_side[i];
        acc.f2[i] += amp5 * cos_side[i];
    }
    for (int ch = 0; ch < 8; ++ch) {
        acc.e1[ch] += lam_e * (b1[ch] * s - b2[ch] * c);
    }
    acc.g[0] += amp_f * (b1[1] * c + b2[1] * s);
    acc.g[1] += amp_f * (b1[4] * c + b2[4] * s);
    acc.g[2] += amp_f * (b1[6] * c + b2[6] * s);

    if (with_a) {
        const double lam_a = amp1 * omega * inv_2sqrt5;
        const double quad_a = amp1 * omega * omega * 0.1;
        for (int i = 0; i < 3; ++i) {
            acc.a0[i] += amp1 * cos_side[i];
            acc.a2[i] += quad_a * cos_side[i];
        }
        for (int ch = 0; ch < 8; ++ch) {
            acc.a1[ch] += lam_a * (b1[ch] * c + b2[ch] * s);
        }
    }
}

/// Contraction M_ik = sum_a h_a L^a_ik written out against the sparse basis.
Mat3 lambda_contract(const double h[8]);

}  // namespace detail

/// Exact coefficient sums at time t over the bank's current window.
FieldCoefficients field_coefficients(const ModeBank& bank, double t, bool with_a = true);

// Spatial assembly. Exact polynomial in the position; used by both the
// direct evaluators and the interpolating sampler.
Vec3 assemble_a(const FieldCoefficients& co, const Vec3& rbar);
Vec3 assemble_e(const FieldCoefficients& co, const Vec3& r, double zalpha);
Mat3 assemble_f(const FieldCoefficients& co, const Vec3& r, double zalpha);

/// Vector potential at scaled position rbar = Z alpha r (the caller scales).
Vec3 vector_potential(const ModeBank& bank, const Vec3& rbar, double t);

/// Electric field at unscaled position r; the spatial correction terms carry
/// explicit powers of Z alpha.
Vec3 electric_field(const ModeBank& bank, const Vec3& r, double t, double zalpha);

/// Antisymmetric field tensor at unscaled position r.
Mat3 field_tensor(const ModeBank& bank, const Vec3& r, double t, double zalpha);

}  // namespace sedh
