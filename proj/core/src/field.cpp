#include "sedh/field.hpp"

#include <cmath>
#include <numbers>

namespace sedh {

namespace detail {

Mat3 lambda_contract(const double h[8]) {
    const double s3 = std::sqrt(3.0);
    const double s5 = std::sqrt(5.0);
    Mat3 m;
    m(0, 0) = s3 * h[2] + h[7];
    m(1, 1) = -s3 * h[2] + h[7];
    m(2, 2) = -2.0 * h[7];
    m(0, 1) = s3 * h[0] - s5 * h[1];
    m(1, 0) = s3 * h[0] + s5 * h[1];
    m(0, 2) = s3 * h[3] - s5 * h[4];
    m(2, 0) = s3 * h[3] + s5 * h[4];
    m(1, 2) = s3 * h[5] - s5 * h[6];
    m(2, 1) = s3 * h[5] + s5 * h[6];
    return m;
}

}  // namespace detail

FieldCoefficients field_coefficients(const ModeBank& bank, double t, bool with_a) {
    FieldCoefficients acc;
    std::size_t n_cut = bank.cutoff_index();
    if (n_cut == 0) return acc;
    bank.materialize(n_cut);

    const double* a[3] = {bank.a_data(0), bank.a_data(1), bank.a_data(2)};
    const double* b[3] = {bank.b_data(0), bank.b_data(1), bank.b_data(2)};
    const double* b1[8];
    const double* b2[8];
    for (int ch = 0; ch < 8; ++ch) {
        b1[ch] = bank.beta1_data(ch);
        b2[ch] = bank.beta2_data(ch);
    }
    const double dw = 1.0 / bank.grid_n();
    const double inv_pi = 1.0 / std::numbers::pi;

    for (std::size_t n = 1; n <= n_cut; ++n) {
        std::size_t idx = n - 1;
        double omega = bank.omega(n);
        double amp1 = std::sqrt(dw * omega * inv_pi) * bank.spectral_cutoff(n) * bank.window_weight(n);
        double c = std::cos(omega * t);
        double s = std::sin(omega * t);
        double av[3] = {a[0][idx], a[1][idx], a[2][idx]};
        double bv[3] = {b[0][idx], b[1][idx], b[2][idx]};
        double c1[8], c2[8];
        for (int ch = 0; ch < 8; ++ch) {
            c1[ch] = b1[ch][idx];
            c2[ch] = b2[ch][idx];
        }
        detail::accumulate_mode(omega, amp1, c, s, av, bv, c1, c2, acc, with_a);
    }
    return acc;
}

Vec3 assemble_a(const FieldCoefficients& co, const Vec3& rbar) {
    Vec3 out{co.a0[0], co.a0[1], co.a0[2]};
    out += mul(detail::lambda_contract(co.a1), rbar);
    Vec3 u{co.a2[0], co.a2[1], co.a2[2]};
    out += dot(u, rbar) * rbar - (2.0 * norm2(rbar)) * u;
    return out;
}

Vec3 assemble_e(const FieldCoefficients& co, const Vec3& r, double zalpha) {
    Vec3 out{co.e0[0], co.e0[1], co.e0[2]};
    out += zalpha * mul(detail::lambda_contract(co.e1), r);
    Vec3 u{co.e2[0], co.e2[1], co.e2[2]};
    out += (zalpha * zalpha) * (dot(u, r) * r - (2.0 * norm2(r)) * u);
    return out;
}

Mat3 assemble_f(const FieldCoefficients& co, const Vec3& r, double zalpha) {
    const double s5 = std::sqrt(5.0);
    const double za2 = zalpha * zalpha;
    // channels 2, 5, 7 have entries -sqrt5 above the diagonal
    double f01 = zalpha * s5 * co.g[0] + za2 * (co.f2[0] * r.y - co.f2[1] * r.x);
    double f02 = zalpha * s5 * co.g[1] + za2 * (co.f2[0] * r.z - co.f2[2] * r.x);
    double f12 = zalpha * s5 * co.g[2] + za2 * (co.f2[1] * r.z - co.f2[2] * r.y);
    Mat3 f;
    f(0, 1) = f01; f(1, 0) = -f01;
    f(0, 2) = f02; f(2, 0) = -f02;
    f(1, 2) = f12; f(2, 1) = -f12;
    return f;
}

Vec3 vector_potential(const ModeBank& bank, const Vec3& rbar, double t) {
    return assemble_a(field_coefficients(bank, t, true), rbar);
}

Vec3 electric_field(const ModeBank& bank, const Vec3& r, double t, double zalpha) {
    return assemble_e(field_coefficients(bank, t, false), r, zalpha);
}

Mat3 field_tensor(const ModeBank& bank, const Vec3& r, double t, double zalpha) {
    return assemble_f(field_coefficients(bank, t, false), r, zalpha);
}

}  // namespace sedh
