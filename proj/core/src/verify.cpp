#include "sedh/verify.hpp"

#include <algorithm>
#include <cmath>

#include "sedh/field.hpp"
#include "sedh/rng.hpp"

namespace sedh::verify {

double gauge_divergence_rel(const ModeBank& bank, const Vec3& rbar, double t, double h) {
    double div = 0.0;
    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int i = 0; i < 3; ++i) {
        Vec3 ap = vector_potential(bank, rbar + h * axes[i], t);
        Vec3 am = vector_potential(bank, rbar - h * axes[i], t);
        double comp = i == 0 ? ap.x - am.x : (i == 1 ? ap.y - am.y : ap.z - am.z);
        div += comp / (2.0 * h);
    }
    double scale = norm(vector_potential(bank, rbar, t));
    if (scale == 0.0) return 0.0;
    return std::fabs(div) * h / scale;
}

double e_consistency_rel(const ModeBank& bank, const Vec3& r, double t, double zalpha, double h) {
    Vec3 rbar = zalpha * r;
    Vec3 ap = vector_potential(bank, rbar, t + h);
    Vec3 am = vector_potential(bank, rbar, t - h);
    Vec3 e_fd = (-1.0 / (2.0 * h)) * (ap - am);
    Vec3 e = electric_field(bank, r, t, zalpha);
    double scale = std::max(norm(e), 1e-300);
    return norm(e_fd - e) / scale;
}

double f_consistency_rel(const ModeBank& bank, const Vec3& r, double t, double zalpha, double h) {
    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    Vec3 grad[3];  // grad[i] = dA/dx_i
    for (int i = 0; i < 3; ++i) {
        Vec3 ap = vector_potential(bank, zalpha * (r + h * axes[i]), t);
        Vec3 am = vector_potential(bank, zalpha * (r - h * axes[i]), t);
        grad[i] = (1.0 / (2.0 * h)) * (ap - am);
    }
    auto comp = [](const Vec3& v, int j) { return j == 0 ? v.x : (j == 1 ? v.y : v.z); };
    Mat3 f = field_tensor(bank, r, t, zalpha);
    double worst = 0.0, scale = 1e-300;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double fd = comp(grad[i], j) - comp(grad[j], i);
            worst = std::max(worst, std::fabs(fd - f(i, j)));
            scale = std::max(scale, std::fabs(f(i, j)));
        }
    }
    return worst / scale;
}

ConsistencyWorst field_consistency(int n_points, std::uint64_t seed, double zalpha) {
    ConsistencyWorst worst;
    auto st = rng::stream(seed, rng::Domain::ensemble, 0xC0FFEE);
    for (int k = 0; k < n_points; ++k) {
        std::uint64_t base = static_cast<std::uint64_t>(k) * 16;
        ModeBank bank(st.bits(base), 200.0, 1600, 0.02);
        bank.update_window(bank.omega_max() / 2.5, 2.5);  // admit the whole grid
        auto u = [&](int i) { return st.uniform(base + 1 + static_cast<std::uint64_t>(i)); };
        Vec3 r{0.6 * u(0) - 0.3, 0.6 * u(1) - 0.3, 0.6 * u(2) - 0.3};
        double t = 50.0 * u(3);
        worst.gauge = std::max(worst.gauge, gauge_divergence_rel(bank, zalpha * r, t));
        worst.e_field = std::max(worst.e_field, e_consistency_rel(bank, r, t, zalpha));
        worst.f_tensor = std::max(worst.f_tensor, f_consistency_rel(bank, r, t, zalpha));
    }
    return worst;
}

}  // namespace sedh::verify
