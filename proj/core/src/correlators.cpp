#include "sedh/correlators.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>

#include "sedh/field.hpp"
#include "sedh/rng.hpp"

namespace sedh {

double cs_analytic(double rbar, double dt, double tau_c) {
    std::complex<double> sigma(dt, -tau_c);
    return -1.5 / std::numbers::pi * std::real(1.0 / (sigma * sigma - rbar * rbar));
}

double cp_analytic(double rbar, double dt, double tau_c) {
    std::complex<double> sigma(dt, -tau_c);
    if (rbar < 1e-3 * std::abs(sigma)) {
        std::complex<double> s2 = sigma * sigma;
        return -0.5 / std::numbers::pi * std::real(1.0 / s2 + 0.6 * rbar * rbar / (s2 * s2));
    }
    std::complex<double> bracket =
        sigma / (2.0 * rbar) * std::log((sigma + rbar) / (sigma - rbar)) - 1.0;
    return -1.5 / (std::numbers::pi * rbar * rbar) * std::real(bracket);
}

Mat3 ca_smallr(const Vec3& rbar, double dt, double tau_c) {
    std::complex<double> sigma(dt, -tau_c);
    std::complex<double> s2 = sigma * sigma;
    double lead = -std::real(1.0 / s2) / std::numbers::pi;
    double quad = 0.6 * std::real(1.0 / (s2 * s2)) / std::numbers::pi;
    double rr[3] = {rbar.x, rbar.y, rbar.z};
    double r2 = norm2(rbar);
    Mat3 out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double delta = (i == j) ? 1.0 : 0.0;
            out(i, j) = lead * delta + quad * (rr[i] * rr[j] - 2.0 * r2 * delta);
        }
    }
    return out;
}

double spectral_sum_autocorrelator(const McSettings& st, double dt) {
    auto n_max = static_cast<std::size_t>(st.omega_max * st.grid_n);
    double dw = 1.0 / st.grid_n;
    double acc = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        double w = static_cast<double>(n) * dw;
        acc += dw * w * std::exp(-w * st.tau_c) * std::cos(w * dt);
    }
    return acc / std::numbers::pi;
}

namespace {

struct Probe {
    Vec3 pos;
    double offset = 0.0;
};

/// A_i at every base time for each probe, for one bank realization. Output
/// layout grids[p][k*3 + i]. Phases rotate along the uniform base-time grid.
void eval_probe_grids(std::uint64_t bank_seed, const McSettings& st,
                      std::span<const Probe> probes, std::vector<std::vector<double>>& grids) {
    const auto n_max = static_cast<std::size_t>(st.omega_max * st.grid_n);
    const double dw = 1.0 / st.grid_n;
    const double inv_pi = 1.0 / std::numbers::pi;
    const auto m = static_cast<std::size_t>(st.base_times);
    const double spacing = st.t_span / static_cast<double>(st.base_times);
    constexpr double inv_2sqrt5 = 0.22360679774997896964;

    bool need_beta = false;
    for (const auto& p : probes) {
        if (norm2(p.pos) > 0.0) need_beta = true;
    }

    grids.assign(probes.size(), std::vector<double>(m * 3, 0.0));

    std::vector<double> phase_c(probes.size()), phase_s(probes.size());
    double draws[ModeBank::draws_per_mode];

    for (std::size_t n = 1; n <= n_max; ++n) {
        auto stream = rng::mode_stream(bank_seed, n);
        rng::fill_gaussians(stream, draws, need_beta ? 22 : 6);
        const double* ga = draws;       // sine-side vector draws
        const double* gb = draws + 3;   // cosine-side vector draws
        const double* b1 = draws + 6;
        const double* b2 = draws + 14;

        double w = static_cast<double>(n) * dw;
        double amp1 = std::sqrt(dw * w * inv_pi) * std::exp(-0.5 * w * st.tau_c);
        double rot_c = std::cos(w * spacing);
        double rot_s = std::sin(w * spacing);

        for (std::size_t p = 0; p < probes.size(); ++p) {
            double theta0 = w * (st.t_start + probes[p].offset);
            phase_c[p] = std::cos(theta0);
            phase_s[p] = std::sin(theta0);
        }

        for (std::size_t p = 0; p < probes.size(); ++p) {
            const Vec3& pos = probes[p].pos;
            Vec3 cv{amp1 * gb[0], amp1 * gb[1], amp1 * gb[2]};
            Vec3 sv{amp1 * ga[0], amp1 * ga[1], amp1 * ga[2]};
            if (norm2(pos) > 0.0) {
                double amp_lam = amp1 * w * inv_2sqrt5;
                double amp_quad = amp1 * w * w * 0.1;
                Vec3 bvec{gb[0], gb[1], gb[2]};
                Vec3 avec{ga[0], ga[1], ga[2]};
                double p2 = norm2(pos);
                cv += amp_lam * mul(detail::lambda_contract(b1), pos) +
                      amp_quad * (dot(bvec, pos) * pos - 2.0 * p2 * bvec);
                sv += amp_lam * mul(detail::lambda_contract(b2), pos) +
                      amp_quad * (dot(avec, pos) * pos - 2.0 * p2 * avec);
            }
            double c = phase_c[p];
            double s = phase_s[p];
            double* grid = grids[p].data();
            for (std::size_t k = 0; k < m; ++k) {
                grid[k * 3 + 0] += cv.x * c + sv.x * s;
                grid[k * 3 + 1] += cv.y * c + sv.y * s;
                grid[k * 3 + 2] += cv.z * c + sv.z * s;
                double cn = c * rot_c - s * rot_s;
                s = s * rot_c + c * rot_s;
                c = cn;
            }
        }
    }
}

/// Threaded ensemble driver. per_bank fills n_out tensors for one bank;
/// results land in per-ensemble slots and reduce in index order, so the
/// estimates do not depend on the thread count.
template <class PerBank>
std::vector<TensorEstimate> run_ensembles(const McSettings& st, std::size_t n_out,
                                          PerBank&& per_bank) {
    const auto n_ens = static_cast<std::size_t>(st.n_ensembles);
    std::vector<Mat3> slots(n_ens * n_out);

    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        std::vector<Mat3> out(n_out);
        while (true) {
            std::size_t e = cursor.fetch_add(1);
            if (e >= n_ens) break;
            std::uint64_t bank_seed = rng::stream(st.seed, rng::Domain::ensemble, e).key;
            per_bank(bank_seed, out);
            for (std::size_t k = 0; k < n_out; ++k) slots[e * n_out + k] = out[k];
        }
    };

    int n_threads = st.threads > 0 ? st.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<TensorEstimate> result(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        Mat3 sum, sumsq;
        for (std::size_t e = 0; e < n_ens; ++e) {
            const Mat3& y = slots[e * n_out + k];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    sum(i, j) += y(i, j);
                    sumsq(i, j) += y(i, j) * y(i, j);
                }
        }
        TensorEstimate& est = result[k];
        est.ensembles = n_ens;
        double inv_n = 1.0 / static_cast<double>(n_ens);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double mean = sum(i, j) * inv_n;
                est.mean(i, j) = mean;
                double var = std::max(0.0, sumsq(i, j) * inv_n - mean * mean);
                est.se(i, j) = std::sqrt(var / std::max<double>(1.0, static_cast<double>(n_ens - 1)));
            }
    }
    return result;
}

Mat3 averaged_product(const std::vector<double>& gp, const std::vector<double>& gq,
                      std::size_t m) {
    Mat3 y;
    for (std::size_t k = 0; k < m; ++k) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) y(i, j) += gp[k * 3 + i] * gq[k * 3 + j];
    }
    double inv_m = 1.0 / static_cast<double>(m);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) y(i, j) *= inv_m;
    return y;
}

}  // namespace

std::vector<TensorEstimate> mc_autocorrelator(const McSettings& st,
                                              std::span<const CorrelatorPoint> points) {
    // dedupe probes; points often share the q side
    std::vector<Probe> probes;
    std::vector<std::pair<std::size_t, std::size_t>> pairing(points.size());
    auto intern = [&](const Vec3& pos, double offset) -> std::size_t {
        for (std::size_t i = 0; i < probes.size(); ++i) {
            if (probes[i].offset == offset && probes[i].pos.x == pos.x &&
                probes[i].pos.y == pos.y && probes[i].pos.z == pos.z) {
                return i;
            }
        }
        probes.push_back({pos, offset});
        return probes.size() - 1;
    };
    for (std::size_t k = 0; k < points.size(); ++k) {
        pairing[k] = {intern(points[k].rbar, points[k].dt), intern(points[k].qbar, 0.0)};
    }
    const auto m = static_cast<std::size_t>(st.base_times);
    return run_ensembles(st, points.size(), [&](std::uint64_t bank_seed, std::vector<Mat3>& out) {
        std::vector<std::vector<double>> grids;
        eval_probe_grids(bank_seed, st, probes, grids);
        for (std::size_t k = 0; k < points.size(); ++k) {
            out[k] = averaged_product(grids[pairing[k].first], grids[pairing[k].second], m);
        }
    });
}

TensorEstimate mc_translation_difference(const McSettings& st, const CorrelatorPoint& point,
                                         const Vec3& shift, double t_shift) {
    std::vector<Probe> probes = {
        {point.rbar, point.dt},
        {point.qbar, 0.0},
        {point.rbar + shift, point.dt + t_shift},
        {point.qbar + shift, t_shift},
    };
    const auto m = static_cast<std::size_t>(st.base_times);
    auto res = run_ensembles(st, 1, [&](std::uint64_t bank_seed, std::vector<Mat3>& out) {
        std::vector<std::vector<double>> grids;
        eval_probe_grids(bank_seed, st, probes, grids);
        Mat3 y1 = averaged_product(grids[0], grids[1], m);
        Mat3 y2 = averaged_product(grids[2], grids[3], m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[0](i, j) = y1(i, j) - y2(i, j);
    });
    return res[0];
}

TensorEstimate mc_quadratic_coefficient(const McSettings& st, double h, double dt) {
    std::vector<Probe> probes = {
        {{h, 0.0, 0.0}, dt},
        {{-h, 0.0, 0.0}, dt},
        {{0.0, 0.0, 0.0}, dt},
        {{0.0, 0.0, 0.0}, 0.0},
    };
    const auto m = static_cast<std::size_t>(st.base_times);
    const double scale = 1.0 / (2.0 * h * h);
    auto res = run_ensembles(st, 1, [&](std::uint64_t bank_seed, std::vector<Mat3>& out) {
        std::vector<std::vector<double>> grids;
        eval_probe_grids(bank_seed, st, probes, grids);
        Mat3 y;
        for (std::size_t k = 0; k < m; ++k) {
            for (int i = 0; i < 3; ++i) {
                double bracket = grids[0][k * 3 + i] + grids[1][k * 3 + i] - 2.0 * grids[2][k * 3 + i];
                for (int j = 0; j < 3; ++j) y(i, j) += bracket * grids[3][k * 3 + j];
            }
        }
        double inv_m = scale / static_cast<double>(m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[0](i, j) = y(i, j) * inv_m;
    });
    return res[0];
}

}  // namespace sedh
