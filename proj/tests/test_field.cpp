#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sedh/field.hpp"
#include "sedh/verify.hpp"

using namespace sedh;

namespace {

constexpr double pi = std::numbers::pi;

struct SingleMode {
    double a[3] = {0, 0, 0};
    double b[3] = {0, 0, 0};
    double b1[8] = {0, 0, 0, 0, 0, 0, 0, 0};
    double b2[8] = {0, 0, 0, 0, 0, 0, 0, 0};
};

FieldCoefficients one_mode(double omega, double amp1, double t, const SingleMode& m) {
    FieldCoefficients acc;
    detail::accumulate_mode(omega, amp1, std::cos(omega * t), std::sin(omega * t), m.a, m.b, m.b1,
                            m.b2, acc, true);
    return acc;
}

}  // namespace

TEST_CASE("empty window gives zero fields") {
    ModeBank bank(3, 100.0, 50, 0.01);  // no window update: nothing admitted
    CHECK(norm(vector_potential(bank, {0.1, 0.2, 0.3}, 5.0)) == 0.0);
    CHECK(norm(electric_field(bank, {0.1, 0.2, 0.3}, 5.0, 0.02)) == 0.0);
    Mat3 f = field_tensor(bank, {0.1, 0.2, 0.3}, 5.0, 0.02);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(f(i, j) == 0.0);
}

TEST_CASE("single cosine draw: A matches the hand-evaluated closed form") {
    // only B[1][1] = 1: A_i(t, rbar) = amp cos(wt) [d_i1 + (w^2/10)(rbar_1 rbar_i - 2 d_i1 rbar^2)]
    double omega = 0.4, dw = 0.1, w_cut = std::exp(-0.5 * omega * 0.01);
    double amp = std::sqrt(dw * omega / pi) * w_cut;
    SingleMode m;
    m.b[0] = 1.0;
    Vec3 rbar{0.21, -0.13, 0.07};
    for (double t : {0.0, 0.7, 3.9}) {
        Vec3 a_val = assemble_a(one_mode(omega, amp, t, m), rbar);
        double r2 = norm2(rbar);
        double c = std::cos(omega * t);
        Vec3 expected{
            amp * c * (1.0 + omega * omega / 10.0 * (rbar.x * rbar.x - 2.0 * r2)),
            amp * c * (omega * omega / 10.0) * rbar.x * rbar.y,
            amp * c * (omega * omega / 10.0) * rbar.x * rbar.z};
        CHECK(norm(a_val - expected) < 1e-15 * amp);
    }
}

TEST_CASE("single sine draw: E at the origin") {
    // only A[1][1] = 1: E_1(0, 0) = -sqrt(dw w^3/pi) W(w)
    double omega = 0.4, dw = 0.1, w_cut = std::exp(-0.5 * omega * 0.3);
    double amp1 = std::sqrt(dw * omega / pi) * w_cut;
    SingleMode m;
    m.a[0] = 1.0;
    Vec3 e_val = assemble_e(one_mode(omega, amp1, 0.0, m), {0, 0, 0}, 0.02);
    double expected = -std::sqrt(dw * omega * omega * omega / pi) * w_cut;
    CHECK(e_val.x == doctest::Approx(expected).epsilon(1e-14));
    CHECK(e_val.y == 0.0);
    CHECK(e_val.z == 0.0);
}

TEST_CASE("linear channel carries amplitude sqrt(dw w^3 / 20 pi) per unit draw") {
    // one beta1 draw in channel 1 (symmetric basis member): A gains the
    // lambda-contracted linear term, F stays zero at the origin
    double omega = 0.8, dw = 0.05;
    double amp1 = std::sqrt(dw * omega / pi);
    SingleMode m;
    m.b1[0] = 1.0;
    Vec3 rbar{0.1, 0.05, -0.2};
    FieldCoefficients co = one_mode(omega, amp1, 0.0, m);
    Vec3 a_val = assemble_a(co, rbar);
    double lam_amp = std::sqrt(dw * omega * omega * omega / (20.0 * pi));
    // basis member 1 couples x <-> y with sqrt(3)
    Vec3 expected{lam_amp * std::sqrt(3.0) * rbar.y, lam_amp * std::sqrt(3.0) * rbar.x, 0.0};
    CHECK(norm(a_val - expected) < 1e-15);
}

TEST_CASE("tensor channels: symmetric lambda members do not source F") {
    double omega = 0.8, amp1 = 0.3;
    Vec3 r{0.0, 0.0, 0.0};
    for (int ch : {0, 2, 3, 5, 7}) {
        SingleMode m;
        m.b1[ch] = 1.4;
        m.b2[ch] = -0.6;
        Mat3 f = assemble_f(one_mode(omega, amp1, 0.3, m), r, 0.02);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(f(i, j) == 0.0);
    }
    for (int ch : {1, 4, 6}) {
        SingleMode m;
        m.b1[ch] = 1.0;
        Mat3 f = assemble_f(one_mode(omega, amp1, 0.0, m), r, 0.02);
        double expected = 0.02 * std::sqrt(5.0) * amp1 * omega * 2.0 * 0.22360679774997896964;
        int i = ch == 1 ? 0 : (ch == 4 ? 0 : 1);
        int j = ch == 1 ? 1 : 2;
        CHECK(f(i, j) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("F is exactly antisymmetric") {
    ModeBank bank(11, 100.0, 800, 0.02);
    bank.update_window(3.2, 2.5);
    Mat3 f = field_tensor(bank, {0.4, -0.2, 0.9}, 7.3, 0.0219);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(f(i, j) == -f(j, i));
    CHECK(f(0, 0) == 0.0);
}

TEST_CASE("A at the origin equals an independent leading-order resummation") {
    ModeBank bank(21, 100.0, 600, 0.05);
    bank.update_window(2.4, 2.5);
    bank.materialize(600);
    double t = 4.2;
    Vec3 direct = vector_potential(bank, {0, 0, 0}, t);
    Vec3 resum{0, 0, 0};
    double dw = 1.0 / bank.grid_n();
    for (std::size_t n = 1; n <= bank.cutoff_index(); ++n) {
        double w = bank.omega(n);
        double amp = std::sqrt(dw * w / pi) * std::exp(-0.5 * w * 0.05);
        double c = std::cos(w * t), s = std::sin(w * t);
        for (int i = 0; i < 3; ++i) {
            double v = amp * (bank.b(n, i) * c + bank.a(n, i) * s);
            if (i == 0) resum.x += v;
            if (i == 1) resum.y += v;
            if (i == 2) resum.z += v;
        }
    }
    CHECK(norm(direct - resum) < 1e-12 * std::max(1.0, norm(direct)));
}

TEST_CASE("gauge: finite-difference divergence of A vanishes") {
    ModeBank bank(5, 200.0, 1600, 0.02);
    bank.update_window(3.2, 2.5);
    for (double t : {0.0, 11.7, 93.4}) {
        CHECK(verify::gauge_divergence_rel(bank, {0.02, -0.04, 0.01}, t) < 1e-6);
    }
}

TEST_CASE("E equals -dA/dt and F equals curl A at random points") {
    auto worst = verify::field_consistency(25, 99, 3.0 / 137.036);
    CHECK(worst.gauge < 1e-6);
    CHECK(worst.e_field < 1e-5);
    CHECK(worst.f_tensor < 1e-5);
}

TEST_CASE("field histories are deterministic in (seed, N, n_max)") {
    ModeBank b1(31, 150.0, 900, 0.01);
    ModeBank b2(31, 150.0, 900, 0.01);
    b1.update_window(2.0, 2.5);
    b2.update_window(2.0, 2.5);
    for (double t : {0.3, 1.7, 42.0}) {
        Vec3 e1 = electric_field(b1, {0.2, 0.1, -0.3}, t, 0.0219);
        Vec3 e2 = electric_field(b2, {0.2, 0.1, -0.3}, t, 0.0219);
        CHECK(e1.x == e2.x);
        CHECK(e1.y == e2.y);
        CHECK(e1.z == e2.z);
    }
    // window membership changes never alter coefficient values
    b1.update_window(1.0, 2.5);
    b1.update_window(2.0, 2.5);
    for (std::size_t n = 1; n <= 300; ++n) CHECK(b1.a(n, 0) == b2.a(n, 0));
}

TEST_CASE("ensemble mean of A vanishes within standard error") {
    const int n_ens = 1500;
    double sum[3] = {0, 0, 0}, sumsq[3] = {0, 0, 0};
    for (int e = 0; e < n_ens; ++e) {
        ModeBank bank(1000 + static_cast<std::uint64_t>(e), 50.0, 250, 0.1);
        bank.update_window(2.0, 2.5);
        Vec3 a = vector_potential(bank, {0.05, 0.0, -0.02}, 3.0);
        double comps[3] = {a.x, a.y, a.z};
        for (int i = 0; i < 3; ++i) {
            sum[i] += comps[i];
            sumsq[i] += comps[i] * comps[i];
        }
    }
    for (int i = 0; i < 3; ++i) {
        double mean = sum[i] / n_ens;
        double var = sumsq[i] / n_ens - mean * mean;
        double se = std::sqrt(var / (n_ens - 1));
        CHECK(std::fabs(mean) < 4.0 * se);
    }
}
