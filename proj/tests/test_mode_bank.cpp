#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "sedh/mode_bank.hpp"

using namespace sedh;

TEST_CASE("frequency grid: N=10, n_max=3 gives 0.1, 0.2, 0.3") {
    ModeBank bank(1, 10.0, 3, 0.0);
    CHECK(bank.omega(1) == doctest::Approx(0.1).epsilon(1e-16));
    CHECK(bank.omega(2) == doctest::Approx(0.2).epsilon(1e-16));
    CHECK(bank.omega(3) == doctest::Approx(0.3).epsilon(1e-16));
    CHECK(bank.omega_max() == doctest::Approx(0.3).epsilon(1e-16));
}

TEST_CASE("identical (seed, N, n_max) banks are bit-identical") {
    ModeBank b1(77, 100.0, 500, 0.01);
    ModeBank b2(77, 100.0, 500, 0.01);
    b1.materialize(500);
    b2.materialize(500);
    for (std::size_t n = 1; n <= 500; ++n) {
        for (int i = 0; i < 3; ++i) {
            CHECK(b1.a(n, i) == b2.a(n, i));
            CHECK(b1.b(n, i) == b2.b(n, i));
        }
        for (int ch = 0; ch < 8; ++ch) {
            CHECK(b1.beta1(n, ch) == b2.beta1(n, ch));
            CHECK(b1.beta2(n, ch) == b2.beta2(n, ch));
        }
    }
}

TEST_CASE("materialization order does not change coefficients") {
    ModeBank incremental(5, 50.0, 400, 0.0);
    incremental.materialize(10);
    incremental.materialize(400);
    ModeBank direct(5, 50.0, 400, 0.0);
    direct.materialize(400);
    for (std::size_t n = 1; n <= 400; ++n) {
        CHECK(incremental.a(n, 2) == direct.a(n, 2));
        CHECK(incremental.beta2(n, 5) == direct.beta2(n, 5));
    }
    // a longer bank extends, never reshuffles, an existing one
    ModeBank longer(5, 50.0, 800, 0.0);
    longer.materialize(800);
    for (std::size_t n = 1; n <= 400; ++n) {
        CHECK(longer.b(n, 0) == direct.b(n, 0));
    }
}

TEST_CASE("sample variance of the draws over 1e5 values") {
    ModeBank bank(2024, 10.0, 5000, 0.0);
    bank.materialize(5000);
    double sum = 0.0, sumsq = 0.0;
    std::size_t count = 0;
    for (std::size_t n = 1; n <= 5000; ++n) {
        for (int i = 0; i < 3; ++i) {
            for (double g : {bank.a(n, i), bank.b(n, i)}) {
                sum += g;
                sumsq += g * g;
                ++count;
            }
        }
        for (int ch = 0; ch < 8; ++ch) {
            sum += bank.beta1(n, ch) + bank.beta2(n, ch);
            sumsq += bank.beta1(n, ch) * bank.beta1(n, ch) +
                     bank.beta2(n, ch) * bank.beta2(n, ch);
            count += 2;
        }
    }
    double mean = sum / static_cast<double>(count);
    double var = sumsq / static_cast<double>(count) - mean * mean;
    CHECK(count == 110000);
    CHECK(var == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("window update bookkeeping") {
    ModeBank bank(9, 1e5, 2000000, 4.79e-4);

    // cutoff at 2.5 x wK(E=-1.6): admits n <= 1431083
    double wk = 5.7243340223994625;
    auto rep = bank.update_window(wk, 2.5);
    CHECK(rep.entered == 1431083);
    CHECK(rep.left == 0);
    CHECK(rep.highest_mode == 1431083);
    CHECK(!rep.empty);

    // idempotent
    auto rep2 = bank.update_window(wk, 2.5);
    CHECK(rep2.entered == 0);
    CHECK(rep2.left == 0);

    // shrink
    auto rep3 = bank.update_window(wk / 2.0, 2.5);
    CHECK(rep3.left > 0);
    CHECK(rep3.entered == 0);

    // below the first grid frequency: empty window
    auto rep4 = bank.update_window(1e-7, 2.5);
    CHECK(rep4.empty);
    CHECK(rep4.highest_mode == 0);

    // beyond the grid top: error
    CHECK_THROWS_AS(bank.update_window(bank.omega_max(), 2.5), GridError);
}

TEST_CASE("window weight shapes") {
    ModeBank bank(3, 10.0, 100, 0.0);
    bank.update_window(4.0, 2.5);  // cutoff 10 -> all 100 modes
    CHECK(bank.window_weight(1) == 1.0);
    CHECK(bank.window_weight(100) == 1.0);
    CHECK(bank.window_weight(101) == 0.0);

    ModeBank tapered(3, 10.0, 100, 0.0, 0.02);
    tapered.update_window(4.0, 2.5);
    CHECK(tapered.window_weight(97) == 1.0);
    CHECK(tapered.window_weight(99) > 0.0);
    CHECK(tapered.window_weight(99) < 1.0);
    CHECK(tapered.window_weight(100) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("spectral cutoff") {
    ModeBank bank(10, 10.0, 100, 0.2);
    CHECK(bank.spectral_cutoff(10) == doctest::Approx(std::exp(-0.5 * 1.0 * 0.2)).epsilon(1e-15));
}

TEST_CASE("snapshot round trip regenerates the same bank") {
    ModeBank bank(123, 200.0, 5000, 0.01, 0.02);
    bank.update_window(10.0, 2.0);
    bank.materialize(3000);
    std::stringstream buf;
    bank.save_snapshot(buf);
    ModeBank back = ModeBank::load_snapshot(buf);
    CHECK(back.seed() == bank.seed());
    CHECK(back.grid_n() == bank.grid_n());
    CHECK(back.n_max() == bank.n_max());
    CHECK(back.cutoff_index() == bank.cutoff_index());
    CHECK(back.edge_fraction() == bank.edge_fraction());
    CHECK(back.materialized() == bank.materialized());
    for (std::size_t n : {std::size_t{1}, std::size_t{100}, std::size_t{2999}}) {
        CHECK(back.a(n, 1) == bank.a(n, 1));
        CHECK(back.beta1(n, 7) == bank.beta1(n, 7));
    }
}

TEST_CASE("snapshot rejects truncation and junk") {
    ModeBank bank(1, 10.0, 10, 0.0);
    std::stringstream buf;
    bank.save_snapshot(buf);
    std::string full = buf.str();
    std::stringstream cut(full.substr(0, full.size() / 2));
    CHECK_THROWS_AS(ModeBank::load_snapshot(cut), GridError);
    std::stringstream junk(std::string("XXXX") + full.substr(4));
    CHECK_THROWS_AS(ModeBank::load_snapshot(junk), GridError);
}
