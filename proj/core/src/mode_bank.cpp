#include "sedh/mode_bank.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

namespace sedh {

ModeBank::ModeBank(std::uint64_t seed, double grid_n, std::size_t n_max, double tau_c,
                   double edge_fraction)
    : seed_(seed), grid_n_(grid_n), n_max_(n_max), tau_c_(tau_c), edge_fraction_(edge_fraction) {
    if (grid_n < 1.0 || n_max < 1) throw GridError("mode bank needs N >= 1 and n_max >= 1");
}

WindowReport ModeBank::update_window(double omega_k, double multiplier) {
    double cutoff = multiplier * omega_k;
    if (cutoff > omega_max() * (1.0 + 1e-12)) {
        throw GridError("moving cutoff exceeds the top of the frequency grid");
    }
    auto new_cut = static_cast<std::size_t>(std::floor(cutoff * grid_n_));
    if (new_cut > n_max_) new_cut = n_max_;

    WindowReport rep;
    if (new_cut > n_cut_) rep.entered = new_cut - n_cut_;
    if (new_cut < n_cut_) rep.left = n_cut_ - new_cut;
    n_cut_ = new_cut;
    rep.highest_mode = n_cut_;
    rep.empty = (n_cut_ == 0);
    return rep;
}

void ModeBank::set_cutoff_index(std::size_t n_cut) {
    if (n_cut > n_max_) throw GridError("cutoff index beyond n_max");
    n_cut_ = n_cut;
}

double ModeBank::window_weight(std::size_t n) const {
    if (n == 0 || n > n_cut_) return 0.0;
    if (edge_fraction_ <= 0.0) return 1.0;
    auto edge_start = static_cast<std::size_t>(std::floor((1.0 - edge_fraction_) * static_cast<double>(n_cut_)));
    if (n <= edge_start || n_cut_ == edge_start) return 1.0;
    double u = static_cast<double>(n - edge_start) / static_cast<double>(n_cut_ - edge_start);
    return 0.5 * (1.0 + std::cos(std::numbers::pi * u));
}

double ModeBank::spectral_cutoff(std::size_t n) const {
    return std::exp(-0.5 * omega(n) * tau_c_);
}

void ModeBank::materialize(std::size_t up_to_n) const {
    if (up_to_n <= materialized_) return;
    if (up_to_n > n_max_) throw GridError("materialization request beyond n_max");
    for (auto& v : a_) v.resize(up_to_n);
    for (auto& v : b_) v.resize(up_to_n);
    for (auto& v : beta1_) v.resize(up_to_n);
    for (auto& v : beta2_) v.resize(up_to_n);
    for (std::size_t n = materialized_ + 1; n <= up_to_n; ++n) {
        auto st = rng::mode_stream(seed_, n);
        std::size_t idx = n - 1;
        double draws[draws_per_mode];
        rng::fill_gaussians(st, draws, draws_per_mode);
        for (int i = 0; i < 3; ++i) a_[i][idx] = draws[i];
        for (int i = 0; i < 3; ++i) b_[i][idx] = draws[3 + i];
        for (int ch = 0; ch < 8; ++ch) beta1_[ch][idx] = draws[6 + ch];
        for (int ch = 0; ch < 8; ++ch) beta2_[ch][idx] = draws[14 + ch];
    }
    materialized_ = up_to_n;
}

namespace {
constexpr char snapshot_magic[4] = {'S', 'E', 'D', 'B'};
constexpr std::uint32_t snapshot_version = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw GridError("truncated mode-bank snapshot");
    return v;
}
}  // namespace

void ModeBank::save_snapshot(std::ostream& out) const {
    out.write(snapshot_magic, 4);
    put(out, snapshot_version);
    put(out, seed_);
    put(out, grid_n_);
    put(out, static_cast<std::uint64_t>(n_max_));
    put(out, tau_c_);
    put(out, edge_fraction_);
    put(out, static_cast<std::uint64_t>(n_cut_));
    put(out, static_cast<std::uint64_t>(materialized_));
}

ModeBank ModeBank::load_snapshot(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, snapshot_magic, 4) != 0) {
        throw GridError("not a mode-bank snapshot");
    }
    auto version = get<std::uint32_t>(in);
    if (version != snapshot_version) throw GridError("unsupported mode-bank snapshot version");
    auto seed = get<std::uint64_t>(in);
    auto grid_n = get<double>(in);
    auto n_max = get<std::uint64_t>(in);
    auto tau_c = get<double>(in);
    auto edge = get<double>(in);
    auto n_cut = get<std::uint64_t>(in);
    auto high_water = get<std::uint64_t>(in);
    ModeBank bank(seed, grid_n, n_max, tau_c, edge);
    bank.set_cutoff_index(n_cut);
    if (high_water > 0) bank.materialize(high_water);
    return bank;
}

}  // namespace sedh
