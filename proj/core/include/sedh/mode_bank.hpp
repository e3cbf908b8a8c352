#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "sedh/rng.hpp"

namespace sedh {

class GridError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WindowReport {
    std::size_t entered = 0;
    std::size_t left = 0;
    std::size_t highest_mode = 0;  // 1-based index of highest admitted mode, 0 if none
    bool empty = true;
};

/// One realization of the stochastic field: the frequency grid w_n = n/N and
/// the Gaussian draws attached to each mode (3 sine + 3 cosine vector
/// components and two sets of 8 channel coefficients for the linear-in-r
/// term). Draws are a pure function of (seed, n), materialized lazily, so a
/// bank can span millions of modes while only admitted ones cost memory, and
/// enlarging n_max extends rather than reshuffles the realization.
///
/// The moving cutoff is a multiplicative window over this immutable
/// realization: updates change membership only, never coefficient values.
class ModeBank {
public:
    /// Gaussian draw layout within a mode's stream.
    static constexpr std::uint64_t draws_per_mode = 22;

    ModeBank(std::uint64_t seed, double grid_n, std::size_t n_max, double tau_c,
             double edge_fraction = 0.0);

    double grid_n() const { return grid_n_; }
    std::size_t n_max() const { return n_max_; }
    double tau_c() const { return tau_c_; }
    std::uint64_t seed() const { return seed_; }
    double omega_max() const { return static_cast<double>(n_max_) / grid_n_; }
    double omega(std::size_t n) const { return static_cast<double>(n) / grid_n_; }

    /// Admit modes with w_n <= multiplier * omega_k. Throws GridError when the
    /// requested cutoff exceeds the top of the frequency grid.
    WindowReport update_window(double omega_k, double multiplier);

    std::size_t cutoff_index() const { return n_cut_; }
    void set_cutoff_index(std::size_t n_cut);  // checkpoint restore path
    double edge_fraction() const { return edge_fraction_; }

    /// Window multiplier for mode n (1-based): 1 inside, raised-cosine taper
    /// over the top edge_fraction of admitted modes when enabled, 0 outside.
    double window_weight(std::size_t n) const;

    /// Amplitude-level spectral cutoff W(w) = exp(-w tau_c / 2).
    double spectral_cutoff(std::size_t n) const;

    void materialize(std::size_t up_to_n) const;
    std::size_t materialized() const { return materialized_; }

    // Coefficient accessors (1-based mode index; materializes on demand).
    double a(std::size_t n, int i) const { materialize(n); return a_[i][n - 1]; }
    double b(std::size_t n, int i) const { materialize(n); return b_[i][n - 1]; }
    double beta1(std::size_t n, int ch) const { materialize(n); return beta1_[ch][n - 1]; }
    double beta2(std::size_t n, int ch) const { materialize(n); return beta2_[ch][n - 1]; }

    // Raw SoA access for the accumulation kernels.
    const double* a_data(int i) const { return a_[i].data(); }
    const double* b_data(int i) const { return b_[i].data(); }
    const double* beta1_data(int ch) const { return beta1_[ch].data(); }
    const double* beta2_data(int ch) const { return beta2_[ch].data(); }

    /// Versioned snapshot of identity + window state. Coefficients are not
    /// stored; they regenerate deterministically.
    void save_snapshot(std::ostream& out) const;
    static ModeBank load_snapshot(std::istream& in);

private:
    std::uint64_t seed_;
    double grid_n_;
    std::size_t n_max_;
    double tau_c_;
    double edge_fraction_;
    std::size_t n_cut_ = 0;

    mutable std::vector<double> a_[3], b_[3], beta1_[8], beta2_[8];
    mutable std::size_t materialized_ = 0;
};

}  // namespace sedh
