#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sedh {

/// Uniform-bin weighted histogram with under/overflow tracking. Merging is
/// plain per-bin addition, so ensemble aggregation commutes.
class Histogram {
public:
    Histogram() = default;
    Histogram(double lo, double hi, std::size_t bins);

    void add(double x, double weight = 1.0);
    void merge(const Histogram& other);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t bins() const { return counts_.size(); }
    double count(std::size_t i) const { return counts_[i]; }
    double underflow() const { return underflow_; }
    double overflow() const { return overflow_; }
    double total_weight() const { return total_; }
    double bin_width() const { return (hi_ - lo_) / static_cast<double>(counts_.size()); }
    double bin_lo(std::size_t i) const { return lo_ + bin_width() * static_cast<double>(i); }

    /// Normalized density of bin i; the in-range densities integrate to
    /// (in-range weight)/(total weight).
    double density(std::size_t i) const;

    /// Number of bins holding nonzero weight.
    std::size_t occupied() const;

    std::vector<double> raw() const;               // serialization order: counts, under, over, total
    void restore_raw(const std::vector<double>&);  // inverse of raw()

private:
    double lo_ = 0.0, hi_ = 1.0;
    std::vector<double> counts_;
    double underflow_ = 0.0, overflow_ = 0.0, total_ = 0.0;
};

/// Conjectured stationary energy density (4 / 3|E|^6) exp(-2/|E|), E < 0.
double conjecture_energy_pdf(double energy);

/// Ground-state radial density 4 r^2 exp(-2r), r >= 0.
double quantum_radial_pdf(double r);

/// Tabulated CDF of a pdf on [lo, hi] built by per-cell Simpson integration;
/// supports evaluation and inverse-transform sampling.
class NumericCdf {
public:
    NumericCdf(std::function<double(double)> pdf, double lo, double hi, std::size_t cells = 1 << 14);

    double cdf(double x) const;
    double quantile(double u) const;
    double total_mass() const { return mass_; }  // pre-normalization integral

private:
    double lo_, hi_, step_;
    double mass_ = 0.0;
    std::vector<double> cum_;  // cum_[i] = normalized CDF at lo + i*step
};

/// Kolmogorov-Smirnov distance between an empirical sample and a reference
/// CDF. Throws std::invalid_argument on empty input.
double ks_distance(std::span<const double> samples, const NumericCdf& reference);

/// Dwell-weighted variant: the empirical CDF steps by weight_i / sum(w).
double ks_distance_weighted(std::span<const double> samples, std::span<const double> weights,
                            const NumericCdf& reference);

struct RunSummary {
    double t_total = 0.0;        // tau0 units
    double t_total_seconds = 0.0;
    double t_damp = 0.0;         // 1/beta^2, tau0 units
    double t_damp_seconds = 0.0;
    double n_orbit = 0.0;
    double n_damp = 0.0;         // t_total * beta^2
    bool ionised = false;
    std::uint64_t pushes = 0;
    std::uint64_t cutoff_updates = 0;
};

struct TrajectorySummary;
struct PhysicalParams;
RunSummary make_run_summary(const TrajectorySummary& traj, const PhysicalParams& p);

}  // namespace sedh
