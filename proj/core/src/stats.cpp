#include "sedh/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sedh/dynamics.hpp"
#include "sedh/units.hpp"

namespace sedh {

Histogram::Histogram(double lo, double hi, std::size_t bins) : lo_(lo), hi_(hi) {
    if (!(hi > lo) || bins == 0) throw std::invalid_argument("histogram needs hi > lo and bins >= 1");
    counts_.assign(bins, 0.0);
}

void Histogram::add(double x, double weight) {
    total_ += weight;
    if (x < lo_) {
        underflow_ += weight;
    } else if (x >= hi_) {
        overflow_ += weight;
    } else {
        auto i = static_cast<std::size_t>((x - lo_) / (hi_ - lo_) * static_cast<double>(counts_.size()));
        if (i >= counts_.size()) i = counts_.size() - 1;
        counts_[i] += weight;
    }
}

void Histogram::merge(const Histogram& other) {
    if (other.counts_.size() != counts_.size() || other.lo_ != lo_ || other.hi_ != hi_) {
        throw std::invalid_argument("histogram merge needs identical binning");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
    total_ += other.total_;
}

double Histogram::density(std::size_t i) const {
    if (total_ <= 0.0) return 0.0;
    return counts_[i] / (total_ * bin_width());
}

std::size_t Histogram::occupied() const {
    return static_cast<std::size_t>(std::count_if(counts_.begin(), counts_.end(),
                                                  [](double c) { return c > 0.0; }));
}

std::vector<double> Histogram::raw() const {
    std::vector<double> out(counts_);
    out.push_back(underflow_);
    out.push_back(overflow_);
    out.push_back(total_);
    return out;
}

void Histogram::restore_raw(const std::vector<double>& raw) {
    if (raw.size() != counts_.size() + 3) throw std::invalid_argument("histogram raw size mismatch");
    std::copy(raw.begin(), raw.begin() + static_cast<long>(counts_.size()), counts_.begin());
    underflow_ = raw[counts_.size()];
    overflow_ = raw[counts_.size() + 1];
    total_ = raw[counts_.size() + 2];
}

double conjecture_energy_pdf(double energy) {
    if (energy >= 0.0) throw std::domain_error("conjecture density is defined for E < 0");
    double mag = -energy;
    return 4.0 / (3.0 * std::pow(mag, 6.0)) * std::exp(-2.0 / mag);
}

double quantum_radial_pdf(double r) {
    if (r < 0.0) throw std::domain_error("radial density is defined for r >= 0");
    return 4.0 * r * r * std::exp(-2.0 * r);
}

NumericCdf::NumericCdf(std::function<double(double)> pdf, double lo, double hi, std::size_t cells)
    : lo_(lo), hi_(hi) {
    if (!(hi > lo) || cells == 0) throw std::invalid_argument("cdf needs hi > lo and cells >= 1");
    step_ = (hi - lo) / static_cast<double>(cells);
    cum_.assign(cells + 1, 0.0);
    double acc = 0.0;
    double f_left = pdf(lo);
    for (std::size_t i = 0; i < cells; ++i) {
        double a = lo_ + step_ * static_cast<double>(i);
        double f_mid = pdf(a + 0.5 * step_);
        double f_right = pdf(a + step_);
        acc += step_ / 6.0 * (f_left + 4.0 * f_mid + f_right);
        cum_[i + 1] = acc;
        f_left = f_right;
    }
    mass_ = acc;
    for (auto& c : cum_) c /= mass_;
    cum_.back() = 1.0;
}

double NumericCdf::cdf(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    double pos = (x - lo_) / step_;
    auto i = static_cast<std::size_t>(pos);
    if (i >= cum_.size() - 1) i = cum_.size() - 2;
    double frac = pos - static_cast<double>(i);
    return cum_[i] + frac * (cum_[i + 1] - cum_[i]);
}

double NumericCdf::quantile(double u) const {
    if (u <= 0.0) return lo_;
    if (u >= 1.0) return hi_;
    auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    auto i = static_cast<std::size_t>(std::distance(cum_.begin(), it));
    if (i == 0) return lo_;
    double c0 = cum_[i - 1], c1 = cum_[i];
    double frac = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.0;
    return lo_ + step_ * (static_cast<double>(i - 1) + frac);
}

double ks_distance(std::span<const double> samples, const NumericCdf& reference) {
    if (samples.empty()) throw std::invalid_argument("ks_distance needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double f = reference.cdf(sorted[i]);
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
    }
    return d;
}

double ks_distance_weighted(std::span<const double> samples, std::span<const double> weights,
                            const NumericCdf& reference) {
    if (samples.empty() || samples.size() != weights.size()) {
        throw std::invalid_argument("weighted ks_distance needs matching nonempty inputs");
    }
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return samples[a] < samples[b]; });
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) throw std::invalid_argument("weighted ks_distance needs positive weight");
    double cum = 0.0;
    double d = 0.0;
    for (std::size_t i : order) {
        double f = reference.cdf(samples[i]);
        d = std::max(d, std::fabs(cum / total - f));
        cum += weights[i];
        d = std::max(d, std::fabs(cum / total - f));
    }
    return d;
}

RunSummary make_run_summary(const TrajectorySummary& traj, const PhysicalParams& p) {
    RunSummary s;
    double tau0 = bohr_time_seconds(p);
    double beta2 = p.beta * p.beta;
    s.t_total = traj.t_total;
    s.t_total_seconds = traj.t_total * tau0;
    s.t_damp = 1.0 / beta2;
    s.t_damp_seconds = s.t_damp * tau0;
    s.n_orbit = traj.n_orbit;
    s.n_damp = traj.t_total * beta2;
    s.ionised = traj.ionised;
    s.pushes = traj.pushes;
    s.cutoff_updates = traj.cutoff_updates;
    return s;
}

}  // namespace sedh
