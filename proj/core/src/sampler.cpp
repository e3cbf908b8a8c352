#include "sedh/sampler.hpp"

#include <cmath>
#include <numbers>

namespace sedh {

CoefficientSampler::CoefficientSampler(const ModeBank& bank, double samples_per_mode_period,
                                       bool with_a)
    : bank_(bank), spp_(samples_per_mode_period), with_a_(with_a) {
    if (spp_ < 25.0) {
        throw std::invalid_argument("coefficient sampler needs >= 25 samples per mode period");
    }
}

double CoefficientSampler::segment_delta(double fallback_period) const {
    std::size_t n_cut = bank_.cutoff_index();
    double period = (n_cut == 0) ? fallback_period
                                 : 2.0 * std::numbers::pi / bank_.omega(n_cut);
    return period / spp_;
}

void CoefficientSampler::start_segment(double t_start, double delta) {
    n_cut_ = bank_.cutoff_index();
    if (n_cut_ > 0) {
        double mode_period = 2.0 * std::numbers::pi / bank_.omega(n_cut_);
        if (delta > mode_period / 25.0 * (1.0 + 1e-12)) {
            throw std::invalid_argument("sampler grid undersamples the highest windowed mode");
        }
        bank_.materialize(n_cut_);
    }
    t_segment_ = t_start;
    delta_ = delta;
    next_index_ = 0;
    ring_.clear();
    ring_first_ = 0;
    active_ = true;

    cos_.assign(n_cut_, 0.0);
    sin_.assign(n_cut_, 0.0);
    rot_cos_.assign(n_cut_, 0.0);
    rot_sin_.assign(n_cut_, 0.0);
    for (std::size_t n = 1; n <= n_cut_; ++n) {
        double w = bank_.omega(n);
        rot_cos_[n - 1] = std::cos(w * delta_);
        rot_sin_[n - 1] = std::sin(w * delta_);
    }
    // three samples make the first queries (stencil clamped) resolvable
    for (int k = 0; k < warmup + 1; ++k) append_sample();
}

void CoefficientSampler::append_sample() {
    const double t = sample_time(next_index_);
    const bool at_anchor = (next_index_ % anchor_interval) == 0;

    FieldCoefficients acc;
    if (n_cut_ > 0) {
        const double dw = 1.0 / bank_.grid_n();
        const double inv_pi = 1.0 / std::numbers::pi;
        const double* a[3] = {bank_.a_data(0), bank_.a_data(1), bank_.a_data(2)};
        const double* b[3] = {bank_.b_data(0), bank_.b_data(1), bank_.b_data(2)};
        const double* b1[8];
        const double* b2[8];
        for (int ch = 0; ch < 8; ++ch) {
            b1[ch] = bank_.beta1_data(ch);
            b2[ch] = bank_.beta2_data(ch);
        }
        double* cs = cos_.data();
        double* sn = sin_.data();
        const double* rc = rot_cos_.data();
        const double* rs = rot_sin_.data();

        for (std::size_t idx = 0; idx < n_cut_; ++idx) {
            double omega = bank_.omega(idx + 1);
            double c, s;
            if (at_anchor) {
                c = std::cos(omega * t);
                s = std::sin(omega * t);
            } else {
                c = cs[idx] * rc[idx] - sn[idx] * rs[idx];
                s = sn[idx] * rc[idx] + cs[idx] * rs[idx];
            }
            cs[idx] = c;
            sn[idx] = s;
            double amp1 = std::sqrt(dw * omega * inv_pi) * bank_.spectral_cutoff(idx + 1) *
                          bank_.window_weight(idx + 1);
            double av[3] = {a[0][idx], a[1][idx], a[2][idx]};
            double bv[3] = {b[0][idx], b[1][idx], b[2][idx]};
            double c1[8], c2[8];
            for (int ch = 0; ch < 8; ++ch) {
                c1[ch] = b1[ch][idx];
                c2[ch] = b2[ch][idx];
            }
            detail::accumulate_mode(omega, amp1, c, s, av, bv, c1, c2, acc, with_a_);
        }
    }

    ring_.push_back(acc);
    ++next_index_;
    if (ring_.size() > ring_keep) {
        ring_.erase(ring_.begin(), ring_.begin() + (ring_.size() - ring_keep));
        ring_first_ = next_index_ - ring_keep;
    }
}

void CoefficientSampler::extend_to(double t) {
    if (!active_) throw ExtrapolationError("sampler has no active segment");
    while (next_index_ < 5 || sample_time(next_index_ - 1) - lookahead * delta_ < t) {
        append_sample();
    }
}

FieldCoefficients CoefficientSampler::interpolate(double t) const {
    if (!active_ || next_index_ < 5) {
        throw ExtrapolationError("sampler span does not cover the query");
    }
    double pos = (t - sample_time(ring_first_)) / delta_;
    auto j0 = static_cast<long long>(std::floor(pos)) - 2;
    long long max0 = static_cast<long long>(next_index_ - ring_first_) - 5;
    if (j0 < 0) {
        if (pos < -1e-9) throw ExtrapolationError("query before the sampled span");
        j0 = 0;
    }
    if (j0 > max0) {
        if (pos > static_cast<double>(max0 + 4) + 1e-9) {
            throw ExtrapolationError("query past the sampled span");
        }
        j0 = max0;
    }
    double u = pos - static_cast<double>(j0);

    double w[5];
    for (int m = 0; m < 5; ++m) {
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            if (k != m) p *= (u - k) / (m - k);
        }
        w[m] = p;
    }

    FieldCoefficients out;
    const std::size_t base = static_cast<std::size_t>(j0);
    for (int m = 0; m < 5; ++m) {
        const FieldCoefficients& smp = ring_[base + m];
        const double wm = w[m];
        for (int i = 0; i < 3; ++i) {
            out.a0[i] += wm * smp.a0[i];
            out.a2[i] += wm * smp.a2[i];
            out.e0[i] += wm * smp.e0[i];
            out.e2[i] += wm * smp.e2[i];
            out.g[i] += wm * smp.g[i];
            out.f2[i] += wm * smp.f2[i];
        }
        for (int ch = 0; ch < 8; ++ch) {
            out.a1[ch] += wm * smp.a1[ch];
            out.e1[ch] += wm * smp.e1[ch];
        }
    }
    return out;
}

CoefficientSampler::Phase CoefficientSampler::phase() const {
    return {t_segment_, delta_, next_index_};
}

void CoefficientSampler::restore(const Phase& ph) {
    start_segment(ph.t_segment, ph.delta);
    if (ph.next_index <= next_index_) return;
    // Replay only the retained tail, starting at the anchor that governs it;
    // anchors sit at absolute indices, so every regenerated sample matches
    // the original stream exactly.
    std::uint64_t first_needed =
        ph.next_index > ring_keep ? ph.next_index - ring_keep : 0;
    std::uint64_t anchor = (first_needed / anchor_interval) * anchor_interval;
    if (anchor > next_index_) {
        ring_.clear();
        next_index_ = anchor;
        ring_first_ = anchor;
    }
    while (next_index_ < ph.next_index) append_sample();
}

}  // namespace sedh
