#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sedh/field.hpp"
#include "sedh/mode_bank.hpp"

namespace sedh {

class ExtrapolationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluates the exact coefficient sums on a coarse uniform time grid and
/// serves intermediate times through 5-point Lagrange interpolation. The
/// coarse grid is tied to the highest windowed mode (>= 25 samples per its
/// period); the integrator takes many steps per coarse sample.
///
/// Per-mode phases advance by rotation between samples and are re-seeded
/// from sin/cos at every 64th sample, so the sample stream is a pure
/// function of (bank, segment start, delta, index) and a resumed run
/// reproduces it bit for bit.
class CoefficientSampler {
public:
    struct Phase {
        double t_segment = 0.0;
        double delta = 0.0;
        std::uint64_t next_index = 0;  // samples generated so far in this segment
    };

    static constexpr int anchor_interval = 64;
    static constexpr int warmup = 2;     // samples placed before the segment start
    static constexpr int lookahead = 2;  // stencil reach past the query
    static constexpr std::size_t ring_keep = 24;

    CoefficientSampler(const ModeBank& bank, double samples_per_mode_period,
                       bool with_a = false);

    /// Begin a fresh segment at trajectory time t_start with grid spacing
    /// delta. Throws if delta undersamples the highest admitted mode.
    void start_segment(double t_start, double delta);

    /// Grid spacing honouring the configured samples-per-period for the
    /// current window (fallback_period is used when the window is empty).
    double segment_delta(double fallback_period) const;

    /// Generate samples until queries up to time t are interpolable.
    void extend_to(double t);

    /// 5-point Lagrange interpolation of every channel. Queries must lie
    /// within the generated span; extrapolation throws.
    FieldCoefficients interpolate(double t) const;

    double delta() const { return delta_; }
    double samples_per_mode_period() const { return spp_; }
    bool segment_active() const { return active_; }

    Phase phase() const;
    /// Rebuild the ring for a checkpointed segment; the replayed samples are
    /// bit-identical to the ones the uninterrupted run held.
    void restore(const Phase& ph);

private:
    void append_sample();
    double sample_time(std::uint64_t index) const {
        return t_segment_ + (static_cast<double>(index) - warmup) * delta_;
    }

    const ModeBank& bank_;
    double spp_;
    bool with_a_;
    bool active_ = false;

    double t_segment_ = 0.0;
    double delta_ = 0.0;
    std::size_t n_cut_ = 0;

    std::vector<double> cos_, sin_, rot_cos_, rot_sin_;
    std::uint64_t next_index_ = 0;

    std::vector<FieldCoefficients> ring_;
    std::uint64_t ring_first_ = 0;
};

}  // namespace sedh
