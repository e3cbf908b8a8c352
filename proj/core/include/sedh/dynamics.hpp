#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sedh/field.hpp"
#include "sedh/mode_bank.hpp"
#include "sedh/rng.hpp"
#include "sedh/sampler.hpp"
#include "sedh/stats.hpp"
#include "sedh/units.hpp"
#include "sedh/vec3.hpp"

namespace sedh {

/// Ablation switches for the individual force terms.
struct Toggles {
    bool damping = true;
    bool noise = true;
    bool magnetic = true;
    bool p4 = true;
    bool spin_orbit = true;

    HamiltonianTerms hamiltonian_terms() const { return {p4, spin_orbit}; }
};

struct RunConfig {
    double z = 3.0;
    double alpha = 1.0 / 137.036;

    double grid_n = 1e4;          // frequency grid denominator, w_n = n / grid_n
    double omega_max = 36.742346141747674;  // top of grid; default headroom 2.5 * wK(E = -3)

    double cutoff_multiplier = 2.5;
    double period_update_threshold = 0.20;
    int steps_per_orbit = 4000;
    double samples_per_mode_period = 27.0;
    double window_edge_fraction = 0.0;  // raised-cosine taper of the window edge, off by default

    double push_threshold = -1.6;
    double push_target = -1.0;
    double ionisation_threshold = -0.05;
    double t_end = 1e5;
    double singularity_floor = 1e-6;

    std::uint64_t seed = 1;
    int sample_stride = 100;          // time-series rows: one per this many steps
    double checkpoint_interval = 0.0; // tau0 units; 0 = final checkpoint only
    int ensemble = 1;

    Vec3 r0{1.0, 0.0, 0.0};
    Vec3 v0{0.0, 1.0, 0.0};
    std::optional<Vec3> spin0;  // direction only; |S| is fixed. Random when unset.

    Toggles toggles;

    PhysicalParams params() const { return PhysicalParams::make(z, alpha); }
    void validate() const;  // throws std::invalid_argument with the offending field
};

enum class EventType : std::uint8_t {
    window_init = 0,
    cutoff_update = 1,
    push = 2,
    ionisation = 3,
    singularity_abort = 4,
    grid_span_exceeded = 5,
};

struct Event {
    EventType type;
    double t = 0.0;
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;  // payload, semantics per type
};

std::string event_type_name(EventType t);

/// Ordered event records; timestamps are non-decreasing by construction.
class EventLog {
public:
    void append(Event ev);
    const std::vector<Event>& events() const { return events_; }
    std::size_t count(EventType t) const;

private:
    std::vector<Event> events_;
};

/// Conservative + stochastic acceleration. The third-derivative damping term
/// is order-reduced: beta^2 d/dt(-r/r^3) evaluated analytically, which keeps
/// the equation second order and free of runaway solutions.
Vec3 acceleration(const ElectronState& st, const FieldSample& field, const PhysicalParams& p,
                  const Toggles& tg, double r_floor = 1e-6);

Vec3 spin_derivative(const ElectronState& st, const PhysicalParams& p, double r_floor = 1e-6);

/// Classical RK4 advancing (r, v, S) jointly. The field source is any
/// callable (const Vec3& r, double t) -> FieldSample queried at stage times.
template <class FieldSource>
ElectronState rk4_step(const ElectronState& st, FieldSource&& field, const PhysicalParams& p,
                       const Toggles& tg, double h, double r_floor = 1e-6) {
    struct Deriv {
        Vec3 dr, dv, ds;
    };
    auto eval = [&](const ElectronState& s) -> Deriv {
        return {s.v, acceleration(s, field(s.r, s.t), p, tg, r_floor),
                spin_derivative(s, p, r_floor)};
    };
    auto advance = [](const ElectronState& s, const Deriv& d, double dt) -> ElectronState {
        return {s.r + dt * d.dr, s.v + dt * d.dv, s.s + dt * d.ds, s.t + dt};
    };
    Deriv k1 = eval(st);
    Deriv k2 = eval(advance(st, k1, 0.5 * h));
    Deriv k3 = eval(advance(st, k2, 0.5 * h));
    Deriv k4 = eval(advance(st, k3, h));
    ElectronState out;
    out.r = st.r + (h / 6.0) * (k1.dr + 2.0 * k2.dr + 2.0 * k3.dr + k4.dr);
    out.v = st.v + (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    out.s = st.s + (h / 6.0) * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
    out.t = st.t + h;
    return out;
}

struct PushOutcome {
    ElectronState state;
    bool parallel = false;
    double magnitude = 0.0;
};

/// Velocity kick restoring the energy to push_target: with probability 1/2
/// along the velocity, otherwise along a uniformly random direction
/// perpendicular to it (isotropic when v = 0). Kick size is root-solved so
/// the post-push energy equals the target to relative 1e-12.
PushOutcome energy_push(const ElectronState& st, const PhysicalParams& p, HamiltonianTerms terms,
                        double push_target, const rng::Stream& stream, std::uint64_t push_index);

enum class StopReason { reached_t_end = 0, ionised = 1, aborted = 2 };

struct TrajectorySummary {
    double t_total = 0.0;
    double n_orbit = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t pushes = 0;
    std::uint64_t cutoff_updates = 0;
    bool ionised = false;
    ElectronState final_state;
    Histogram energy_hist;
    Histogram radius_hist;
};

/// Everything a resumed run needs to continue bit-identically.
struct TrajectoryProgress {
    ElectronState state;
    std::uint64_t steps = 0;
    double orbit_accum = 0.0;
    std::uint64_t push_count = 0;
    std::uint64_t cutoff_updates = 0;
    bool grid_warned = false;
    std::uint64_t window_cutoff = 0;
    double period_ref = 0.0;
    CoefficientSampler::Phase sampler;
    std::uint64_t rows_emitted = 0;
    Histogram energy_hist;
    Histogram radius_hist;
    std::vector<Event> events;
};

struct TimeSeriesRow {
    double t, energy, radius, l_norm, l_z, s_norm, omega_k;
    std::uint64_t window_modes;
};

struct TrajectorySinks {
    std::function<void(const TimeSeriesRow&)> row;
    std::function<void(const Event&)> event;
    std::function<void(const TrajectoryProgress&)> checkpoint;
};

class Trajectory {
public:
    explicit Trajectory(const RunConfig& cfg);

    void init();
    void resume(const TrajectoryProgress& progress);

    StopReason run(const TrajectorySinks& sinks = {});

    TrajectoryProgress progress() const;
    TrajectorySummary summary() const;
    const EventLog& events() const { return events_; }
    const ElectronState& state() const { return state_; }
    const ModeBank& bank() const { return bank_; }

private:
    void refresh_window(double omega_k, bool initial, const TrajectorySinks& sinks);
    FieldSample sample_field(const Vec3& r, double t);
    void emit_event(Event ev, const TrajectorySinks& sinks);

    RunConfig cfg_;
    PhysicalParams params_;
    ModeBank bank_;
    CoefficientSampler sampler_;
    EventLog events_;
    ElectronState state_;

    std::uint64_t steps_ = 0;
    double orbit_accum_ = 0.0;
    std::uint64_t push_count_ = 0;
    std::uint64_t cutoff_updates_ = 0;
    bool grid_warned_ = false;
    double period_ref_ = 0.0;
    std::uint64_t rows_emitted_ = 0;
    double next_checkpoint_ = 0.0;
    bool ionised_ = false;
    Histogram energy_hist_;
    Histogram radius_hist_;
};

}  // namespace sedh
