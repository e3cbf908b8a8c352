#include "sedh/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace sedh {

void RunConfig::validate() const {
    if (!(push_threshold < push_target)) {
        throw std::invalid_argument("push_threshold must lie below push_target");
    }
    if (!(push_target < ionisation_threshold)) {
        throw std::invalid_argument("push_target must lie below ionisation_threshold");
    }
    if (!(ionisation_threshold < 0.0)) {
        throw std::invalid_argument("ionisation_threshold must be negative");
    }
    if (steps_per_orbit < 100) throw std::invalid_argument("steps_per_orbit must be >= 100");
    if (samples_per_mode_period < 25.0) {
        throw std::invalid_argument("samples_per_mode_period must be >= 25");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    if (grid_n < 1.0) throw std::invalid_argument("grid_n must be >= 1");
    if (omega_max <= 0.0) throw std::invalid_argument("omega_max must be positive");
    if (t_end <= 0.0) throw std::invalid_argument("t_end must be positive");
    if (sample_stride < 1) throw std::invalid_argument("sample_stride must be >= 1");
    if (ensemble < 1) throw std::invalid_argument("ensemble must be >= 1");
    if (window_edge_fraction < 0.0 || window_edge_fraction > 0.5) {
        throw std::invalid_argument("window_edge_fraction must lie in [0, 0.5]");
    }
}

std::string event_type_name(EventType t) {
    switch (t) {
        case EventType::window_init: return "window_init";
        case EventType::cutoff_update: return "cutoff_update";
        case EventType::push: return "push";
        case EventType::ionisation: return "ionisation";
        case EventType::singularity_abort: return "singularity_abort";
        case EventType::grid_span_exceeded: return "grid_span_exceeded";
    }
    return "unknown";
}

void EventLog::append(Event ev) {
    if (!events_.empty() && ev.t < events_.back().t) {
        throw std::logic_error("event timestamps must be non-decreasing");
    }
    events_.push_back(ev);
}

std::size_t EventLog::count(EventType t) const {
    std::size_t n = 0;
    for (const auto& ev : events_) {
        if (ev.type == t) ++n;
    }
    return n;
}

Vec3 acceleration(const ElectronState& st, const FieldSample& field, const PhysicalParams& p,
                  const Toggles& tg, double r_floor) {
    double rn = norm(st.r);
    if (rn < r_floor) throw SingularPositionError(rn);
    double rn3 = rn * rn * rn;
    double rv = dot(st.r, st.v);

    Vec3 a = (-1.0 / rn3) * st.r;

    if (tg.noise) {
        Vec3 drive = field.e;
        if (tg.magnetic) drive += field.lorentz(st.v);
        a -= p.beta * drive;
    }
    if (tg.damping) {
        a += (p.beta * p.beta) * ((-1.0 / rn3) * st.v + (3.0 * rv / (rn3 * rn * rn)) * st.r);
    }
    if (tg.p4) {
        a += (p.za2 / (2.0 * rn3)) * (norm2(st.v) * st.r + 2.0 * rv * st.v);
    }
    if (tg.spin_orbit) {
        Vec3 l = cross(st.r, st.v);
        a += (p.za2 / (2.0 * rn3)) *
             (cross(st.s, st.v) - (3.0 * rv / (rn * rn)) * cross(st.s, st.r) +
              (3.0 * dot(st.s, l) / (rn * rn)) * st.r);
    }
    return a;
}

Vec3 spin_derivative(const ElectronState& st, const PhysicalParams& p, double r_floor) {
    double rn = norm(st.r);
    if (rn < r_floor) throw SingularPositionError(rn);
    return (p.za2 / (2.0 * rn * rn * rn)) * cross(angular_momentum(st), st.s);
}

PushOutcome energy_push(const ElectronState& st, const PhysicalParams& p, HamiltonianTerms terms,
                        double push_target, const rng::Stream& stream, std::uint64_t push_index) {
    // fixed draw budget per push keeps the stream position a pure function
    // of the push count
    std::uint64_t base = 4 * push_index;
    double u_branch = stream.uniform(base);
    double u_angle = stream.uniform(base + 1);
    double u_iso = stream.uniform(base + 2);

    double vn = norm(st.v);
    PushOutcome out;
    Vec3 dir;
    if (vn < 1e-14) {
        double cz = 2.0 * u_iso - 1.0;
        double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
        double phi = 2.0 * std::numbers::pi * u_angle;
        dir = {sz * std::cos(phi), sz * std::sin(phi), cz};
        out.parallel = false;
    } else if (u_branch < 0.5) {
        dir = st.v / vn;
        out.parallel = true;
    } else {
        Vec3 e1 = any_orthogonal(st.v);
        Vec3 e2 = normalized(cross(st.v / vn, e1));
        double phi = 2.0 * std::numbers::pi * u_angle;
        dir = std::cos(phi) * e1 + std::sin(phi) * e2;
        out.parallel = false;
    }

    auto energy_at = [&](double s) {
        ElectronState trial = st;
        trial.v = st.v + s * dir;
        return hamiltonian(trial, p, terms);
    };

    // the kick energy grows monotonically with s on both branches
    double s_hi = std::max(1e-3, 0.1 * vn);
    int guard = 0;
    while (energy_at(s_hi) < push_target && guard++ < 200) s_hi *= 2.0;
    double s_lo = 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (s_lo + s_hi);
        if (energy_at(mid) < push_target) {
            s_lo = mid;
        } else {
            s_hi = mid;
        }
        if (s_hi - s_lo <= 1e-16 * s_hi) break;
    }
    out.magnitude = 0.5 * (s_lo + s_hi);
    out.state = st;
    out.state.v = st.v + out.magnitude * dir;
    return out;
}

Trajectory::Trajectory(const RunConfig& cfg)
    : cfg_(cfg),
      params_(cfg.params()),
      bank_(cfg.seed, cfg.grid_n,
            static_cast<std::size_t>(std::ceil(cfg.omega_max * cfg.grid_n)), params_.tau_c,
            cfg.window_edge_fraction),
      sampler_(bank_, cfg.samples_per_mode_period, /*with_a=*/false),
      energy_hist_(-4.0, 0.0, 100),
      radius_hist_(0.0, 6.0, 100) {
    cfg_.validate();
}

void Trajectory::emit_event(Event ev, const TrajectorySinks& sinks) {
    events_.append(ev);
    if (sinks.event) sinks.event(ev);
}

void Trajectory::refresh_window(double omega_k, bool initial, const TrajectorySinks& sinks) {
    WindowReport rep = bank_.update_window(omega_k, cfg_.cutoff_multiplier);
    double fallback_period = 2.0 * std::numbers::pi / (cfg_.cutoff_multiplier * omega_k);
    sampler_.start_segment(state_.t, sampler_.segment_delta(fallback_period));
    Event ev;
    ev.type = initial ? EventType::window_init : EventType::cutoff_update;
    ev.t = state_.t;
    ev.a = cfg_.cutoff_multiplier * omega_k;
    ev.b = static_cast<double>(rep.entered);
    ev.c = static_cast<double>(rep.left);
    ev.d = static_cast<double>(rep.highest_mode);
    emit_event(ev, sinks);
    if (!initial) ++cutoff_updates_;
}

FieldSample Trajectory::sample_field(const Vec3& r, double t) {
    FieldCoefficients co = sampler_.interpolate(t);
    double zalpha = params_.z * params_.alpha;
    return {assemble_e(co, r, zalpha), assemble_f(co, r, zalpha)};
}

void Trajectory::init() {
    state_.r = cfg_.r0;
    state_.v = cfg_.v0;
    state_.t = 0.0;
    Vec3 spin_dir;
    if (cfg_.spin0) {
        spin_dir = normalized(*cfg_.spin0);
    } else {
        auto st = rng::stream(cfg_.seed, rng::Domain::spin_init);
        double cz = 2.0 * st.uniform(0) - 1.0;
        double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
        double phi = 2.0 * std::numbers::pi * st.uniform(1);
        spin_dir = {sz * std::cos(phi), sz * std::sin(phi), cz};
    }
    state_.s = spin_magnitude * spin_dir;

    steps_ = 0;
    orbit_accum_ = 0.0;
    push_count_ = 0;
    cutoff_updates_ = 0;
    grid_warned_ = false;
    rows_emitted_ = 0;
    ionised_ = false;
    period_ref_ = 0.0;
    next_checkpoint_ = cfg_.checkpoint_interval;
    energy_hist_ = Histogram(-4.0, 0.0, 100);
    radius_hist_ = Histogram(0.0, 6.0, 100);
}

void Trajectory::resume(const TrajectoryProgress& pr) {
    init();
    state_ = pr.state;
    steps_ = pr.steps;
    orbit_accum_ = pr.orbit_accum;
    push_count_ = pr.push_count;
    cutoff_updates_ = pr.cutoff_updates;
    grid_warned_ = pr.grid_warned;
    rows_emitted_ = pr.rows_emitted;
    period_ref_ = pr.period_ref;
    energy_hist_.restore_raw(pr.energy_hist.raw());
    radius_hist_.restore_raw(pr.radius_hist.raw());
    for (const auto& ev : pr.events) events_.append(ev);
    if (cfg_.checkpoint_interval > 0.0) {
        next_checkpoint_ =
            (std::floor(state_.t / cfg_.checkpoint_interval) + 1.0) * cfg_.checkpoint_interval;
    }
    if (cfg_.toggles.noise) {
        bank_.set_cutoff_index(pr.window_cutoff);
        sampler_.restore(pr.sampler);
    }
}

TrajectoryProgress Trajectory::progress() const {
    TrajectoryProgress pr;
    pr.state = state_;
    pr.steps = steps_;
    pr.orbit_accum = orbit_accum_;
    pr.push_count = push_count_;
    pr.cutoff_updates = cutoff_updates_;
    pr.grid_warned = grid_warned_;
    pr.window_cutoff = bank_.cutoff_index();
    pr.period_ref = period_ref_;
    pr.sampler = sampler_.phase();
    pr.rows_emitted = rows_emitted_;
    pr.energy_hist = energy_hist_;
    pr.radius_hist = radius_hist_;
    pr.events = events_.events();
    return pr;
}

TrajectorySummary Trajectory::summary() const {
    TrajectorySummary s;
    s.t_total = state_.t;
    s.n_orbit = orbit_accum_;
    s.steps = steps_;
    s.pushes = push_count_;
    s.cutoff_updates = cutoff_updates_;
    s.ionised = ionised_;
    s.final_state = state_;
    s.energy_hist = energy_hist_;
    s.radius_hist = radius_hist_;
    return s;
}

StopReason Trajectory::run(const TrajectorySinks& sinks) {
    auto push_stream = rng::stream(cfg_.seed, rng::Domain::push);
    const double two_pi = 2.0 * std::numbers::pi;
    const bool fresh = (steps_ == 0 && period_ref_ == 0.0);

    try {
        double energy = hamiltonian(state_, params_, cfg_.toggles.hamiltonian_terms(),
                                    cfg_.singularity_floor);
        if (cfg_.toggles.noise && fresh) {
            refresh_window(kepler_frequency(energy), /*initial=*/true, sinks);
            period_ref_ = two_pi / kepler_frequency(energy);
        }

        while (true) {
            energy = hamiltonian(state_, params_, cfg_.toggles.hamiltonian_terms(),
                                 cfg_.singularity_floor);
            if (energy > cfg_.ionisation_threshold) {
                Event ev{EventType::ionisation, state_.t, energy};
                emit_event(ev, sinks);
                ionised_ = true;
                return StopReason::ionised;
            }

            double omega_k = kepler_frequency(energy);
            double period = two_pi / omega_k;
            if (cfg_.toggles.noise &&
                std::fabs(period - period_ref_) > cfg_.period_update_threshold * period_ref_) {
                refresh_window(omega_k, /*initial=*/false, sinks);
                period_ref_ = period;
            }

            double h = period / static_cast<double>(cfg_.steps_per_orbit);
            double radius = norm(state_.r);

            if (cfg_.toggles.noise) {
                sampler_.extend_to(state_.t + h);
                state_ = rk4_step(
                    state_, [this](const Vec3& r, double t) { return sample_field(r, t); },
                    params_, cfg_.toggles, h, cfg_.singularity_floor);
            } else {
                state_ = rk4_step(
                    state_, [](const Vec3&, double) { return FieldSample{}; }, params_,
                    cfg_.toggles, h, cfg_.singularity_floor);
            }
            ++steps_;
            orbit_accum_ += 1.0 / static_cast<double>(cfg_.steps_per_orbit);
            energy_hist_.add(energy, h);
            radius_hist_.add(radius, h);

            double post_energy = hamiltonian(state_, params_, cfg_.toggles.hamiltonian_terms(),
                                             cfg_.singularity_floor);
            if (post_energy < cfg_.push_threshold) {
                PushOutcome push = energy_push(state_, params_, cfg_.toggles.hamiltonian_terms(),
                                               cfg_.push_target, push_stream, push_count_);
                ++push_count_;
                Event ev{EventType::push, state_.t, post_energy, cfg_.push_target,
                         push.parallel ? 1.0 : 0.0, push.magnitude};
                emit_event(ev, sinks);
                state_ = push.state;
                post_energy = cfg_.push_target;
            }

            if (!grid_warned_ && state_.t > cfg_.grid_n) {
                grid_warned_ = true;
                Event ev{EventType::grid_span_exceeded, state_.t, cfg_.grid_n};
                emit_event(ev, sinks);
            }

            if (steps_ % static_cast<std::uint64_t>(cfg_.sample_stride) == 0) {
                Vec3 l = angular_momentum(state_);
                TimeSeriesRow row{state_.t,
                                  post_energy,
                                  norm(state_.r),
                                  norm(l),
                                  l.z,
                                  norm(state_.s),
                                  post_energy < 0.0 ? kepler_frequency(post_energy) : 0.0,
                                  bank_.cutoff_index()};
                ++rows_emitted_;
                if (sinks.row) sinks.row(row);
            }

            if (cfg_.checkpoint_interval > 0.0 && state_.t >= next_checkpoint_) {
                next_checkpoint_ += cfg_.checkpoint_interval;
                if (sinks.checkpoint) sinks.checkpoint(progress());
            }

            if (state_.t >= cfg_.t_end) return StopReason::reached_t_end;
        }
    } catch (const SingularPositionError& err) {
        Event ev{EventType::singularity_abort, state_.t, err.radius};
        emit_event(ev, sinks);
        return StopReason::aborted;
    }
}

}  // namespace sedh
