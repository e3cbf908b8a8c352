#include "sedh/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace sedh {

namespace {

constexpr char magic[4] = {'S', 'E', 'D', 'H'};
constexpr std::uint32_t format_version = 1;

struct Writer {
    std::ostream& out;
    void u32(std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); }
    void u64(std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }
    void f64(double v) { out.write(reinterpret_cast<const char*>(&v), 8); }
    void vec(const Vec3& v) { f64(v.x); f64(v.y); f64(v.z); }
    void doubles(const std::vector<double>& vs) {
        u64(vs.size());
        for (double v : vs) f64(v);
    }
};

struct Reader {
    std::istream& in;
    template <typename T>
    T get() {
        T v;
        in.read(reinterpret_cast<char*>(&v), sizeof(T));
        if (!in) throw CheckpointError("checkpoint truncated");
        return v;
    }
    std::uint32_t u32() { return get<std::uint32_t>(); }
    std::uint64_t u64() { return get<std::uint64_t>(); }
    double f64() { return get<double>(); }
    Vec3 vec() { Vec3 v; v.x = f64(); v.y = f64(); v.z = f64(); return v; }
    std::vector<double> doubles() {
        auto n = u64();
        if (n > (1ull << 32)) throw CheckpointError("checkpoint field length implausible");
        std::vector<double> vs(n);
        for (auto& v : vs) v = f64();
        return vs;
    }
};

}  // namespace

void write_checkpoint(std::ostream& out, std::uint64_t config_hash, const TrajectoryProgress& pr) {
    Writer w{out};
    out.write(magic, 4);
    w.u32(format_version);
    w.u64(config_hash);

    w.vec(pr.state.r);
    w.vec(pr.state.v);
    w.vec(pr.state.s);
    w.f64(pr.state.t);
    w.u64(pr.steps);
    w.f64(pr.orbit_accum);
    w.u64(pr.push_count);
    w.u64(pr.cutoff_updates);
    w.u32(pr.grid_warned ? 1 : 0);
    w.u64(pr.window_cutoff);
    w.f64(pr.period_ref);
    w.f64(pr.sampler.t_segment);
    w.f64(pr.sampler.delta);
    w.u64(pr.sampler.next_index);
    w.u64(pr.rows_emitted);
    w.doubles(pr.energy_hist.raw());
    w.doubles(pr.radius_hist.raw());

    w.u64(pr.events.size());
    for (const auto& ev : pr.events) {
        w.u32(static_cast<std::uint32_t>(ev.type));
        w.f64(ev.t);
        w.f64(ev.a);
        w.f64(ev.b);
        w.f64(ev.c);
        w.f64(ev.d);
    }
}

TrajectoryProgress read_checkpoint(std::istream& in, std::uint64_t expected_config_hash) {
    char m[4];
    in.read(m, 4);
    if (!in || std::memcmp(m, magic, 4) != 0) throw CheckpointError("not a checkpoint file");
    Reader r{in};
    auto version = r.u32();
    if (version != format_version) {
        throw CheckpointError("unsupported checkpoint format version");
    }
    auto hash = r.u64();
    if (hash != expected_config_hash) {
        throw CheckpointError("checkpoint was produced by a different configuration");
    }

    TrajectoryProgress pr;
    pr.state.r = r.vec();
    pr.state.v = r.vec();
    pr.state.s = r.vec();
    pr.state.t = r.f64();
    pr.steps = r.u64();
    pr.orbit_accum = r.f64();
    pr.push_count = r.u64();
    pr.cutoff_updates = r.u64();
    pr.grid_warned = r.u32() != 0;
    pr.window_cutoff = r.u64();
    pr.period_ref = r.f64();
    pr.sampler.t_segment = r.f64();
    pr.sampler.delta = r.f64();
    pr.sampler.next_index = r.u64();
    pr.rows_emitted = r.u64();
    pr.energy_hist = Histogram(-4.0, 0.0, 100);
    pr.energy_hist.restore_raw(r.doubles());
    pr.radius_hist = Histogram(0.0, 6.0, 100);
    pr.radius_hist.restore_raw(r.doubles());

    auto n_events = r.u64();
    if (n_events > (1ull << 32)) throw CheckpointError("checkpoint event count implausible");
    pr.events.reserve(n_events);
    for (std::uint64_t i = 0; i < n_events; ++i) {
        Event ev;
        ev.type = static_cast<EventType>(r.u32());
        ev.t = r.f64();
        ev.a = r.f64();
        ev.b = r.f64();
        ev.c = r.f64();
        ev.d = r.f64();
        pr.events.push_back(ev);
    }
    return pr;
}

void write_checkpoint_file(const std::string& path, std::uint64_t config_hash,
                           const TrajectoryProgress& pr) {
    std::ostringstream buf;
    write_checkpoint(buf, config_hash, pr);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot open checkpoint file for writing: " + path);
    auto s = buf.str();
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!out) throw CheckpointError("failed writing checkpoint: " + path);
}

TrajectoryProgress read_checkpoint_file(const std::string& path,
                                        std::uint64_t expected_config_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint file: " + path);
    return read_checkpoint(in, expected_config_hash);
}

}  // namespace sedh
