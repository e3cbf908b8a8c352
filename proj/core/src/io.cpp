#include "sedh/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace sedh {

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

struct TimeSeriesWriter::Impl {
    std::ofstream out;
};

TimeSeriesWriter::TimeSeriesWriter(const std::string& path, long long truncate_rows)
    : impl_(new Impl) {
    if (truncate_rows >= 0) {
        // keep header + truncate_rows rows, then continue appending
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot reopen time series: " + path);
        std::vector<std::string> keep;
        std::string line;
        while (std::getline(in, line) &&
               keep.size() < static_cast<std::size_t>(truncate_rows) + 1) {
            keep.push_back(line);
        }
        in.close();
        if (keep.empty() || keep[0] != header) {
            throw std::runtime_error("time series file lacks the expected header: " + path);
        }
        std::ofstream rewrite(path, std::ios::trunc);
        for (const auto& l : keep) rewrite << l << "\n";
        rewrite.close();
        impl_->out.open(path, std::ios::app);
    } else {
        impl_->out.open(path, std::ios::trunc);
        impl_->out << header << "\n";
    }
    if (!impl_->out) throw std::runtime_error("cannot open time series for writing: " + path);
}

TimeSeriesWriter::~TimeSeriesWriter() { delete impl_; }

void TimeSeriesWriter::row(const TimeSeriesRow& r) {
    impl_->out << fmt(r.t) << ',' << fmt(r.energy) << ',' << fmt(r.radius) << ',' << fmt(r.l_norm)
               << ',' << fmt(r.l_z) << ',' << fmt(r.s_norm) << ',' << fmt(r.omega_k) << ','
               << r.window_modes << "\n";
}

void TimeSeriesWriter::flush() { impl_->out.flush(); }

std::string event_to_jsonl(const Event& ev) {
    nlohmann::json j;
    j["type"] = event_type_name(ev.type);
    j["t"] = ev.t;
    switch (ev.type) {
        case EventType::window_init:
        case EventType::cutoff_update:
            j["omega_cutoff"] = ev.a;
            j["modes_in"] = static_cast<std::uint64_t>(ev.b);
            j["modes_out"] = static_cast<std::uint64_t>(ev.c);
            j["n_admitted"] = static_cast<std::uint64_t>(ev.d);
            break;
        case EventType::push:
            j["e_before"] = ev.a;
            j["e_target"] = ev.b;
            j["branch"] = ev.c != 0.0 ? "parallel" : "perpendicular";
            j["magnitude"] = ev.d;
            break;
        case EventType::ionisation:
            j["energy"] = ev.a;
            break;
        case EventType::singularity_abort:
            j["radius"] = ev.a;
            break;
        case EventType::grid_span_exceeded:
            j["grid_n"] = ev.a;
            break;
    }
    return j.dump();
}

struct EventWriter::Impl {
    std::ofstream out;
};

EventWriter::EventWriter(const std::string& path, const std::vector<Event>& replay)
    : impl_(new Impl) {
    impl_->out.open(path, std::ios::trunc);
    if (!impl_->out) throw std::runtime_error("cannot open event log for writing: " + path);
    for (const auto& ev : replay) impl_->out << event_to_jsonl(ev) << "\n";
}

EventWriter::~EventWriter() { delete impl_; }

void EventWriter::event(const Event& ev) { impl_->out << event_to_jsonl(ev) << "\n"; }

void write_summary_json(const std::string& path, const RunSummary& summary, StopReason reason,
                        const TrajectorySummary& traj) {
    nlohmann::json j;
    j["t_total"] = summary.t_total;
    j["t_total_seconds"] = summary.t_total_seconds;
    j["t_damp"] = summary.t_damp;
    j["t_damp_seconds"] = summary.t_damp_seconds;
    j["n_orbit"] = summary.n_orbit;
    j["n_damp"] = summary.n_damp;
    j["ionised"] = summary.ionised;
    j["pushes"] = summary.pushes;
    j["cutoff_updates"] = summary.cutoff_updates;
    j["steps"] = traj.steps;
    switch (reason) {
        case StopReason::reached_t_end: j["stop"] = "t_end"; break;
        case StopReason::ionised: j["stop"] = "ionisation"; break;
        case StopReason::aborted: j["stop"] = "aborted"; break;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write summary: " + path);
    out << j.dump(2) << "\n";
}

void write_histogram_csv(const std::string& path, const Histogram& hist,
                         const std::function<double(double)>& reference) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write histogram: " + path);
    out << "bin_lo,bin_hi,density" << (reference ? ",reference" : "") << "\n";
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        double lo = hist.bin_lo(i);
        double hi = lo + hist.bin_width();
        out << fmt(lo) << ',' << fmt(hi) << ',' << fmt(hist.density(i));
        if (reference) out << ',' << fmt(reference(0.5 * (lo + hi)));
        out << "\n";
    }
}

void write_svg_overlay(const std::string& path, const Histogram& hist,
                       const std::function<double(double)>& reference, const std::string& title,
                       const std::string& x_label) {
    const int width = 640, height = 420;
    const int ml = 50, mr = 15, mt = 30, mb = 40;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double y_max = 1e-12;
    for (std::size_t i = 0; i < hist.bins(); ++i) y_max = std::max(y_max, hist.density(i));
    if (reference) {
        for (std::size_t i = 0; i < hist.bins(); ++i) {
            y_max = std::max(y_max, reference(hist.bin_lo(i) + 0.5 * hist.bin_width()));
        }
    }
    y_max *= 1.08;

    auto px = [&](double x) { return ml + (x - hist.lo()) / (hist.hi() - hist.lo()) * plot_w; };
    auto py = [&](double y) { return mt + plot_h * (1.0 - y / y_max); };

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write svg: " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << width / 2 << "' y='18' text-anchor='middle' font-size='14'>" << title
        << "</text>\n";
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        double d = hist.density(i);
        if (d <= 0.0) continue;
        double x0 = px(hist.bin_lo(i));
        double x1 = px(hist.bin_lo(i) + hist.bin_width());
        double y = py(d);
        out << "<rect x='" << x0 << "' y='" << y << "' width='" << (x1 - x0) << "' height='"
            << (mt + plot_h - y) << "' fill='#7fa8d9' stroke='none'/>\n";
    }
    if (reference) {
        out << "<polyline fill='none' stroke='#c0392b' stroke-width='1.5' points='";
        for (std::size_t i = 0; i <= hist.bins(); ++i) {
            double x = hist.lo() + (hist.hi() - hist.lo()) * static_cast<double>(i) /
                                        static_cast<double>(hist.bins());
            out << px(x) << ',' << py(reference(x)) << ' ';
        }
        out << "'/>\n";
    }
    // axes
    out << "<line x1='" << ml << "' y1='" << mt + plot_h << "' x2='" << ml + plot_w << "' y2='"
        << mt + plot_h << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << mt + plot_h
        << "' stroke='black'/>\n";
    out << "<text x='" << ml + plot_w / 2 << "' y='" << height - 8
        << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
    out << "<text x='" << ml << "' y='" << mt + plot_h + 16 << "' font-size='11'>" << fmt(hist.lo())
        << "</text>\n";
    out << "<text x='" << ml + plot_w << "' y='" << mt + plot_h + 16
        << "' text-anchor='end' font-size='11'>" << fmt(hist.hi()) << "</text>\n";
    out << "<text x='" << ml - 4 << "' y='" << mt + 4 << "' text-anchor='end' font-size='11'>"
        << fmt(y_max) << "</text>\n";
    out << "</svg>\n";
}

}  // namespace sedh
