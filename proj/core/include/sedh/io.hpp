#pragma once

#include <functional>
#include <string>

#include "sedh/dynamics.hpp"
#include "sedh/stats.hpp"

namespace sedh {

/// CSV time-series writer. Full double precision so identical runs produce
/// byte-identical files.
class TimeSeriesWriter {
public:
    static constexpr const char* header = "t,E,r,L,Lz,S_norm,omega_K,window_modes";

    /// truncate_rows >= 0 reopens an existing file keeping only the header
    /// and that many rows (resume path); -1 starts a fresh file.
    TimeSeriesWriter(const std::string& path, long long truncate_rows = -1);
    ~TimeSeriesWriter();

    void row(const TimeSeriesRow& r);
    void flush();

private:
    struct Impl;
    Impl* impl_;
};

std::string event_to_jsonl(const Event& ev);

/// Rewrite the event log file from scratch (resume) or append live events.
class EventWriter {
public:
    EventWriter(const std::string& path, const std::vector<Event>& replay = {});
    ~EventWriter();
    void event(const Event& ev);

private:
    struct Impl;
    Impl* impl_;
};

void write_summary_json(const std::string& path, const RunSummary& summary,
                        StopReason reason, const TrajectorySummary& traj);

/// bin_lo,bin_hi,density,reference columns; reference may be null.
void write_histogram_csv(const std::string& path, const Histogram& hist,
                         const std::function<double(double)>& reference);

/// Minimal static SVG: histogram bars with the reference curve overlaid.
void write_svg_overlay(const std::string& path, const Histogram& hist,
                       const std::function<double(double)>& reference,
                       const std::string& title, const std::string& x_label);

}  // namespace sedh
