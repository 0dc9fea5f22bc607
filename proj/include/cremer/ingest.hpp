#pragma once

#include "cremer/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cremer::ingest {

// Header of the positive-event CSV. All events carry label 1 implicitly.
inline constexpr const char* kEventCsvHeader = "timestamp,latitude_deg,longitude_deg,altitude_km";

// Time-ordered positive events. Non-empty by construction; ties in the
// timestamp keep file order (stable sort) since several upsets can land in
// one scrub window.
class EventLog {
public:
    static EventLog from_samples(std::vector<GeoSample> samples);

    const std::vector<GeoSample>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    const GeoSample& front() const { return events_.front(); }
    const GeoSample& back() const { return events_.back(); }

private:
    EventLog() = default;
    std::vector<GeoSample> events_;
};

struct TimelineStats {
    UtcSeconds first_event;
    UtcSeconds last_event;
    std::int64_t span_minutes;   // floored
    std::int64_t scrub_count;    // floor(span / interval)
    std::int64_t negative_count; // scrubs with no upset, clamped at 0
};

EventLog parse_event_log(const std::string& path);
void write_event_csv(const EventLog& log, const std::string& path);

// Whole minutes between first and last event, floored. 0 for a single event.
std::int64_t span_minutes(const EventLog& log);

// Scrub bookkeeping: assumes the scrubbing cadence was strictly followed, so
// scrubs are counted arithmetically from the elapsed span.
TimelineStats timeline_stats(const EventLog& log, double scrub_interval_minutes);

} // namespace cremer::ingest
