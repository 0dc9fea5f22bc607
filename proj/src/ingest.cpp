#include "cremer/ingest.hpp"

#include "cremer/csv.hpp"
#include "cremer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cremer::ingest {

EventLog EventLog::from_samples(std::vector<GeoSample> samples) {
    if (samples.empty()) throw DomainError("event log is empty");
    std::stable_sort(samples.begin(), samples.end(),
                     [](const GeoSample& a, const GeoSample& b) {
                         return a.timestamp_utc < b.timestamp_utc;
                     });
    EventLog log;
    log.events_ = std::move(samples);
    return log;
}

EventLog parse_event_log(const std::string& path) {
    csv::Table t = csv::read_csv(path);
    const std::vector<std::string> expected = {"timestamp", "latitude_deg", "longitude_deg",
                                               "altitude_km"};
    if (t.header != expected)
        throw ParseError("bad header in '" + path + "', expected '" +
                             std::string(kEventCsvHeader) + "'",
                         1);
    if (t.rows.empty()) throw ParseError("event log '" + path + "' has no data rows", 0);

    std::vector<GeoSample> samples;
    samples.reserve(t.rows.size());
    for (const csv::Row& row : t.rows) {
        try {
            samples.emplace_back(utc_from_string(row.fields[0]),
                                 csv::parse_double(row.fields[1], row.line),
                                 csv::parse_double(row.fields[2], row.line),
                                 csv::parse_double(row.fields[3], row.line));
        } catch (const ParseError& e) {
            if (e.line() > 0) throw;
            throw ParseError(e.what(), row.line);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), row.line);
        }
    }
    return EventLog::from_samples(std::move(samples));
}

void write_event_csv(const EventLog& log, const std::string& path) {
    std::ostringstream out;
    out << kEventCsvHeader << '\n';
    for (const GeoSample& s : log.events()) {
        out << utc_to_string(s.timestamp_utc) << ',' << csv::format_double(s.latitude_deg) << ','
            << csv::format_double(s.longitude_deg) << ',' << csv::format_double(s.altitude_km)
            << '\n';
    }
    csv::write_file_atomic(path, out.str());
}

std::int64_t span_minutes(const EventLog& log) {
    return (log.back().timestamp_utc - log.front().timestamp_utc) / 60;
}

TimelineStats timeline_stats(const EventLog& log, double scrub_interval_minutes) {
    if (!(scrub_interval_minutes > 0.0))
        throw DomainError("scrub interval must be positive");
    TimelineStats st;
    st.first_event = log.front().timestamp_utc;
    st.last_event = log.back().timestamp_utc;
    st.span_minutes = span_minutes(log);
    st.scrub_count = static_cast<std::int64_t>(
        std::floor(static_cast<double>(st.span_minutes) / scrub_interval_minutes));
    const auto positives = static_cast<std::int64_t>(log.size());
    st.negative_count = std::max<std::int64_t>(0, st.scrub_count - positives);
    return st;
}

} // namespace cremer::ingest
