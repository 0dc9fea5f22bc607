#include "cremer/synth.hpp"

#include "cremer/errors.hpp"
#include "cremer/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace cremer::synth {

namespace {

// Background acceleration grid for the minimum-distance test. Cell size
// r/sqrt(2) guarantees at most one sample per cell, so a 5x5 neighborhood
// covers every cell that could hold a conflicting point.
class NeighborGrid {
public:
    NeighborGrid(const Bounds2D& b, double radius)
        : bounds_(b), cell_(radius / std::sqrt(2.0)), radius_sq_(radius * radius) {
        nx_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(b.lat_span() / cell_)));
        ny_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(b.lon_span() / cell_)));
        cells_.assign(static_cast<std::size_t>(nx_ * ny_), -1);
    }

    bool conflicts(double lat, double lon, const std::vector<Eigen::Vector2d>& pts) const {
        const std::int64_t cx = cell_x(lat);
        const std::int64_t cy = cell_y(lon);
        for (std::int64_t ix = std::max<std::int64_t>(0, cx - 2);
             ix <= std::min(nx_ - 1, cx + 2); ++ix) {
            for (std::int64_t iy = std::max<std::int64_t>(0, cy - 2);
                 iy <= std::min(ny_ - 1, cy + 2); ++iy) {
                const std::int64_t idx = cells_[static_cast<std::size_t>(ix * ny_ + iy)];
                if (idx < 0) continue;
                const Eigen::Vector2d& p = pts[static_cast<std::size_t>(idx)];
                const double dlat = p.x() - lat;
                const double dlon = p.y() - lon;
                if (dlat * dlat + dlon * dlon < radius_sq_) return true;
            }
        }
        return false;
    }

    void insert(double lat, double lon, std::int64_t index) {
        cells_[static_cast<std::size_t>(cell_x(lat) * ny_ + cell_y(lon))] = index;
    }

private:
    std::int64_t cell_x(double lat) const {
        return std::min(nx_ - 1, std::max<std::int64_t>(
                                     0, static_cast<std::int64_t>((lat - bounds_.lat_min) / cell_)));
    }
    std::int64_t cell_y(double lon) const {
        return std::min(ny_ - 1, std::max<std::int64_t>(
                                     0, static_cast<std::int64_t>((lon - bounds_.lon_min) / cell_)));
    }

    Bounds2D bounds_;
    double cell_;
    double radius_sq_;
    std::int64_t nx_, ny_;
    std::vector<std::int64_t> cells_;
};

Eigen::MatrixX2d to_matrix(const std::vector<Eigen::Vector2d>& pts) {
    Eigen::MatrixX2d m(static_cast<Eigen::Index>(pts.size()), 2);
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i];
    return m;
}

// Core Bridson loop; shared by the plain and exact-count samplers. Leaves the
// grid populated so top-up can keep using it.
std::vector<Eigen::Vector2d> bridson(const Bounds2D& b, double radius, int k, Rng& rng,
                                     NeighborGrid& grid) {
    std::vector<Eigen::Vector2d> pts;
    std::vector<std::int64_t> active;

    pts.emplace_back(rng.uniform(b.lat_min, b.lat_max), rng.uniform(b.lon_min, b.lon_max));
    grid.insert(pts[0].x(), pts[0].y(), 0);
    active.push_back(0);

    while (!active.empty()) {
        const std::size_t slot = static_cast<std::size_t>(rng.below(active.size()));
        const Eigen::Vector2d center = pts[static_cast<std::size_t>(active[slot])];
        bool found = false;
        for (int attempt = 0; attempt < k; ++attempt) {
            // Uniform by area over the annulus [r, 2r].
            const double rr = radius * std::sqrt(1.0 + 3.0 * rng.uniform01());
            const double ang = 2.0 * M_PI * rng.uniform01();
            const double lat = center.x() + rr * std::cos(ang);
            const double lon = center.y() + rr * std::sin(ang);
            if (!b.contains(lat, lon) || grid.conflicts(lat, lon, pts)) continue;
            const auto idx = static_cast<std::int64_t>(pts.size());
            pts.emplace_back(lat, lon);
            grid.insert(lat, lon, idx);
            active.push_back(idx);
            found = true;
        }
        if (!found) {
            active[slot] = active.back();
            active.pop_back();
        }
    }
    return pts;
}

double draw_positive_altitude(Rng& rng, const AltitudeModel& alt) {
    // Truncated rather than clamped; clamping would pile mass at zero.
    for (;;) {
        const double a = rng.normal(alt.mean_km, alt.std_dev_km);
        if (a > 0.0) return a;
    }
}

} // namespace

Bounds2D::Bounds2D(double lat_min_, double lat_max_, double lon_min_, double lon_max_)
    : lat_min(lat_min_), lat_max(lat_max_), lon_min(lon_min_), lon_max(lon_max_) {
    if (!(lat_min < lat_max) || !(lon_min < lon_max))
        throw DomainError("bounds must satisfy min < max on both axes");
    if (lat_min < -90.0 || lat_max > 90.0 || lon_min < -180.0 || lon_max >= 180.0)
        throw DomainError("bounds exceed global coordinate limits");
}

double Bounds2D::diagonal() const {
    return std::sqrt(lat_span() * lat_span() + lon_span() * lon_span());
}

AltitudeModel::AltitudeModel(double mean, double sd) : mean_km(mean), std_dev_km(sd) {
    if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("altitude mean must be > 0");
    if (!(sd >= 0.0) || !std::isfinite(sd)) throw DomainError("altitude std dev must be >= 0");
}

void SynthesisPlan::validate() const {
    if (target_count < 1) throw DomainError("target_count must be >= 1");
    if (method == SampleMethod::kPoissonDisk && !(disk_radius > 0.0))
        throw DomainError("disk_radius must be > 0 for poisson sampling");
    if (max_attempts_per_point < 1) throw DomainError("max_attempts_per_point must be >= 1");
}

Bounds2D fit_bounds(const ingest::EventLog& log) {
    double lat_min = 91.0, lat_max = -91.0, lon_min = 181.0, lon_max = -181.0;
    for (const GeoSample& s : log.events()) {
        lat_min = std::min(lat_min, s.latitude_deg);
        lat_max = std::max(lat_max, s.latitude_deg);
        lon_min = std::min(lon_min, s.longitude_deg);
        lon_max = std::max(lon_max, s.longitude_deg);
    }
    if (lat_min == lat_max || lon_min == lon_max)
        throw DomainError("degenerate bounds: all events share a latitude or longitude");
    return {lat_min, lat_max, lon_min, lon_max};
}

AltitudeModel fit_altitude(const ingest::EventLog& log) {
    const auto n = static_cast<double>(log.size());
    double mean = 0.0;
    for (const GeoSample& s : log.events()) mean += s.altitude_km;
    mean /= n;
    double var = 0.0;
    for (const GeoSample& s : log.events()) {
        const double d = s.altitude_km - mean;
        var += d * d;
    }
    return {mean, std::sqrt(var / n)};
}

Eigen::MatrixX2d poisson_disk_sample(const Bounds2D& bounds, double radius, int k,
                                     std::uint64_t seed) {
    if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
    if (k < 1) throw DomainError("attempts per point must be >= 1");
    Rng rng(derive_seed(seed, seed_tag::kPoisson));
    NeighborGrid grid(bounds, radius);
    return to_matrix(bridson(bounds, radius, k, rng, grid));
}

double radius_for_count(const Bounds2D& bounds, std::int64_t n) {
    if (n < 1) throw DomainError("target count must be >= 1");
    const double r = std::sqrt(kPoissonFillRatio * bounds.area() / static_cast<double>(n));
    const double clamped = std::min(r, bounds.diagonal());
    if (clamped < 1e-9 * bounds.diagonal())
        throw DomainError("target count " + std::to_string(n) +
                          " exceeds achievable poisson density for these bounds");
    return clamped;
}

Eigen::MatrixX2d poisson_disk_sample_exact(const Bounds2D& bounds, double radius, std::int64_t n,
                                           int k, std::uint64_t seed) {
    if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
    if (n < 1) throw DomainError("target count must be >= 1");
    if (k < 1) throw DomainError("attempts per point must be >= 1");

    double r = radius;
    for (int round = 0;; ++round) {
        if (r < 1e-9 * bounds.diagonal())
            throw DomainError("cannot fit " + std::to_string(n) + " poisson points");

        Rng rng(derive_seed(seed, seed_tag::kPoisson, static_cast<std::uint64_t>(round)));
        NeighborGrid grid(bounds, r);
        std::vector<Eigen::Vector2d> pts = bridson(bounds, r, k, rng, grid);

        if (static_cast<std::int64_t>(pts.size()) < n) {
            // Top up by rejection darts that still respect the radius.
            Rng darts(derive_seed(seed, seed_tag::kTopUp, static_cast<std::uint64_t>(round)));
            std::int64_t budget =
                static_cast<std::int64_t>(k) * (n - static_cast<std::int64_t>(pts.size())) + 1000;
            while (static_cast<std::int64_t>(pts.size()) < n && budget-- > 0) {
                const double lat = darts.uniform(bounds.lat_min, bounds.lat_max);
                const double lon = darts.uniform(bounds.lon_min, bounds.lon_max);
                if (grid.conflicts(lat, lon, pts)) continue;
                grid.insert(lat, lon, static_cast<std::int64_t>(pts.size()));
                pts.emplace_back(lat, lon);
            }
        }

        if (static_cast<std::int64_t>(pts.size()) >= n) {
            if (static_cast<std::int64_t>(pts.size()) > n) {
                Rng trim(derive_seed(seed, seed_tag::kTrim, static_cast<std::uint64_t>(round)));
                trim.shuffle(pts);
                pts.resize(static_cast<std::size_t>(n));
            }
            return to_matrix(pts);
        }
        r *= 0.9; // saturated below n; relax the spacing and retry
    }
}

Eigen::MatrixX2d uniform_sample(const Bounds2D& bounds, std::int64_t n, std::uint64_t seed) {
    if (n < 1) throw DomainError("sample count must be >= 1");
    Rng rng(derive_seed(seed, seed_tag::kUniform));
    Eigen::MatrixX2d m(n, 2);
    for (std::int64_t i = 0; i < n; ++i) {
        m(i, 0) = rng.uniform(bounds.lat_min, bounds.lat_max);
        m(i, 1) = rng.uniform(bounds.lon_min, bounds.lon_max);
    }
    return m;
}

LabeledDataset synthesize_negatives(const ingest::EventLog& log, const SynthesisPlan& plan,
                                    std::uint64_t seed) {
    plan.validate();
    const std::int64_t n = plan.target_count;

    Eigen::MatrixX2d pos = plan.method == SampleMethod::kPoissonDisk
                               ? poisson_disk_sample_exact(plan.bounds, plan.disk_radius, n,
                                                           plan.max_attempts_per_point, seed)
                               : uniform_sample(plan.bounds, n, seed);

    Rng alt_rng(derive_seed(seed, seed_tag::kAltitude));
    const UtcSeconds t0 = log.front().timestamp_utc;
    const std::int64_t span_sec = log.back().timestamp_utc - t0;

    LabeledDataset out;
    for (std::int64_t i = 0; i < n; ++i) {
        // Even spacing across the mission span; metadata only, never a feature.
        const UtcSeconds t =
            n == 1 ? t0
                   : t0 + static_cast<UtcSeconds>(std::llround(
                              static_cast<double>(i) * static_cast<double>(span_sec) /
                              static_cast<double>(n - 1)));
        out.add(GeoSample(t, pos(i, 0), normalize_longitude(pos(i, 1)),
                          draw_positive_altitude(alt_rng, plan.altitude)),
                0);
    }
    return out;
}

SynthesisPlan make_plan(const ingest::EventLog& log, SampleMethod method,
                        std::int64_t target_count) {
    const Bounds2D bounds = fit_bounds(log);
    SynthesisPlan plan{bounds, fit_altitude(log), target_count, method};
    if (method == SampleMethod::kPoissonDisk)
        plan.disk_radius = radius_for_count(bounds, target_count);
    plan.validate();
    return plan;
}

ingest::EventLog generate_test_positives(std::int64_t n, double hotspot_lat, double hotspot_lon,
                                         double hotspot_spread_deg, const AltitudeModel& altitude,
                                         UtcSeconds t_begin, UtcSeconds t_end,
                                         std::uint64_t seed) {
    if (n < 2) throw DomainError("need at least two positives for a usable log");
    if (!(hotspot_spread_deg > 0.0)) throw DomainError("hotspot spread must be > 0");
    if (t_end < t_begin) throw DomainError("time range is reversed");

    Rng rng(derive_seed(seed, seed_tag::kPositives));
    std::vector<GeoSample> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        double lat, lon;
        do { // truncate to the globe, redraw the pair
            lat = rng.normal(hotspot_lat, hotspot_spread_deg);
            lon = rng.normal(hotspot_lon, hotspot_spread_deg);
        } while (lat < -90.0 || lat > 90.0 || lon < -180.0 || lon >= 180.0);
        const UtcSeconds t =
            t_begin + static_cast<UtcSeconds>(rng.below(static_cast<std::uint64_t>(t_end - t_begin) + 1));
        samples.emplace_back(t, lat, lon, draw_positive_altitude(rng, altitude));
    }
    return ingest::EventLog::from_samples(std::move(samples));
}

} // namespace cremer::synth
