#pragma once

#include "cremer/ingest.hpp"
#include "cremer/types.hpp"

#include <Eigen/Core>

#include <cstdint>

namespace cremer::synth {

// Sampling box over latitude/longitude, in raw degrees.
struct Bounds2D {
    double lat_min, lat_max;
    double lon_min, lon_max;

    Bounds2D(double lat_min, double lat_max, double lon_min, double lon_max);

    double lat_span() const { return lat_max - lat_min; }
    double lon_span() const { return lon_max - lon_min; }
    double area() const { return lat_span() * lon_span(); }
    double diagonal() const;
    bool contains(double lat, double lon) const {
        return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
    }
};

// Gaussian altitude distribution fitted from the positive events.
struct AltitudeModel {
    double mean_km;
    double std_dev_km;

    AltitudeModel(double mean_km, double std_dev_km);
};

enum class SampleMethod { kPoissonDisk, kUniform };

struct SynthesisPlan {
    Bounds2D bounds;
    AltitudeModel altitude;
    std::int64_t target_count;
    SampleMethod method;
    double disk_radius = 0.0;          // degrees, poisson only
    int max_attempts_per_point = 30;

    void validate() const;
};

// Tight min/max box over the event positions. Requires spread on both axes;
// a degenerate axis would collapse the sampling domain to a line.
Bounds2D fit_bounds(const ingest::EventLog& log);

// Sample mean and population standard deviation of the event altitudes.
AltitudeModel fit_altitude(const ingest::EventLog& log);

// Bridson dart throwing: a background grid of cell size r/sqrt(2) holds at
// most one sample per cell, an active list seeds up to `k` annulus candidates
// per point, and every accepted pair of points ends up >= radius apart
// (Euclidean, in degree space). Deterministic per seed. Rows are (lat, lon).
Eigen::MatrixX2d poisson_disk_sample(const Bounds2D& bounds, double radius, int k,
                                     std::uint64_t seed);

// Radius whose expected Bridson yield is about n, from the measured fill
// ratio (points * r^2 / area at saturation). Clamped to the box diagonal so
// n = 1 stays feasible; throws DomainError once n pushes the radius below
// machine-resolvable scale.
double radius_for_count(const Bounds2D& bounds, std::int64_t n);

// Measured mean of yield * r^2 / area for this implementation at k = 30.
inline constexpr double kPoissonFillRatio = 0.678;

// Exactly n points at pairwise distance >= radius: Bridson, then random trim
// or rejection-sampled top-up; if the domain saturates below n the radius is
// shrunk by 10% and generation restarts.
Eigen::MatrixX2d poisson_disk_sample_exact(const Bounds2D& bounds, double radius, std::int64_t n,
                                           int k, std::uint64_t seed);

// n i.i.d. uniform points in the box, rows (lat, lon).
Eigen::MatrixX2d uniform_sample(const Bounds2D& bounds, std::int64_t n, std::uint64_t seed);

// The negative class: positions from the chosen sampler, altitudes drawn from
// the plan's Gaussian (redrawn while <= 0), timestamps evenly spaced across
// the log's span as metadata. All labels 0, weights 1.
LabeledDataset synthesize_negatives(const ingest::EventLog& log, const SynthesisPlan& plan,
                                    std::uint64_t seed);

// Plan with bounds/altitude fitted from the log and, for poisson sampling,
// the radius sized to the target count.
SynthesisPlan make_plan(const ingest::EventLog& log, SampleMethod method,
                        std::int64_t target_count);

// Desk-scale stand-in for a real mission log: n events clustered around a
// hotspot (truncated bivariate Gaussian), timestamps uniform over the range.
ingest::EventLog generate_test_positives(std::int64_t n, double hotspot_lat, double hotspot_lon,
                                         double hotspot_spread_deg, const AltitudeModel& altitude,
                                         UtcSeconds t_begin, UtcSeconds t_end,
                                         std::uint64_t seed);

} // namespace cremer::synth
