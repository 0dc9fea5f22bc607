#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace cremer {

// Seconds since the Unix epoch, UTC, second resolution.
using UtcSeconds = std::int64_t;

// Strict ISO 8601 UTC, "2017-08-15T01:24:30Z". Throws ParseError on any
// deviation from that shape or an out-of-range calendar field.
UtcSeconds utc_from_string(const std::string& s);
std::string utc_to_string(UtcSeconds t);

// Wraps any finite angle into [-180, 180). Throws DomainError on NaN/inf.
double normalize_longitude(double deg);

// Effective linear energy transfer for a particle entering a cell at angle
// theta (radians) off the perpendicular: L / cos(theta). Grazing incidence
// (theta >= pi/2) and negative angles are rejected.
double effective_let(double let_perpendicular, double theta_rad);

// One observation: where the satellite was and when.
// Latitude in [-90, 90], longitude in [-180, 180), altitude in km, > 0.
// Construction validates; instances are immutable value types.
struct GeoSample {
    GeoSample(UtcSeconds timestamp_utc, double latitude_deg, double longitude_deg,
              double altitude_km);

    UtcSeconds timestamp_utc;
    double latitude_deg;
    double longitude_deg;
    double altitude_km;
};

// Model feature space, fixed order (lat, lon, alt). The timestamp is
// deliberately not a feature; it only drives scrub counting.
using FeatureVector = Eigen::Vector3d;

inline constexpr int kFeatureCount = 3;
inline constexpr int kLatFeature = 0;
inline constexpr int kLonFeature = 1;
inline constexpr int kAltFeature = 2;

FeatureVector features_of(const GeoSample& s);

// Feature matrix + binary labels (SEU = 1) + per-sample weights.
class LabeledDataset {
public:
    LabeledDataset() = default;
    LabeledDataset(std::vector<GeoSample> samples, std::vector<int> labels,
                   std::vector<double> weights);

    void add(const GeoSample& s, int label, double weight = 1.0);

    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

    const std::vector<GeoSample>& samples() const { return samples_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<double>& weights() const { return weights_; }

    std::size_t count_of(int label) const;

    // n x 3 matrix, rows in sample order.
    Eigen::MatrixX3d feature_matrix() const;

private:
    std::vector<GeoSample> samples_;
    std::vector<int> labels_;
    std::vector<double> weights_;
};

struct ForestParams {
    int n_trees = 100;
    int max_depth = 32;
    int min_samples_leaf = 1;
    int features_per_split = 2; // ceil(sqrt(3))
    bool bootstrap = true;
};

struct BoostParams {
    int n_rounds = 100;
    double learning_rate = 0.3;
    int max_depth = 6;
    double lambda = 1.0; // L2 leaf regularizer
    double gamma = 0.0;  // split penalty
};

// Everything a run needs to be reproducible. positive_class_weight drives
// both the forest's class weights and the booster's gradient scaling.
struct RunConfig {
    std::uint64_t rng_seed = 42;
    double positive_class_weight = 94.0;
    double scrub_interval_minutes = 2.0;
    double split_fraction = 0.8;
    double vote_threshold = 0.5;
    ForestParams forest;
    BoostParams boost;

    // Throws DomainError listing the first violated constraint.
    void validate() const;
};

} // namespace cremer
