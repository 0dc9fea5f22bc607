#include "cremer/types.hpp"

#include "cremer/errors.hpp"

#include <cmath>
#include <cstdio>

namespace cremer {

namespace {

// Days between 1970-01-01 and y-m-d (proleptic Gregorian), Hinnant's
// days_from_civil. Valid far beyond any satellite mission.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

int days_in_month(int y, int m) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

} // namespace

UtcSeconds utc_from_string(const std::string& s) {
    int y, mo, d, h, mi, sec;
    char z;
    // Fixed-width form only: YYYY-MM-DDThh:mm:ssZ
    if (s.size() != 20 ||
        std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &sec, &z) != 7 ||
        z != 'Z') {
        throw ParseError("bad timestamp '" + s + "', expected YYYY-MM-DDThh:mm:ssZ", 0);
    }
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) || h < 0 || h > 23 || mi < 0 ||
        mi > 59 || sec < 0 || sec > 59) {
        throw ParseError("timestamp field out of range in '" + s + "'", 0);
    }
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + sec;
}

std::string utc_to_string(UtcSeconds t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

double normalize_longitude(double deg) {
    if (!std::isfinite(deg)) throw DomainError("longitude must be finite");
    double m = std::fmod(deg + 180.0, 360.0);
    if (m < 0.0) m += 360.0;
    return m - 180.0;
}

double effective_let(double let_perpendicular, double theta_rad) {
    if (!(let_perpendicular > 0.0) || !std::isfinite(let_perpendicular))
        throw DomainError("LET must be positive and finite");
    if (!(theta_rad >= 0.0) || theta_rad >= M_PI / 2.0)
        throw DomainError("incidence angle must lie in [0, pi/2)");
    return let_perpendicular / std::cos(theta_rad);
}

GeoSample::GeoSample(UtcSeconds timestamp, double lat, double lon, double alt)
    : timestamp_utc(timestamp), latitude_deg(lat), longitude_deg(lon), altitude_km(alt) {
    if (!(lat >= -90.0 && lat <= 90.0))
        throw DomainError("latitude " + std::to_string(lat) + " outside [-90, 90]");
    if (!(lon >= -180.0 && lon < 180.0))
        throw DomainError("longitude " + std::to_string(lon) + " outside [-180, 180)");
    if (!(alt > 0.0) || !std::isfinite(alt))
        throw DomainError("altitude " + std::to_string(alt) + " must be positive and finite");
}

FeatureVector features_of(const GeoSample& s) {
    return {s.latitude_deg, s.longitude_deg, s.altitude_km};
}

LabeledDataset::LabeledDataset(std::vector<GeoSample> samples, std::vector<int> labels,
                               std::vector<double> weights)
    : samples_(std::move(samples)), labels_(std::move(labels)), weights_(std::move(weights)) {
    if (samples_.size() != labels_.size() || samples_.size() != weights_.size())
        throw DomainError("dataset lists must have equal length");
    for (int l : labels_)
        if (l != 0 && l != 1) throw DomainError("labels must be 0 or 1");
    for (double w : weights_)
        if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be positive");
}

void LabeledDataset::add(const GeoSample& s, int label, double weight) {
    if (label != 0 && label != 1) throw DomainError("labels must be 0 or 1");
    if (!(weight > 0.0) || !std::isfinite(weight)) throw DomainError("weights must be positive");
    samples_.push_back(s);
    labels_.push_back(label);
    weights_.push_back(weight);
}

std::size_t LabeledDataset::count_of(int label) const {
    std::size_t n = 0;
    for (int l : labels_) n += (l == label);
    return n;
}

Eigen::MatrixX3d LabeledDataset::feature_matrix() const {
    Eigen::MatrixX3d x(samples_.size(), 3);
    for (std::size_t i = 0; i < samples_.size(); ++i)
        x.row(static_cast<Eigen::Index>(i)) = features_of(samples_[i]).transpose();
    return x;
}

void RunConfig::validate() const {
    if (!(positive_class_weight > 0.0)) throw DomainError("positive_class_weight must be > 0");
    if (!(scrub_interval_minutes > 0.0)) throw DomainError("scrub_interval_minutes must be > 0");
    if (!(split_fraction > 0.0 && split_fraction < 1.0))
        throw DomainError("split_fraction must be in (0,1)");
    if (!(vote_threshold > 0.0 && vote_threshold < 1.0))
        throw DomainError("vote_threshold must be in (0,1)");
    if (forest.n_trees < 1) throw DomainError("forest.n_trees must be >= 1");
    if (forest.max_depth < 0) throw DomainError("forest.max_depth must be >= 0");
    if (forest.min_samples_leaf < 1) throw DomainError("forest.min_samples_leaf must be >= 1");
    if (forest.features_per_split < 1 || forest.features_per_split > kFeatureCount)
        throw DomainError("forest.features_per_split must be in [1, 3]");
    if (boost.n_rounds < 1) throw DomainError("boost.n_rounds must be >= 1");
    if (!(boost.learning_rate > 0.0 && boost.learning_rate <= 1.0))
        throw DomainError("boost.learning_rate must be in (0, 1]");
    if (boost.max_depth < 0) throw DomainError("boost.max_depth must be >= 0");
    if (!(boost.lambda >= 0.0)) throw DomainError("boost.lambda must be >= 0");
    if (!(boost.gamma >= 0.0)) throw DomainError("boost.gamma must be >= 0");
}

} // namespace cremer
