#include "cremer/resample.hpp"

#include "cremer/errors.hpp"
#include "cremer/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cremer::resample {

namespace {

// D^2-weighted k-means++ seeding.
Eigen::MatrixXd kmeanspp_seed(const Eigen::Ref<const Eigen::MatrixXd>& x, int k, Rng& rng) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd centers(k, x.cols());
    centers.row(0) = x.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));

    Eigen::VectorXd min_d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (int c = 1; c < k; ++c) {
        const double total = min_d2.sum();
        Eigen::Index pick;
        if (total > 0.0) {
            double target = rng.uniform01() * total;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                target -= min_d2(i);
                if (target <= 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            // All remaining points coincide with a chosen center.
            pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        }
        centers.row(c) = x.row(pick);
        min_d2 = min_d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }
    return centers;
}

// Nearest-centroid assignment via |x|^2 - 2 x.c + |c|^2 (the |x|^2 term is
// constant per point and dropped). Blocked so the distance matrix never
// materializes for large inputs. First minimum wins, so ties resolve to the
// lowest centroid index.
void assign_nearest(const Eigen::Ref<const Eigen::MatrixXd>& x, const Eigen::MatrixXd& centers,
                    std::vector<int>& assignment) {
    const Eigen::Index n = x.rows();
    const Eigen::Index block = 4096;
    const Eigen::RowVectorXd c_norms = centers.rowwise().squaredNorm().transpose();
    for (Eigen::Index start = 0; start < n; start += block) {
        const Eigen::Index len = std::min(block, n - start);
        Eigen::MatrixXd scores = x.middleRows(start, len) * centers.transpose() * -2.0;
        scores.rowwise() += c_norms;
        for (Eigen::Index i = 0; i < len; ++i) {
            Eigen::Index best;
            scores.row(i).minCoeff(&best);
            assignment[static_cast<std::size_t>(start + i)] = static_cast<int>(best);
        }
    }
}

} // namespace

KMeansResult kmeans(const Eigen::Ref<const Eigen::MatrixXd>& x, int k, std::uint64_t seed,
                    int max_iter, double tol) {
    const Eigen::Index n = x.rows();
    const Eigen::Index d = x.cols();
    if (n == 0) throw DomainError("kmeans needs at least one point");
    if (k < 1 || k > n)
        throw DomainError("k must satisfy 1 <= k <= number of points (" + std::to_string(k) +
                          " vs " + std::to_string(n) + ")");

    Rng rng(derive_seed(seed, seed_tag::kKMeans));
    Eigen::MatrixXd centers = kmeanspp_seed(x, k, rng);

    std::vector<int> assignment(static_cast<std::size_t>(n), 0);
    Eigen::VectorXd point_d2(n);
    double prev_inertia = std::numeric_limits<double>::infinity();
    int iterations = 0;

    for (int iter = 0; iter < max_iter; ++iter) {
        assign_nearest(x, centers, assignment);

        // Direct per-point distances to the assigned (old) centroid: exact
        // inertia, no cancellation from the GEMM expansion.
        double inertia = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            point_d2(i) =
                (x.row(i) - centers.row(assignment[static_cast<std::size_t>(i)])).squaredNorm();
            inertia += point_d2(i);
        }
        // Lloyd never increases the objective; a rise beyond rounding slop is
        // a logic bug, not data.
        if (inertia > prev_inertia * (1.0 + 1e-9) + 1e-12)
            throw std::logic_error("kmeans inertia increased across an iteration");
        prev_inertia = inertia;

        Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
        for (Eigen::Index i = 0; i < n; ++i) ++counts(assignment[static_cast<std::size_t>(i)]);

        // Re-seed empty clusters at the farthest point from its centroid,
        // stealing only from clusters that keep a member (n >= k guarantees
        // a donor exists).
        for (int c = 0; c < k; ++c) {
            if (counts(c) > 0) continue;
            Eigen::Index farthest = -1;
            double best = -1.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (counts(assignment[static_cast<std::size_t>(i)]) < 2) continue;
                if (point_d2(i) > best) {
                    best = point_d2(i);
                    farthest = i;
                }
            }
            --counts(assignment[static_cast<std::size_t>(farthest)]);
            ++counts(c);
            assignment[static_cast<std::size_t>(farthest)] = c;
            point_d2(farthest) = 0.0;
        }

        // Means accumulated in point order, divided once: bit-stable given
        // identical assignments.
        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, d);
        for (Eigen::Index i = 0; i < n; ++i) sums.row(assignment[static_cast<std::size_t>(i)]) += x.row(i);
        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            const Eigen::RowVectorXd updated = sums.row(c) / static_cast<double>(counts(c));
            shift = std::max(shift, (updated - centers.row(c)).norm());
            centers.row(c) = updated;
        }
        ++iterations;
        if (shift < tol) break;
    }

    // Final self-consistent assignment and inertia against the final centers.
    assign_nearest(x, centers, assignment);
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        inertia += (x.row(i) - centers.row(assignment[static_cast<std::size_t>(i)])).squaredNorm();

    return {std::move(centers), std::move(assignment), inertia, iterations};
}

double undersample_ratio(const LabeledDataset& train) {
    const auto pos = static_cast<double>(train.count_of(1));
    const auto neg = static_cast<double>(train.count_of(0));
    if (pos == 0.0 || neg == 0.0) throw DomainError("both classes must be present");
    return std::max(pos, neg) / std::min(pos, neg);
}

LabeledDataset undersample(const LabeledDataset& train, std::uint64_t seed, bool standardize) {
    const std::size_t n_pos = train.count_of(1);
    const std::size_t n_neg = train.count_of(0);
    if (n_pos == 0 || n_neg == 0)
        throw DomainError("undersample needs both classes in the training data");

    const int minority_label = n_pos <= n_neg ? 1 : 0;
    const int majority_label = 1 - minority_label;
    const auto k = static_cast<int>(std::min(n_pos, n_neg));

    // Majority features and timestamps, in dataset order.
    std::vector<std::size_t> majority_idx;
    for (std::size_t i = 0; i < train.size(); ++i)
        if (train.labels()[i] == majority_label) majority_idx.push_back(i);

    Eigen::MatrixXd x(static_cast<Eigen::Index>(majority_idx.size()), 3);
    for (std::size_t j = 0; j < majority_idx.size(); ++j)
        x.row(static_cast<Eigen::Index>(j)) = features_of(train.samples()[majority_idx[j]]).transpose();

    Eigen::RowVector3d mu = Eigen::RowVector3d::Zero();
    Eigen::RowVector3d sigma = Eigen::RowVector3d::Ones();
    if (standardize) {
        mu = x.colwise().mean();
        sigma = ((x.rowwise() - mu).colwise().squaredNorm() / static_cast<double>(x.rows()))
                    .cwiseSqrt();
        for (int c = 0; c < 3; ++c)
            if (sigma(c) == 0.0) sigma(c) = 1.0; // constant column, leave as-is
        x = (x.rowwise() - mu).array().rowwise() / sigma.array();
    }

    KMeansResult km = kmeans(x, k, derive_seed(seed, seed_tag::kKMeans));
    Eigen::MatrixXd centroids = km.centroids;
    if (standardize)
        centroids = (centroids.array().rowwise() * sigma.array()).rowwise() + mu.array();

    // Cluster-mean timestamps keep the centroid rows valid GeoSamples.
    std::vector<double> t_sum(static_cast<std::size_t>(k), 0.0);
    std::vector<std::int64_t> t_count(static_cast<std::size_t>(k), 0);
    for (std::size_t j = 0; j < majority_idx.size(); ++j) {
        const auto c = static_cast<std::size_t>(km.assignments[j]);
        t_sum[c] += static_cast<double>(train.samples()[majority_idx[j]].timestamp_utc);
        ++t_count[c];
    }

    LabeledDataset out;
    for (std::size_t i = 0; i < train.size(); ++i)
        if (train.labels()[i] == minority_label) out.add(train.samples()[i], minority_label, 1.0);
    for (int c = 0; c < k; ++c) {
        const auto cs = static_cast<std::size_t>(c);
        const auto t = static_cast<UtcSeconds>(std::llround(t_sum[cs] / static_cast<double>(t_count[cs])));
        out.add(GeoSample(t, centroids(c, kLatFeature),
                          normalize_longitude(centroids(c, kLonFeature)),
                          centroids(c, kAltFeature)),
                majority_label, 1.0);
    }

    // Deterministic shuffle so class blocks do not survive into training.
    std::vector<std::size_t> order(out.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, seed_tag::kShuffle));
    rng.shuffle(order);

    LabeledDataset shuffled;
    for (std::size_t i : order) shuffled.add(out.samples()[i], out.labels()[i], out.weights()[i]);
    return shuffled;
}

} // namespace cremer::resample
