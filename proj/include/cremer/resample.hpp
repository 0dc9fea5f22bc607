#pragma once

#include "cremer/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace cremer::resample {

struct KMeansResult {
    Eigen::MatrixXd centroids;    // k x d
    std::vector<int> assignments; // per-point centroid index
    double inertia;               // sum of squared point-to-centroid distances
    int iterations;               // Lloyd iterations executed
};

// Lloyd's algorithm from k-means++ seeding, run until the largest centroid
// move drops below tol or max_iter is hit. Deterministic per seed. Empty
// clusters are re-seeded at the point farthest from its centroid, keeping k
// exact. The assignment step uses a GEMM-form distance expansion; inertia is
// accumulated directly per point and checked non-increasing every iteration.
KMeansResult kmeans(const Eigen::Ref<const Eigen::MatrixXd>& points, int k, std::uint64_t seed,
                    int max_iter = 300, double tol = 1e-6);

// majority count / minority count.
double undersample_ratio(const LabeledDataset& train);

// Cluster-centroid undersampling: the minority class is kept verbatim and the
// majority class is replaced by k-means centroids with k = minority count, so
// the output is exactly balanced. Weights reset to 1; order shuffled
// deterministically per seed. Applies to training data only by contract; the
// test distribution stays untouched.
LabeledDataset undersample(const LabeledDataset& train, std::uint64_t seed,
                           bool standardize = false);

} // namespace cremer::resample
