#ifndef RDGP_METRICS_HPP
#define RDGP_METRICS_HPP

#include <Eigen/Dense>

namespace rdgp {

// Standardised mean squared error: MSE divided by the (biased, 1/n) variance
// of the truth, so a constant mean(truth) predictor scores exactly 1.
double smse(const Eigen::VectorXd& truth, const Eigen::VectorXd& mean);

// Q2 = 1 - SMSE; 1 for a perfect prediction, 0 for the mean predictor.
double q2(const Eigen::VectorXd& truth, const Eigen::VectorXd& mean);

// Fraction of points with |truth_i - mean_i| <= k_sigma * sqrt(variance_i);
// boundary points count as covered.
double coverage(const Eigen::VectorXd& truth, const Eigen::VectorXd& mean,
                const Eigen::VectorXd& variance, double k_sigma = 1.0);

} // namespace rdgp

#endif
