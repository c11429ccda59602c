#include "rdgp/metrics.hpp"

#include <cmath>

#include "rdgp/errors.hpp"

namespace rdgp {

namespace {
void check_sizes(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const char* who) {
    if (a.size() == 0 || a.size() != b.size())
        throw ParameterError(std::string(who) + ": size mismatch or empty input");
}
} // namespace

double smse(const Eigen::VectorXd& truth, const Eigen::VectorXd& mean) {
    check_sizes(truth, mean, "smse");
    const double mu = truth.mean();
    const double var = (truth.array() - mu).square().mean();
    if (!(var > 0.0))
        throw ParameterError("smse: truth has zero variance");
    const double mse = (truth - mean).squaredNorm() / static_cast<double>(truth.size());
    return mse / var;
}

double q2(const Eigen::VectorXd& truth, const Eigen::VectorXd& mean) {
    return 1.0 - smse(truth, mean);
}

double coverage(const Eigen::VectorXd& truth, const Eigen::VectorXd& mean,
                const Eigen::VectorXd& variance, double k_sigma) {
    check_sizes(truth, mean, "coverage");
    check_sizes(truth, variance, "coverage");
    for (Eigen::Index i = 0; i < variance.size(); ++i)
        if (!(variance[i] >= 0.0))
            throw ParameterError("coverage: negative variance");
    Eigen::Index covered = 0;
    for (Eigen::Index i = 0; i < truth.size(); ++i)
        if (std::abs(truth[i] - mean[i]) <= k_sigma * std::sqrt(variance[i]))
            ++covered;
    return static_cast<double>(covered) / static_cast<double>(truth.size());
}

} // namespace rdgp
