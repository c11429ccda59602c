#ifndef RDGP_GP_HPP
#define RDGP_GP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rdgp/covariance.hpp"
#include "rdgp/kernel_mrna.hpp"
#include "rdgp/kernel_protein.hpp"
#include "rdgp/types.hpp"

namespace rdgp {

struct ChannelObservations {
    Channel channel = Channel::U;
    SpaceTimeDesign design;
    Eigen::VectorXd values;
    double nugget = 0.0; // per-channel observation-noise variance

    void validate() const {
        if (static_cast<std::size_t>(values.size()) != design.size())
            throw ParameterError("ChannelObservations: values length != design size");
        if (!(nugget >= 0.0))
            throw ParameterError("ChannelObservations: nugget must be >= 0");
        for (Eigen::Index i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i]))
                throw ParameterError("ChannelObservations: non-finite value");
    }
};

struct PosteriorField {
    Channel channel = Channel::U;
    SpaceTimeDesign design;
    Eigen::VectorXd mean;
    Eigen::VectorXd variance;     // >= 0; tiny negatives are clamped
    int clamped = 0;              // how many variances were clamped to 0
};

// Which hyperparameter fields the optimizer may move. Positive fields are
// optimized in log space, so a field whose current value is 0 is implicitly
// frozen regardless of its flag.
struct FrozenMask {
    bool s_rate = false;
    bool lambda = false;
    bool diff = false;
    bool sigma2 = false;
    bool theta_x = false;
    bool theta_t = false;
    bool nugget_u = true;
    bool nugget_y = true;

    // The protocol that fixes the mechanistic constants and estimates only
    // the covariance parameters (sigma2, theta_x, theta_t).
    static FrozenMask freeze_mech() {
        FrozenMask m;
        m.s_rate = m.lambda = m.diff = true;
        return m;
    }
};

struct Hyperparameters {
    MechanisticParams mech;
    KernelParams kernel;
    double nugget_u = 0.0;
    double nugget_y = 0.0;
    FrozenMask frozen;
};

enum class ModelVariant { MRNA, Protein };

struct Model {
    ModelVariant variant = ModelVariant::MRNA;
    Hyperparameters hyper;
    GreensConfig greens;   // used by the MRNA variant only
    SpaceTimeBox domain;

    void validate() const;
};

// Entry-level kernel dispatch for a model variant; immutable and thread-safe
// once constructed.
class JointKernel {
public:
    explicit JointKernel(const Model& model);

    double uu(const SpaceTimePoint& p, const SpaceTimePoint& q) const;
    double yy(const SpaceTimePoint& p, const SpaceTimePoint& q) const;
    double yu(const SpaceTimePoint& py, const SpaceTimePoint& pu) const;

    // cov(a-channel point p, b-channel point q)
    double cov(Channel a, const SpaceTimePoint& p, Channel b,
               const SpaceTimePoint& q) const;

private:
    ModelVariant variant_;
    KernelParams kp_;
    MechanisticParams mech_;
    std::optional<MrnaKernel> mrna_;
};

struct CholeskyFactor {
    Eigen::LLT<Eigen::MatrixXd> llt;
    double jitter = 0.0;

    double log_det() const {
        return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    }
};

// Factors m + jitter*I, trying jitter = 0 first and then escalating from
// 1e-10*mean(diag) by factors of 10 up to 1e-4*mean(diag). Throws
// NumericalError (with a minimum-eigenvalue diagnostic) if even the largest
// jitter fails.
CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& m);

CovarianceBlocks assemble_joint(const Model& model, const SpaceTimeDesign& du,
                                const SpaceTimeDesign& dy);

struct JointSample {
    Eigen::VectorXd u;
    Eigen::VectorXd y;
};

// One draw from N(0, K_joint), reproducible per seed. Coordinates whose prior
// variance is exactly zero (boundary rows of the mRNA-prior model) are drawn
// as exact zeros rather than jitter noise.
JointSample sample_joint(const Model& model, const SpaceTimeDesign& du,
                         const SpaceTimeDesign& dy, std::uint64_t seed);

struct ChannelQuery {
    Channel channel = Channel::U;
    SpaceTimeDesign design;
};

// Gaussian conditioning of the joint process on any subset of channels.
// Returns one posterior field per query, in query order.
std::vector<PosteriorField> condition(const Model& model,
                                      const std::vector<ChannelObservations>& obs,
                                      const std::vector<ChannelQuery>& queries);

// -0.5 v' K^-1 v - 0.5 log|K| - (n/2) log 2pi over the observed channels,
// with per-channel nuggets on the diagonal.
double log_marginal_likelihood(const Model& model,
                               const std::vector<ChannelObservations>& obs);

struct FitOptions {
    int max_iters = 300;      // Nelder-Mead iteration cap (early stopping)
    double ftol = 1e-7;       // relative spread of simplex values to stop at
    int restarts = 1;         // >= 1; restart k > 0 perturbs the start point
    std::uint64_t seed = 0;   // seeds the restart perturbations
    double step = 0.1;        // initial simplex step in log space
};

struct FitResult {
    Hyperparameters hyper;
    double loglik = 0.0;
    double initial_loglik = 0.0;
    std::vector<double> trace; // best log-likelihood after each iteration
    int n_evals = 0;
};

// Maximizes the joint marginal log-likelihood over the non-frozen fields
// (in log space) with a derivative-free simplex search and multi-start.
// The result never has a lower likelihood than the initial point.
FitResult fit(const Model& model, const std::vector<ChannelObservations>& obs,
              const FitOptions& options = {});

} // namespace rdgp

#endif
