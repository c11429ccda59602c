#ifndef RDGP_KERNEL_MRNA_HPP
#define RDGP_KERNEL_MRNA_HPP

#include <vector>

#include "rdgp/covariance.hpp"
#include "rdgp/kernel_se.hpp"
#include "rdgp/types.hpp"

namespace rdgp {

// Spatial domain [0, domain_len] and truncation order of the sine-series
// Green's function. Derived quantities: omega_n = n pi / l and
// beta_n = lambda + D omega_n^2.
struct GreensConfig {
    double domain_len = 1.0;
    int n_terms = 20;

    void validate() const {
        if (!(domain_len > 0.0) || !std::isfinite(domain_len))
            throw ParameterError("GreensConfig: domain_len must be > 0");
        if (n_terms < 1)
            throw ParameterError("GreensConfig: n_terms must be >= 1");
    }
};

// Truncated Green's function of the reaction-diffusion operator under
// homogeneous Dirichlet boundaries and zero initial condition:
//   G(x, xi, t) = (2/l) sum_n sin(omega_n x) sin(omega_n xi) exp{-beta_n t}.
double greens(double x, double xi, double t, const GreensConfig& cfg,
              const MechanisticParams& mech);

// Covariance machinery of the model that places the GP prior on the mRNA
// channel. The output-channel covariance k_yy and the cross-covariance k_yu
// are double sine series whose coefficients involve erf-type time integrals
// and Faddeeva-type space integrals; everything exp{(beta theta/2)^2}-shaped
// is evaluated through erfcx so no term overflows regardless of n_terms.
//
// Construction precomputes the point-independent tables (omega_n, beta_n and
// the spatial coefficient matrix C(n,m)); entry evaluation is pure and
// thread-safe afterwards.
class MrnaKernel {
public:
    MrnaKernel(const KernelParams& kp, const MechanisticParams& mech,
               const GreensConfig& cfg);

    // cov(y(p1), y(p2)); symmetric, zero whenever a spatial coordinate sits
    // on the boundary or a time coordinate is zero.
    double kyy(const SpaceTimePoint& p1, const SpaceTimePoint& p2) const;

    // cov(y(py), u(pu)); not symmetric.
    double kyu(const SpaceTimePoint& py, const SpaceTimePoint& pu) const;

    // cov(u(p1), u(p2)) = sigma2 * se_x * se_t (the prior itself).
    double kuu(const SpaceTimePoint& p1, const SpaceTimePoint& p2) const;

    const KernelParams& kernel_params() const { return kp_; }
    const MechanisticParams& mech_params() const { return mech_; }
    const GreensConfig& config() const { return cfg_; }

private:
    void check_point(const SpaceTimePoint& p) const;

    KernelParams kp_;
    MechanisticParams mech_;
    GreensConfig cfg_;
    std::vector<double> omega_;  // omega_n, 1-based stored at [n-1]
    std::vector<double> beta_;   // beta_n
    Eigen::MatrixXd c_;          // C(n,m) spatial coefficients
};

// One-off entry evaluation (constructs the precomputed tables internally;
// prefer MrnaKernel when evaluating many entries).
double kyy_mrna(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                const KernelParams& kp, const MechanisticParams& mech,
                const GreensConfig& cfg);
double kyu_mrna(const SpaceTimePoint& py, const SpaceTimePoint& pu,
                const KernelParams& kp, const MechanisticParams& mech,
                const GreensConfig& cfg);

CovarianceBlocks assemble_joint_mrna(const SpaceTimeDesign& du,
                                     const SpaceTimeDesign& dy,
                                     const KernelParams& kp,
                                     const MechanisticParams& mech,
                                     const GreensConfig& cfg);

} // namespace rdgp

#endif
