#include "rdgp/kernel_protein.hpp"

namespace rdgp {

double kyy_protein(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                   const KernelParams& kp) {
    kp.validate();
    return kp.sigma2 * se(p1.x, p2.x, kp.theta_x) * se(p1.t, p2.t, kp.theta_t);
}

double kuu_protein(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                   const KernelParams& kp, const MechanisticParams& mech) {
    kp.validate();
    mech.validate();
    const double s2 = mech.s_rate * mech.s_rate;
    const double kx = se(p1.x, p2.x, kp.theta_x);
    const double kt = se(p1.t, p2.t, kp.theta_t);
    const double kx2 = se_d2(p1.x, p2.x, kp.theta_x);
    const double kx4 = se_d4(p1.x, p2.x, kp.theta_x);
    const double kt2 = se_d2(p1.t, p2.t, kp.theta_t);
    return kp.sigma2 * mech.diff / s2 * (mech.diff * kx4 - 2.0 * mech.lambda * kx2) * kt -
           kp.sigma2 / s2 * (kt2 - mech.lambda * mech.lambda * kt) * kx;
}

double kyu_protein(const SpaceTimePoint& py, const SpaceTimePoint& pu,
                   const KernelParams& kp, const MechanisticParams& mech) {
    kp.validate();
    mech.validate();
    const double kx = se(py.x, pu.x, kp.theta_x);
    const double kt = se(py.t, pu.t, kp.theta_t);
    const double kt1 = se_d1(py.t, pu.t, kp.theta_t);
    const double kx2 = se_d2(py.x, pu.x, kp.theta_x);
    return kp.sigma2 / mech.s_rate *
           (mech.lambda * kx * kt - kx * kt1 - mech.diff * kx2 * kt);
}

CovarianceBlocks assemble_joint_protein(const SpaceTimeDesign& du,
                                        const SpaceTimeDesign& dy,
                                        const KernelParams& kp,
                                        const MechanisticParams& mech) {
    kp.validate();
    mech.validate();
    const Eigen::Index nu = static_cast<Eigen::Index>(du.size());
    const Eigen::Index ny = static_cast<Eigen::Index>(dy.size());

    CovarianceBlocks blocks;
    blocks.k_uu.resize(nu, nu);
    for (Eigen::Index i = 0; i < nu; ++i)
        for (Eigen::Index j = i; j < nu; ++j) {
            const double v = kuu_protein(du.points[i], du.points[j], kp, mech);
            blocks.k_uu(i, j) = v;
            blocks.k_uu(j, i) = v;
        }

    blocks.k_yy.resize(ny, ny);
    for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = i; j < ny; ++j) {
            const double v = kyy_protein(dy.points[i], dy.points[j], kp);
            blocks.k_yy(i, j) = v;
            blocks.k_yy(j, i) = v;
        }

    blocks.k_yu.resize(ny, nu);
    for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = 0; j < nu; ++j)
            blocks.k_yu(i, j) = kyu_protein(dy.points[i], du.points[j], kp, mech);

    return blocks;
}

} // namespace rdgp
