#ifndef RDGP_KERNEL_PROTEIN_HPP
#define RDGP_KERNEL_PROTEIN_HPP

#include "rdgp/covariance.hpp"
#include "rdgp/kernel_se.hpp"
#include "rdgp/types.hpp"

namespace rdgp {

// Covariance machinery of the model that places the GP prior on the protein
// channel. The mRNA kernels are obtained by applying the rearranged dynamics
//   u = (1/S) [dy/dt + lambda y - D d2y/dx2]
// to the SE prior, so everything reduces to closed-form SE derivatives.
// Derivatives are taken with respect to the first (unprimed) arguments; the
// sign of the cross term below depends on that convention and is pinned by
// the finite-difference operator checks in the tests.
//
// No boundary or initial conditions are imposed: unlike the mRNA-prior model,
// posteriors from this variant need not vanish at x in {0, l} or t = 0.

// cov(y(p1), y(p2)) = sigma2 * se_x * se_t (the prior itself).
double kyy_protein(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                   const KernelParams& kp);

// cov(u(p1), u(p2)):
//   (sigma2 D/S^2) [D k_x'''' - 2 lambda k_x''] k_t
//   - (sigma2/S^2) [k_t'' - lambda^2 k_t] k_x
double kuu_protein(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                   const KernelParams& kp, const MechanisticParams& mech);

// cov(y(py), u(pu)) = (sigma2/S) [lambda k_x k_t - k_x k_t' - D k_x'' k_t]
double kyu_protein(const SpaceTimePoint& py, const SpaceTimePoint& pu,
                   const KernelParams& kp, const MechanisticParams& mech);

CovarianceBlocks assemble_joint_protein(const SpaceTimeDesign& du,
                                        const SpaceTimeDesign& dy,
                                        const KernelParams& kp,
                                        const MechanisticParams& mech);

} // namespace rdgp

#endif
