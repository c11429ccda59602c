#ifndef RDGP_KERNEL_SE_HPP
#define RDGP_KERNEL_SE_HPP

#include <cmath>

#include "rdgp/errors.hpp"

namespace rdgp {

// Variance and length-scales of the separable squared-exponential prior
//   k(x,t,x',t') = sigma2 * exp{-(x-x')^2/theta_x^2} * exp{-(t-t')^2/theta_t^2}.
//
// NOTE the convention: the squared distance is divided by theta^2, with no
// factor 2 in the denominator. Most GP libraries use exp{-d^2/(2 theta^2)};
// every length-scale in this toolkit (including the bundled presets) follows
// the convention above.
struct KernelParams {
    double sigma2 = 1.0;
    double theta_x = 0.3;
    double theta_t = 0.3;

    void validate() const {
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw ParameterError("KernelParams: sigma2 must be > 0");
        if (!(theta_x > 0.0) || !std::isfinite(theta_x))
            throw ParameterError("KernelParams: theta_x must be > 0");
        if (!(theta_t > 0.0) || !std::isfinite(theta_t))
            throw ParameterError("KernelParams: theta_t must be > 0");
    }
};

// One-dimensional SE factor exp{-(z-z2)^2/theta^2} and its derivatives with
// respect to the first input, as closed forms (not autodiff, so the
// finite-difference checks in the tests are meaningful).
double se(double z, double z2, double theta);
double se_d1(double z, double z2, double theta);
double se_d2(double z, double z2, double theta);
double se_d4(double z, double z2, double theta);

} // namespace rdgp

#endif
