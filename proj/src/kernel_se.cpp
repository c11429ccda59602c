#include "rdgp/kernel_se.hpp"

namespace rdgp {

namespace {
void check_theta(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw ParameterError("se: theta must be > 0");
}
} // namespace

double se(double z, double z2, double theta) {
    check_theta(theta);
    const double d = (z - z2) / theta;
    return std::exp(-d * d);
}

double se_d1(double z, double z2, double theta) {
    check_theta(theta);
    const double d = z - z2;
    const double t2 = theta * theta;
    return -2.0 * d / t2 * se(z, z2, theta);
}

double se_d2(double z, double z2, double theta) {
    check_theta(theta);
    const double d2 = (z - z2) * (z - z2);
    const double t2 = theta * theta;
    return (-2.0 / t2 + 4.0 * d2 / (t2 * t2)) * se(z, z2, theta);
}

double se_d4(double z, double z2, double theta) {
    check_theta(theta);
    const double d2 = (z - z2) * (z - z2);
    const double t2 = theta * theta;
    const double t4 = t2 * t2;
    return (12.0 / t4 - 48.0 * d2 / (t4 * t2) + 16.0 * d2 * d2 / (t4 * t4)) *
           se(z, z2, theta);
}

} // namespace rdgp
