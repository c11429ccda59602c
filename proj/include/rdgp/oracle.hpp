#ifndef RDGP_ORACLE_HPP
#define RDGP_ORACLE_HPP

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "rdgp/kernel_mrna.hpp"
#include "rdgp/kernel_se.hpp"
#include "rdgp/types.hpp"

// Brute-force reference implementations used to verify the production kernels
// and special functions. Nothing in this namespace calls the production
// evaluation paths it is used to check: the Green's function is re-summed
// locally, the error functions come from series/continued fractions, and the
// Faddeeva reference integrates the defining integral.
namespace rdgp::oracle {

// erf by its Maclaurin series, summed to machine convergence. Accurate for
// moderate |x| (the cancellation regime starts well beyond the test range).
double erf_series(double x);

// erfc by the Laplace continued fraction for x >= 1 (no cancellation for
// large x), 1 - erf_series elsewhere.
double erfc_cf(double x);

// Faddeeva function via the pole-corrected trapezoidal/midpoint rules applied
// to w(z) = (i z / pi) \int e^{-s^2}/(z^2 - s^2) ds on the upper half-plane;
// reflection below. Uniform accuracy ~1e-14; wholly independent of the
// rational approximation used in production.
std::complex<double> faddeeva_ref(std::complex<double> z);

struct QuadResult {
    double value = 0.0;   // Richardson combination of the two resolutions
    double coarse = 0.0;  // trapezoid value at the requested resolution
    double fine = 0.0;    // trapezoid value at twice the resolution
    double delta = 0.0;   // |fine - coarse|, the self-convergence estimate
};

// Double trapezoid of  sigma2 S \int_0^t \int_0^l G(x,xi,t-tau) k(xi,x')
// k(tau,t') dxi dtau  with the truncated Green's function. resolution is the
// interval count per axis (>= 32).
QuadResult quad_kyu(const SpaceTimePoint& py, const SpaceTimePoint& pu,
                    const KernelParams& kp, const MechanisticParams& mech,
                    const GreensConfig& cfg, int resolution);

// The quadruple integral defining the output-channel covariance, reduced by
// the separability of the integrand to products of 2-D trapezoid integrals
// per series term pair (n,m).
QuadResult quad_kyy(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                    const KernelParams& kp, const MechanisticParams& mech,
                    const GreensConfig& cfg, int resolution);

using KernelSurface = std::function<double(double, double, double, double)>;

enum class ArgPair { First, Second };

// The rearranged dynamics u = (1/S)[d/dt + lambda - D d2/dx2] applied to a
// kernel surface in the chosen argument pair at (x,t,x',t'), via 4th-order
// central stencils with the given steps.
double fd_operator_apply(const KernelSurface& f, ArgPair pair,
                         const MechanisticParams& mech, double x, double t,
                         double xp, double tp, double hx, double ht);

// Same, applied in the second pair and then the first (both pairs).
double fd_operator_apply_both(const KernelSurface& f,
                              const MechanisticParams& mech, double x, double t,
                              double xp, double tp, double hx, double ht);

// Two-level Richardson extrapolation of a 4th-order quantity g(h):
// combines g(h), g(h/2), g(h/4) into an 8th-order estimate.
double richardson2(const std::function<double(double)>& g, double h);

struct PdeGrid {
    double domain_len = 1.0;
    double t_max = 1.0;
    int nx = 41; // spatial nodes including both boundaries (>= 3)
    int nt = 81; // time levels including t = 0 (>= 2)
};

// Crank-Nicolson solution of  dy/dt = S u - lambda y + D d2y/dx2  with
// homogeneous Dirichlet boundaries and y(:,0) = 0. u and the returned y are
// nx x nt node matrices on the uniform grid.
Eigen::MatrixXd pde_solve(const Eigen::MatrixXd& u, const MechanisticParams& mech,
                          const PdeGrid& grid);

} // namespace rdgp::oracle

#endif
