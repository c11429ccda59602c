#ifndef RDGP_SPECFUN_HPP
#define RDGP_SPECFUN_HPP

#include <complex>

namespace rdgp::specfun {

using Complex = std::complex<double>;

// Error function. Throws DomainError on non-finite input.
double erf(double x);

// Complementary error function, cancellation-free for large positive x.
double erfc(double x);

// Scaled complementary error function exp(x^2) * erfc(x).
// This is the designated overflow-avoidance primitive: kernel code cancels
// explosive exp{(beta*theta/2)^2} factors against it analytically instead of
// ever forming them. Throws OverflowError once the true value exceeds double
// range (x below about -26.6).
double erfcx(double x);

// exp(-a^2) * erfcx(b) evaluated without intermediate overflow. For b < 0 the
// reflection erfcx(-b) = 2 exp(b^2) - erfcx(b) is folded into the exponential,
// so the call is safe whenever b^2 <= a^2 + 700.
double exp_nx2_erfcx(double a, double b);

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
// Rational approximation on the closed upper half-plane (coefficients built
// once from tan-mapped samples), reflection w(z) = 2 exp(-z^2) - w(-z) below
// the real axis. Throws OverflowError when the reflection term overflows.
Complex faddeeva(Complex z);

} // namespace rdgp::specfun

#endif
