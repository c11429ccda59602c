#include "rdgp/oracle.hpp"

#include <cmath>
#include <vector>

namespace rdgp::oracle {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
} // namespace

double erf_series(double x) {
    if (!std::isfinite(x)) throw DomainError("erf_series: non-finite argument");
    // erf(x) = (2/sqrt(pi)) sum_n (-1)^n x^{2n+1} / (n! (2n+1))
    double term = x;
    double sum = x;
    for (int n = 1; n <= 200; ++n) {
        term *= -x * x / n;
        const double inc = term / (2.0 * n + 1.0);
        sum += inc;
        if (std::abs(inc) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return 2.0 / kSqrtPi * sum;
}

double erfc_cf(double x) {
    if (!std::isfinite(x)) throw DomainError("erfc_cf: non-finite argument");
    if (x < 1.0) return 1.0 - erf_series(x);
    // erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    double f = x; // bottom of the truncated fraction
    for (int k = 60; k >= 1; --k)
        f = x + (k / 2.0) / f;
    return std::exp(-x * x) / kSqrtPi / f;
}

std::complex<double> faddeeva_ref(std::complex<double> z) {
    using C = std::complex<double>;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("faddeeva_ref: non-finite argument");
    const double x = z.real(), y = z.imag();
    if (y < 0.0) return 2.0 * std::exp(-z * z) - faddeeva_ref(-z);

    constexpr double h = 0.4;
    constexpr int K = 24;
    const C zz = z * z;

    auto midpoint_sum = [&]() {
        C s(0.0, 0.0);
        for (int k = 0; k < K; ++k) {
            const double tk = (k + 0.5) * h;
            s += std::exp(-tk * tk) / (zz - tk * tk);
        }
        return C(0.0, 1.0) * z * (h / M_PI) * 2.0 * s;
    };

    if (y >= 3.0) {
        // the poles are far from the contour: plain midpoint rule suffices
        return midpoint_sum();
    }

    // Near the real axis the quadrature error is dominated by the poles at
    // +-z; it has a closed form which we add back. The correction denominator
    // vanishes on the rule's own nodes, so pick whichever of the two
    // interleaved rules keeps x away from its nodes.
    const double frac = x / h - std::floor(x / h);
    const bool use_midpoint = std::abs(frac - 0.5) > 0.25;
    const C two_pi_iz_h = C(0.0, -2.0 * M_PI / h) * z;
    if (use_midpoint) {
        return midpoint_sum() + 2.0 * std::exp(-zz) / (1.0 + std::exp(two_pi_iz_h));
    }
    C s = 0.5 / zz; // k = 0 node of the trapezoid rule, half weight folded in x2 below
    for (int k = 1; k < K; ++k) {
        const double tk = k * h;
        s += std::exp(-tk * tk) / (zz - tk * tk);
    }
    const C base = C(0.0, 1.0) * z * (h / M_PI) * 2.0 * s;
    return base + 2.0 * std::exp(-zz) / (1.0 - std::exp(two_pi_iz_h));
}

namespace {

double trapezoid_weight(int i, int r) { return (i == 0 || i == r) ? 0.5 : 1.0; }

// direct 2-D trapezoid of the defining integrand of the cross-covariance
double kyu_trap(const SpaceTimePoint& py, const SpaceTimePoint& pu,
                const KernelParams& kp, const MechanisticParams& mech,
                const GreensConfig& cfg, int r) {
    const double l = cfg.domain_len;
    const double t = py.t;
    if (t == 0.0) return 0.0;
    const int N = cfg.n_terms;

    std::vector<double> omega(N), beta(N), sinx(N);
    for (int n = 0; n < N; ++n) {
        omega[n] = (n + 1) * M_PI / l;
        beta[n] = mech.lambda + mech.diff * omega[n] * omega[n];
        sinx[n] = std::sin(omega[n] * py.x);
    }
    auto green = [&](double xi, double dt) {
        double s = 0.0;
        for (int n = 0; n < N; ++n)
            s += sinx[n] * std::sin(omega[n] * xi) * std::exp(-beta[n] * dt);
        return 2.0 / l * s;
    };

    const double dxi = l / r;
    const double dtau = t / r;
    double sum = 0.0;
    for (int i = 0; i <= r; ++i) {
        const double xi = i * dxi;
        const double kx = se(xi, pu.x, kp.theta_x);
        const double wi = trapezoid_weight(i, r);
        double inner = 0.0;
        for (int j = 0; j <= r; ++j) {
            const double tau = j * dtau;
            inner += trapezoid_weight(j, r) * green(xi, t - tau) *
                     se(tau, pu.t, kp.theta_t);
        }
        sum += wi * kx * inner;
    }
    return kp.sigma2 * mech.s_rate * sum * dxi * dtau;
}

double time_block_trap(double t, double tp, double bn, double bm, double theta,
                       int r) {
    if (t == 0.0 || tp == 0.0) return 0.0;
    const double dt = t / r;
    const double dtp = tp / r;
    double sum = 0.0;
    for (int i = 0; i <= r; ++i) {
        const double tau = i * dt;
        const double ei = std::exp(-bn * (t - tau));
        const double wi = trapezoid_weight(i, r);
        double inner = 0.0;
        for (int j = 0; j <= r; ++j) {
            const double taup = j * dtp;
            const double d = (tau - taup) / theta;
            inner += trapezoid_weight(j, r) * std::exp(-bm * (tp - taup)) *
                     std::exp(-d * d);
        }
        sum += wi * ei * inner;
    }
    return sum * dt * dtp;
}

double space_block_trap(int n, int m, double theta, double l, int r) {
    const double wn = n * M_PI / l;
    const double wm = m * M_PI / l;
    const double dxi = l / r;
    double sum = 0.0;
    for (int i = 0; i <= r; ++i) {
        const double xi = i * dxi;
        const double wi = trapezoid_weight(i, r) * std::sin(wn * xi);
        double inner = 0.0;
        for (int j = 0; j <= r; ++j) {
            const double xip = j * dxi;
            const double d = (xi - xip) / theta;
            inner += trapezoid_weight(j, r) * std::sin(wm * xip) * std::exp(-d * d);
        }
        sum += wi * inner;
    }
    return sum * dxi * dxi;
}

double kyy_trap(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                const KernelParams& kp, const MechanisticParams& mech,
                const GreensConfig& cfg, int r) {
    if (p1.t == 0.0 || p2.t == 0.0) return 0.0;
    const double l = cfg.domain_len;
    const int N = cfg.n_terms;
    double sum = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double wn = n * M_PI / l;
        const double bn = mech.lambda + mech.diff * wn * wn;
        for (int m = 1; m <= N; ++m) {
            const double wm = m * M_PI / l;
            const double bm = mech.lambda + mech.diff * wm * wm;
            const double tb = time_block_trap(p1.t, p2.t, bn, bm, kp.theta_t, r);
            const double xb = space_block_trap(n, m, kp.theta_x, l, r);
            sum += std::sin(wn * p1.x) * std::sin(wm * p2.x) * tb * xb;
        }
    }
    return 4.0 * kp.sigma2 * mech.s_rate * mech.s_rate / (l * l) * sum;
}

} // namespace

QuadResult quad_kyu(const SpaceTimePoint& py, const SpaceTimePoint& pu,
                    const KernelParams& kp, const MechanisticParams& mech,
                    const GreensConfig& cfg, int resolution) {
    kp.validate();
    mech.validate();
    cfg.validate();
    if (resolution < 32)
        throw ParameterError("quad_kyu: resolution must be >= 32 per axis");
    QuadResult out;
    out.coarse = kyu_trap(py, pu, kp, mech, cfg, resolution);
    out.fine = kyu_trap(py, pu, kp, mech, cfg, 2 * resolution);
    out.delta = std::abs(out.fine - out.coarse);
    out.value = (4.0 * out.fine - out.coarse) / 3.0;
    return out;
}

QuadResult quad_kyy(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                    const KernelParams& kp, const MechanisticParams& mech,
                    const GreensConfig& cfg, int resolution) {
    kp.validate();
    mech.validate();
    cfg.validate();
    if (resolution < 32)
        throw ParameterError("quad_kyy: resolution must be >= 32 per axis");
    QuadResult out;
    out.coarse = kyy_trap(p1, p2, kp, mech, cfg, resolution);
    out.fine = kyy_trap(p1, p2, kp, mech, cfg, 2 * resolution);
    out.delta = std::abs(out.fine - out.coarse);
    out.value = (4.0 * out.fine - out.coarse) / 3.0;
    return out;
}

namespace {

double stencil_d1(const std::function<double(double)>& f, double h) {
    return (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
}

double stencil_d2(const std::function<double(double)>& f, double h) {
    return (-f(2.0 * h) + 16.0 * f(h) - 30.0 * f(0.0) + 16.0 * f(-h) - f(-2.0 * h)) /
           (12.0 * h * h);
}

} // namespace

double fd_operator_apply(const KernelSurface& f, ArgPair pair,
                         const MechanisticParams& mech, double x, double t,
                         double xp, double tp, double hx, double ht) {
    mech.validate();
    if (!(hx > 0.0) || !(ht > 0.0))
        throw ParameterError("fd_operator_apply: steps must be > 0");
    double dt = 0.0, dxx = 0.0, val = 0.0;
    if (pair == ArgPair::Second) {
        dt = stencil_d1([&](double e) { return f(x, t, xp, tp + e); }, ht);
        dxx = stencil_d2([&](double e) { return f(x, t, xp + e, tp); }, hx);
        val = f(x, t, xp, tp);
    } else {
        dt = stencil_d1([&](double e) { return f(x, t + e, xp, tp); }, ht);
        dxx = stencil_d2([&](double e) { return f(x + e, t, xp, tp); }, hx);
        val = f(x, t, xp, tp);
    }
    return (dt + mech.lambda * val - mech.diff * dxx) / mech.s_rate;
}

double fd_operator_apply_both(const KernelSurface& f,
                              const MechanisticParams& mech, double x, double t,
                              double xp, double tp, double hx, double ht) {
    KernelSurface inner = [&](double a, double b, double c, double d) {
        return fd_operator_apply(f, ArgPair::Second, mech, a, b, c, d, hx, ht);
    };
    return fd_operator_apply(inner, ArgPair::First, mech, x, t, xp, tp, hx, ht);
}

double richardson2(const std::function<double(double)>& g, double h) {
    const double a = g(h), b = g(h / 2.0), c = g(h / 4.0);
    const double r1 = (16.0 * b - a) / 15.0;
    const double r2 = (16.0 * c - b) / 15.0;
    return (64.0 * r2 - r1) / 63.0;
}

Eigen::MatrixXd pde_solve(const Eigen::MatrixXd& u, const MechanisticParams& mech,
                          const PdeGrid& grid) {
    mech.validate();
    if (grid.nx < 3 || grid.nt < 2)
        throw ParameterError("pde_solve: need nx >= 3 and nt >= 2");
    if (u.rows() != grid.nx || u.cols() != grid.nt)
        throw ParameterError("pde_solve: u must be nx x nt");
    if (!(grid.domain_len > 0.0) || !(grid.t_max > 0.0))
        throw ParameterError("pde_solve: invalid grid extents");

    const int nx = grid.nx, nt = grid.nt;
    const int ni = nx - 2; // interior nodes
    const double dx = grid.domain_len / (nx - 1);
    const double dt = grid.t_max / (nt - 1);
    const double r = mech.diff * dt / (2.0 * dx * dx);
    const double c = mech.lambda * dt / 2.0;

    // (1 + c + 2r) y_i - r (y_{i-1} + y_{i+1}) on the left,
    // (1 - c - 2r) y_i + r (y_{i-1} + y_{i+1}) + dt S (u^k + u^{k+1})/2 on the right
    const double diag = 1.0 + c + 2.0 * r;
    const double off = -r;

    // Thomas factorization of the constant tridiagonal system
    std::vector<double> cp(ni);
    {
        double piv = diag;
        if (std::abs(piv) < 1e-300) throw NumericalError("pde_solve: singular system");
        cp[0] = off / piv;
        for (int i = 1; i < ni; ++i) {
            piv = diag - off * cp[i - 1];
            if (std::abs(piv) < 1e-300)
                throw NumericalError("pde_solve: singular system");
            cp[i] = off / piv;
        }
    }

    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(nx, nt);
    std::vector<double> rhs(ni), sol(ni);
    for (int k = 0; k + 1 < nt; ++k) {
        for (int i = 0; i < ni; ++i) {
            const int gi = i + 1;
            rhs[i] = (1.0 - c - 2.0 * r) * y(gi, k) +
                     r * (y(gi - 1, k) + y(gi + 1, k)) +
                     0.5 * dt * mech.s_rate * (u(gi, k) + u(gi, k + 1));
        }
        // forward sweep
        double piv = diag;
        sol[0] = rhs[0] / piv;
        for (int i = 1; i < ni; ++i) {
            piv = diag - off * cp[i - 1];
            sol[i] = (rhs[i] - off * sol[i - 1]) / piv;
        }
        // back substitution
        for (int i = ni - 2; i >= 0; --i) sol[i] -= cp[i] * sol[i + 1];
        for (int i = 0; i < ni; ++i) y(i + 1, k + 1) = sol[i];
    }
    return y;
}

} // namespace rdgp::oracle
