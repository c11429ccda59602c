#include "rdgp/kernel_mrna.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "rdgp/specfun.hpp"

namespace rdgp {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// Temporal pieces of the double/single convolution integrals, written so that
// every exp{(beta theta/2)^2} is absorbed into erfcx. With B = beta*theta/2,
// A = (s-r)/theta, R = r/theta, Sv = s/theta:
//
//   P = e^{-A^2} erfcx(B-A) - e^{-R^2 - 2 B Sv} erfcx(B+R)
//   Q = e^{-Sv^2} erfcx(B-Sv) - e^{-2 Sv B} erfcx(B)
//
// and h(beta_j, s, r | beta_k) = (P - e^{-beta_k r} Q) / (beta_j + beta_k).
// P(B,s,0) == Q(B,s) and P(B,0,r) == Q(B,0) == 0 hold exactly in floating
// point, which makes the kernels vanish identically at t = 0.
double time_P(double B, double s, double r, double theta) {
    const double A = (s - r) / theta;
    const double R = r / theta;
    const double Sv = s / theta;
    return specfun::exp_nx2_erfcx(A, B - A) -
           std::exp(-R * R - 2.0 * B * Sv) * specfun::erfcx(B + R);
}

double time_Q(double B, double s, double theta) {
    const double Sv = s / theta;
    return specfun::exp_nx2_erfcx(Sv, B - Sv) -
           std::exp(-2.0 * Sv * B) * specfun::erfcx(B);
}

} // namespace

double greens(double x, double xi, double t, const GreensConfig& cfg,
              const MechanisticParams& mech) {
    cfg.validate();
    mech.validate();
    const double l = cfg.domain_len;
    if (!std::isfinite(x) || !std::isfinite(xi) || !std::isfinite(t) ||
        x < 0.0 || x > l || xi < 0.0 || xi > l || t < 0.0)
        throw DomainError("greens: arguments outside [0,l] x [0,l] x [0,inf)");
    KahanSum s;
    for (int n = 1; n <= cfg.n_terms; ++n) {
        const double w = n * M_PI / l;
        const double beta = mech.lambda + mech.diff * w * w;
        s.add(std::sin(w * x) * std::sin(w * xi) * std::exp(-beta * t));
    }
    return 2.0 / l * s.sum;
}

MrnaKernel::MrnaKernel(const KernelParams& kp, const MechanisticParams& mech,
                       const GreensConfig& cfg)
    : kp_(kp), mech_(mech), cfg_(cfg) {
    kp_.validate();
    mech_.validate();
    cfg_.validate();
    if (mech_.lambda == 0.0 && mech_.diff == 0.0)
        throw ParameterError(
            "MrnaKernel: lambda and diff cannot both be zero (beta_n would vanish)");

    const int N = cfg_.n_terms;
    const double l = cfg_.domain_len;
    const double thx = kp_.theta_x;

    omega_.resize(N);
    beta_.resize(N);
    for (int n = 1; n <= N; ++n) {
        omega_[n - 1] = n * M_PI / l;
        beta_[n - 1] = mech_.lambda + mech_.diff * omega_[n - 1] * omega_[n - 1];
    }

    // Spatial coefficients C(n,m) = int int sin(w_n xi) sin(w_m xi') k_x d xi d xi'.
    // They only involve the Faddeeva function at bounded arguments:
    //   W(n) = w(-a_n) - (-1)^n e^{-b^2} w(-a_n + i b),  a_n = thx w_n / 2, b = l/thx.
    const double b = l / thx;
    const double eb2 = std::exp(-b * b);
    std::vector<std::complex<double>> W(N);
    for (int n = 1; n <= N; ++n) {
        const double a = thx * omega_[n - 1] / 2.0;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        W[n - 1] = specfun::faddeeva({-a, 0.0}) -
                   sign * eb2 * specfun::faddeeva({-a, b});
    }

    c_.setZero(N, N);
    for (int n = 1; n <= N; ++n) {
        for (int m = n; m <= N; ++m) {
            if ((m - n) % 2 != 0) continue; // mixed parity integrates to zero
            double c = 0.0;
            if (n == m) {
                const double sign = (n % 2 == 0) ? 1.0 : -1.0;
                c = thx * kSqrtPi * l / 2.0 *
                        (W[n - 1].real() -
                         W[n - 1].imag() *
                             (thx * thx * n * M_PI / (2.0 * l * l) + 1.0 / (n * M_PI))) +
                    thx * thx / 2.0 * (sign * eb2 - 1.0);
            } else {
                c = thx * l / (kSqrtPi * (double(m) * m - double(n) * n)) *
                    (n * W[m - 1].imag() - m * W[n - 1].imag());
            }
            c_(n - 1, m - 1) = c;
            c_(m - 1, n - 1) = c;
        }
    }
}

void MrnaKernel::check_point(const SpaceTimePoint& p) const {
    if (!std::isfinite(p.x) || !std::isfinite(p.t) || p.x < 0.0 ||
        p.x > cfg_.domain_len || p.t < 0.0)
        throw DomainError("MrnaKernel: point outside [0,l] x [0,inf)");
}

double MrnaKernel::kuu(const SpaceTimePoint& p1, const SpaceTimePoint& p2) const {
    check_point(p1);
    check_point(p2);
    return kp_.sigma2 * se(p1.x, p2.x, kp_.theta_x) * se(p1.t, p2.t, kp_.theta_t);
}

double MrnaKernel::kyy(const SpaceTimePoint& p1, const SpaceTimePoint& p2) const {
    check_point(p1);
    check_point(p2);
    const int N = cfg_.n_terms;
    const double th = kp_.theta_t;
    const double t = p1.t, tp = p2.t;

    // Per-index tables; the (n,m) pair loop below is then pure arithmetic.
    std::vector<double> P1(N), Q1(N), P2(N), Q2(N), eT(N), eTp(N), sx(N), sxp(N);
    for (int j = 0; j < N; ++j) {
        const double B = beta_[j] * th / 2.0;
        try {
            P1[j] = time_P(B, tp, t, th);
            Q1[j] = time_Q(B, tp, th);
            P2[j] = time_P(B, t, tp, th);
            Q2[j] = time_Q(B, t, th);
        } catch (const OverflowError& e) {
            std::ostringstream os;
            os << e.what() << " [kyy series index n=" << (j + 1) << "]";
            throw OverflowError(os.str());
        }
        eT[j] = std::exp(-beta_[j] * t);
        eTp[j] = std::exp(-beta_[j] * tp);
        sx[j] = std::sin(omega_[j] * p1.x);
        sxp[j] = std::sin(omega_[j] * p2.x);
    }

    // K(t,t',n,m) = c0 [ h(beta_m,t',t|beta_n) + h(beta_n,t,t'|beta_m) ].
    // Summed over the upper triangle with (n,m) and (m,n) folded into one
    // addition, which keeps kyy(p1,p2) == kyy(p2,p1) bit-exact.
    const double c0 = th * kSqrtPi / 2.0;
    KahanSum acc;
    for (int n = 0; n < N; ++n) {
        for (int m = n; m < N; m += 2) {
            const double cden = beta_[n] + beta_[m];
            const double k_nm =
                c0 * ((P1[m] - eT[n] * Q1[m]) + (P2[n] - eTp[m] * Q2[n])) / cden;
            if (m == n) {
                acc.add(sx[n] * sxp[n] * k_nm * c_(n, n));
            } else {
                const double k_mn =
                    c0 * ((P1[n] - eT[m] * Q1[n]) + (P2[m] - eTp[n] * Q2[m])) / cden;
                const double pair = sx[n] * sxp[m] * k_nm * c_(n, m) +
                                    sx[m] * sxp[n] * k_mn * c_(n, m);
                acc.add(pair);
            }
        }
    }
    const double l = cfg_.domain_len;
    return 4.0 * kp_.sigma2 * mech_.s_rate * mech_.s_rate / (l * l) * acc.sum;
}

double MrnaKernel::kyu(const SpaceTimePoint& py, const SpaceTimePoint& pu) const {
    check_point(py);
    check_point(pu);
    const int N = cfg_.n_terms;
    const double th = kp_.theta_t;
    const double thx = kp_.theta_x;
    const double l = cfg_.domain_len;
    const double t = py.t, tp = pu.t, xp = pu.x;

    const double Cv = tp / th;
    const double A = (t - tp) / th;
    const double v = (l - xp) / thx;          // distance to the right boundary
    const double exv2 = std::exp(-v * v);
    const double exp2 = std::exp(-(xp / thx) * (xp / thx));

    KahanSum acc;
    for (int j = 0; j < N; ++j) {
        const double B = beta_[j] * th / 2.0;
        double ktilde = 0.0;
        try {
            ktilde = th * kSqrtPi / 2.0 *
                     (specfun::exp_nx2_erfcx(A, B - A) -
                      std::exp(-Cv * Cv - 2.0 * B * (A + Cv)) * specfun::erfcx(B + Cv));
        } catch (const OverflowError& e) {
            std::ostringstream os;
            os << e.what() << " [kyu series index n=" << (j + 1) << "]";
            throw OverflowError(os.str());
        }

        // Ctilde(x',n) = (thx sqrt(pi)/2) Im[Wt], with the lower-half-plane
        // Faddeeva value folded through w(-z) = 2 exp(-z^2) - w(z) so that
        // only bounded upper-half-plane evaluations remain:
        //   e^{-v^2} w(-a - iv) = 2 e^{-a^2} e^{-2iav} - e^{-v^2} w(a + iv).
        const double a = thx * omega_[j] / 2.0;
        const double sign = (j % 2 == 0) ? -1.0 : 1.0; // (-1)^n with n = j+1
        const std::complex<double> left =
            2.0 * std::exp(-a * a) * std::complex<double>(std::cos(2.0 * a * v),
                                                          -std::sin(2.0 * a * v)) -
            exv2 * specfun::faddeeva({a, v});
        const std::complex<double> wt =
            sign * left - exp2 * specfun::faddeeva({-a, xp / thx});
        const double ctilde = thx * kSqrtPi / 2.0 * wt.imag();

        acc.add(std::sin(omega_[j] * py.x) * ktilde * ctilde);
    }
    return 2.0 * kp_.sigma2 * mech_.s_rate / l * acc.sum;
}

double kyy_mrna(const SpaceTimePoint& p1, const SpaceTimePoint& p2,
                const KernelParams& kp, const MechanisticParams& mech,
                const GreensConfig& cfg) {
    return MrnaKernel(kp, mech, cfg).kyy(p1, p2);
}

double kyu_mrna(const SpaceTimePoint& py, const SpaceTimePoint& pu,
                const KernelParams& kp, const MechanisticParams& mech,
                const GreensConfig& cfg) {
    return MrnaKernel(kp, mech, cfg).kyu(py, pu);
}

CovarianceBlocks assemble_joint_mrna(const SpaceTimeDesign& du,
                                     const SpaceTimeDesign& dy,
                                     const KernelParams& kp,
                                     const MechanisticParams& mech,
                                     const GreensConfig& cfg) {
    const MrnaKernel k(kp, mech, cfg);
    const Eigen::Index nu = static_cast<Eigen::Index>(du.size());
    const Eigen::Index ny = static_cast<Eigen::Index>(dy.size());

    CovarianceBlocks blocks;
    blocks.k_uu.resize(nu, nu);
    for (Eigen::Index i = 0; i < nu; ++i)
        for (Eigen::Index j = i; j < nu; ++j) {
            const double v = k.kuu(du.points[i], du.points[j]);
            blocks.k_uu(i, j) = v;
            blocks.k_uu(j, i) = v;
        }

    blocks.k_yy.resize(ny, ny);
    for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = i; j < ny; ++j) {
            const double v = k.kyy(dy.points[i], dy.points[j]);
            blocks.k_yy(i, j) = v;
            blocks.k_yy(j, i) = v;
        }

    blocks.k_yu.resize(ny, nu);
    for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = 0; j < nu; ++j)
            blocks.k_yu(i, j) = k.kyu(dy.points[i], du.points[j]);

    return blocks;
}

} // namespace rdgp
