#include "rdgp/gp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rdgp/rng.hpp"

namespace rdgp {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
} // namespace

void Model::validate() const {
    hyper.mech.validate();
    hyper.kernel.validate();
    if (!(hyper.nugget_u >= 0.0) || !(hyper.nugget_y >= 0.0))
        throw ParameterError("Model: nuggets must be >= 0");
    if (variant == ModelVariant::MRNA) {
        greens.validate();
        if (domain.x_min != 0.0 || domain.x_max != greens.domain_len)
            throw ParameterError(
                "Model: the mRNA-prior variant requires domain x-range [0, domain_len]");
    }
    if (!(domain.x_max > domain.x_min) || !(domain.t_max > domain.t_min) ||
        domain.t_min < 0.0)
        throw ParameterError("Model: invalid domain box");
}

JointKernel::JointKernel(const Model& model)
    : variant_(model.variant), kp_(model.hyper.kernel), mech_(model.hyper.mech) {
    model.validate();
    if (variant_ == ModelVariant::MRNA)
        mrna_.emplace(kp_, mech_, model.greens);
}

double JointKernel::uu(const SpaceTimePoint& p, const SpaceTimePoint& q) const {
    if (variant_ == ModelVariant::MRNA) return mrna_->kuu(p, q);
    return kuu_protein(p, q, kp_, mech_);
}

double JointKernel::yy(const SpaceTimePoint& p, const SpaceTimePoint& q) const {
    if (variant_ == ModelVariant::MRNA) return mrna_->kyy(p, q);
    return kyy_protein(p, q, kp_);
}

double JointKernel::yu(const SpaceTimePoint& py, const SpaceTimePoint& pu) const {
    if (variant_ == ModelVariant::MRNA) return mrna_->kyu(py, pu);
    return kyu_protein(py, pu, kp_, mech_);
}

double JointKernel::cov(Channel a, const SpaceTimePoint& p, Channel b,
                        const SpaceTimePoint& q) const {
    if (a == Channel::U && b == Channel::U) return uu(p, q);
    if (a == Channel::Y && b == Channel::Y) return yy(p, q);
    if (a == Channel::Y && b == Channel::U) return yu(p, q);
    return yu(q, p); // cov(u(p), y(q)) = cov(y(q), u(p))
}

CholeskyFactor cholesky_with_jitter(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw ParameterError("cholesky_with_jitter: matrix must be square");
    const double mean_diag = m.diagonal().mean();

    CholeskyFactor out;
    double jitter = 0.0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        // attempts: 0, 1e-10, 1e-9, ..., 1e-4 (all relative to mean diagonal)
        if (attempt == 1)
            jitter = 1e-10 * mean_diag;
        else if (attempt > 1)
            jitter *= 10.0;
        Eigen::MatrixXd shifted = m;
        if (jitter > 0.0) shifted.diagonal().array() += jitter;
        out.llt.compute(shifted);
        if (out.llt.info() == Eigen::Success) {
            out.jitter = jitter;
            return out;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::ostringstream os;
    os << "cholesky_with_jitter: matrix not positive definite even with jitter "
       << jitter << " (min eigenvalue "
       << (es.info() == Eigen::Success ? es.eigenvalues().minCoeff()
                                       : std::nan(""))
       << ")";
    throw NumericalError(os.str());
}

CovarianceBlocks assemble_joint(const Model& model, const SpaceTimeDesign& du,
                                const SpaceTimeDesign& dy) {
    model.validate();
    du.validate_within(model.domain);
    dy.validate_within(model.domain);
    if (model.variant == ModelVariant::MRNA)
        return assemble_joint_mrna(du, dy, model.hyper.kernel, model.hyper.mech,
                                   model.greens);
    return assemble_joint_protein(du, dy, model.hyper.kernel, model.hyper.mech);
}

JointSample sample_joint(const Model& model, const SpaceTimeDesign& du,
                         const SpaceTimeDesign& dy, std::uint64_t seed) {
    const CovarianceBlocks blocks = assemble_joint(model, du, dy);
    const Eigen::MatrixXd k = blocks.joint();
    const Eigen::Index n = k.rows();

    const CholeskyFactor chol = cholesky_with_jitter(k);

    Rng rng(seed);
    Eigen::VectorXd xi(n);
    for (Eigen::Index i = 0; i < n; ++i) xi[i] = rng.normal();
    Eigen::VectorXd z = chol.llt.matrixL() * xi;

    // deterministic coordinates (zero prior variance) must not pick up jitter noise
    const double max_diag = k.diagonal().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i)
        if (k(i, i) <= 1e-14 * max_diag) z[i] = 0.0;

    JointSample out;
    out.u = z.head(blocks.n_u());
    out.y = z.tail(blocks.n_y());
    return out;
}

namespace {

struct ObsLayout {
    SpaceTimeDesign du, dy;
    Eigen::VectorXd values;   // [u values; y values]
    Eigen::VectorXd noise;    // per-point nugget, same ordering
};

ObsLayout gather_observations(const Model& model,
                              const std::vector<ChannelObservations>& obs) {
    if (obs.empty()) throw ParameterError("condition: no observations given");
    ObsLayout lay;
    std::vector<double> vu, vy, nu, ny;
    for (const auto& o : obs) {
        o.validate();
        o.design.validate_within(model.domain);
        for (std::size_t i = 0; i < o.design.size(); ++i) {
            if (o.channel == Channel::U) {
                lay.du.points.push_back(o.design.points[i]);
                vu.push_back(o.values[static_cast<Eigen::Index>(i)]);
                nu.push_back(o.nugget);
            } else {
                lay.dy.points.push_back(o.design.points[i]);
                vy.push_back(o.values[static_cast<Eigen::Index>(i)]);
                ny.push_back(o.nugget);
            }
        }
    }
    const Eigen::Index n = static_cast<Eigen::Index>(vu.size() + vy.size());
    if (n == 0) throw ParameterError("condition: no observations given");
    lay.values.resize(n);
    lay.noise.resize(n);
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < vu.size(); ++i, ++k) {
        lay.values[k] = vu[i];
        lay.noise[k] = nu[i];
    }
    for (std::size_t i = 0; i < vy.size(); ++i, ++k) {
        lay.values[k] = vy[i];
        lay.noise[k] = ny[i];
    }
    return lay;
}

Eigen::MatrixXd observed_covariance(const Model& model, const ObsLayout& lay) {
    CovarianceBlocks blocks = assemble_joint(model, lay.du, lay.dy);
    Eigen::MatrixXd k = blocks.joint();
    k.diagonal() += lay.noise;
    return k;
}

} // namespace

std::vector<PosteriorField> condition(const Model& model,
                                      const std::vector<ChannelObservations>& obs,
                                      const std::vector<ChannelQuery>& queries) {
    if (queries.empty()) throw ParameterError("condition: no queries given");
    for (const auto& q : queries) {
        if (q.design.empty()) throw ParameterError("condition: empty query design");
        q.design.validate_within(model.domain);
    }

    const ObsLayout lay = gather_observations(model, obs);
    const Eigen::MatrixXd k = observed_covariance(model, lay);
    const CholeskyFactor chol = cholesky_with_jitter(k);
    const Eigen::VectorXd alpha = chol.llt.solve(lay.values);

    const JointKernel kernel(model);
    const Eigen::Index n_u = static_cast<Eigen::Index>(lay.du.size());
    const Eigen::Index n_obs = k.rows();

    std::vector<PosteriorField> out;
    out.reserve(queries.size());
    for (const auto& q : queries) {
        const Eigen::Index nq = static_cast<Eigen::Index>(q.design.size());
        Eigen::MatrixXd ks(n_obs, nq);
        for (Eigen::Index j = 0; j < nq; ++j) {
            const SpaceTimePoint& qp = q.design.points[static_cast<std::size_t>(j)];
            for (Eigen::Index i = 0; i < n_obs; ++i) {
                const bool obs_is_u = i < n_u;
                const SpaceTimePoint& op =
                    obs_is_u ? lay.du.points[static_cast<std::size_t>(i)]
                             : lay.dy.points[static_cast<std::size_t>(i - n_u)];
                ks(i, j) = kernel.cov(obs_is_u ? Channel::U : Channel::Y, op,
                                      q.channel, qp);
            }
        }

        PosteriorField field;
        field.channel = q.channel;
        field.design = q.design;
        field.mean = ks.transpose() * alpha;
        field.variance.resize(nq);

        const Eigen::MatrixXd w = chol.llt.matrixL().solve(ks);
        for (Eigen::Index j = 0; j < nq; ++j) {
            const SpaceTimePoint& qp = q.design.points[static_cast<std::size_t>(j)];
            const double prior = kernel.cov(q.channel, qp, q.channel, qp);
            double v = prior - w.col(j).squaredNorm();
            if (v < 0.0) {
                v = 0.0;
                ++field.clamped;
            }
            field.variance[j] = v;
        }
        out.push_back(std::move(field));
    }
    return out;
}

double log_marginal_likelihood(const Model& model,
                               const std::vector<ChannelObservations>& obs) {
    const ObsLayout lay = gather_observations(model, obs);
    const Eigen::MatrixXd k = observed_covariance(model, lay);
    const CholeskyFactor chol = cholesky_with_jitter(k);
    const Eigen::VectorXd alpha = chol.llt.solve(lay.values);
    const double n = static_cast<double>(k.rows());
    return -0.5 * lay.values.dot(alpha) - 0.5 * chol.log_det() - 0.5 * n * kLog2Pi;
}

namespace {

// log-space view of the non-frozen hyperparameter fields
struct ParamSpace {
    std::vector<double*> slots;
    std::vector<std::string> names;

    static ParamSpace active_fields(Hyperparameters& h) {
        ParamSpace ps;
        auto consider = [&](bool frozen, double* slot, const char* name) {
            if (!frozen && *slot > 0.0) {
                ps.slots.push_back(slot);
                ps.names.emplace_back(name);
            }
        };
        consider(h.frozen.s_rate, &h.mech.s_rate, "s_rate");
        consider(h.frozen.lambda, &h.mech.lambda, "lambda");
        consider(h.frozen.diff, &h.mech.diff, "diff");
        consider(h.frozen.sigma2, &h.kernel.sigma2, "sigma2");
        consider(h.frozen.theta_x, &h.kernel.theta_x, "theta_x");
        consider(h.frozen.theta_t, &h.kernel.theta_t, "theta_t");
        consider(h.frozen.nugget_u, &h.nugget_u, "nugget_u");
        consider(h.frozen.nugget_y, &h.nugget_y, "nugget_y");
        return ps;
    }

    Eigen::VectorXd read_log() const {
        Eigen::VectorXd v(slots.size());
        for (std::size_t i = 0; i < slots.size(); ++i) v[i] = std::log(*slots[i]);
        return v;
    }

    void write_log(const Eigen::VectorXd& v) {
        for (std::size_t i = 0; i < slots.size(); ++i) *slots[i] = std::exp(v[i]);
    }
};

} // namespace

FitResult fit(const Model& model, const std::vector<ChannelObservations>& obs,
              const FitOptions& options) {
    model.validate();
    if (options.restarts < 1) throw ParameterError("fit: restarts must be >= 1");
    if (options.max_iters < 0) throw ParameterError("fit: max_iters must be >= 0");

    Model work = model;
    ParamSpace ps = ParamSpace::active_fields(work.hyper);
    const Eigen::Index d = static_cast<Eigen::Index>(ps.slots.size());

    FitResult result;
    result.hyper = model.hyper;

    auto objective = [&](const Eigen::VectorXd& logp) -> double {
        ps.write_log(logp);
        try {
            result.n_evals += 1;
            return -log_marginal_likelihood(work, obs);
        } catch (const Error&) {
            return 1e12; // factorization or parameter failure: steer away
        }
    };

    const Eigen::VectorXd log0 = ps.read_log();
    const double f0 = objective(log0);
    if (f0 >= 1e12)
        throw NumericalError("fit: likelihood evaluation failed at the initial point");
    result.initial_loglik = -f0;
    result.loglik = -f0;

    if (d == 0 || options.max_iters == 0) {
        result.trace.push_back(result.loglik);
        return result; // nothing to optimize
    }

    Eigen::VectorXd best_x = log0;
    double best_f = f0;

    Rng rng(options.seed);
    for (int restart = 0; restart < options.restarts; ++restart) {
        Eigen::VectorXd x0 = log0;
        if (restart > 0)
            for (Eigen::Index i = 0; i < d; ++i) x0[i] += 0.5 * rng.normal();

        // Nelder-Mead with standard coefficients
        std::vector<Eigen::VectorXd> xs(d + 1, x0);
        std::vector<double> fs(d + 1);
        for (Eigen::Index i = 0; i < d; ++i) xs[i + 1][i] += options.step;
        for (Eigen::Index i = 0; i <= d; ++i) fs[i] = objective(xs[i]);

        for (int iter = 0; iter < options.max_iters; ++iter) {
            std::vector<int> order(d + 1);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return fs[a] < fs[b]; });
            const int lo = order[0], hi = order[d], second_hi = order[d - 1];

            if (fs[lo] < best_f) {
                best_f = fs[lo];
                best_x = xs[lo];
            }
            result.trace.push_back(-best_f);
            if (std::abs(fs[hi] - fs[lo]) <=
                options.ftol * (std::abs(fs[lo]) + 1e-12))
                break;

            Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
            for (int i = 0; i <= d; ++i)
                if (i != hi) centroid += xs[i];
            centroid /= static_cast<double>(d);

            const Eigen::VectorXd xr = centroid + (centroid - xs[hi]);
            const double fr = objective(xr);
            if (fr < fs[lo]) {
                const Eigen::VectorXd xe = centroid + 2.0 * (centroid - xs[hi]);
                const double fe = objective(xe);
                if (fe < fr) {
                    xs[hi] = xe;
                    fs[hi] = fe;
                } else {
                    xs[hi] = xr;
                    fs[hi] = fr;
                }
            } else if (fr < fs[second_hi]) {
                xs[hi] = xr;
                fs[hi] = fr;
            } else {
                const Eigen::VectorXd xc =
                    centroid + 0.5 * ((fr < fs[hi] ? xr : xs[hi]) - centroid);
                const double fc = objective(xc);
                if (fc < std::min(fr, fs[hi])) {
                    xs[hi] = xc;
                    fs[hi] = fc;
                } else {
                    for (int i = 0; i <= d; ++i) {
                        if (i == lo) continue;
                        xs[i] = xs[lo] + 0.5 * (xs[i] - xs[lo]);
                        fs[i] = objective(xs[i]);
                    }
                }
            }
        }
        for (int i = 0; i <= d; ++i)
            if (fs[i] < best_f) {
                best_f = fs[i];
                best_x = xs[i];
            }
    }

    if (best_f >= 1e12)
        throw NumericalError("fit: all restarts failed factorization");

    ps.write_log(best_x);
    result.hyper = work.hyper;
    result.loglik = -best_f;
    if (result.trace.empty() || result.trace.back() != result.loglik)
        result.trace.push_back(result.loglik);
    return result;
}

} // namespace rdgp
