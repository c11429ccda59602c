#include "rdgp/lhd.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "rdgp/rng.hpp"

namespace rdgp {

LhdDesign random_lhd(const LhdConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const int n = cfg.n_points;
    LhdDesign design(n, std::vector<double>(cfg.dims, 0.0));
    std::vector<int> strata(n);
    for (int d = 0; d < cfg.dims; ++d) {
        std::iota(strata.begin(), strata.end(), 0);
        for (int i = n - 1; i > 0; --i) // Fisher-Yates
            std::swap(strata[i], strata[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        for (int i = 0; i < n; ++i)
            design[i][d] = (strata[i] + rng.uniform()) / n;
    }
    return design;
}

double min_pairwise_distance(const LhdDesign& design) {
    const std::size_t n = design.size();
    if (n < 2) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < design[i].size(); ++k) {
                const double d = design[i][k] - design[j][k];
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
    return std::sqrt(best);
}

LhdDesign maximin_sa(const LhdDesign& design, const LhdConfig& cfg) {
    cfg.validate();
    if (design.size() < 2 || cfg.sa_iterations == 0) return design;

    Rng rng(cfg.seed + 0x9e3779b97f4a7c15ull); // distinct stream from random_lhd
    LhdDesign current = design;
    double current_d = min_pairwise_distance(current);
    LhdDesign best = current;
    double best_d = current_d;
    double temperature = cfg.t0_fraction * current_d;

    const std::size_t n = current.size();
    const std::size_t dims = current[0].size();
    for (int iter = 0; iter < cfg.sa_iterations; ++iter) {
        const std::size_t col = rng.below(dims);
        const std::size_t i = rng.below(n);
        std::size_t j = rng.below(n - 1);
        if (j >= i) ++j;

        std::swap(current[i][col], current[j][col]);
        const double proposed_d = min_pairwise_distance(current);
        const double delta = proposed_d - current_d;
        bool accept = delta > 0.0;
        if (!accept && temperature > 0.0)
            accept = rng.uniform() < std::exp(delta / temperature);
        if (accept) {
            current_d = proposed_d;
            if (current_d > best_d) {
                best_d = current_d;
                best = current;
            }
        } else {
            std::swap(current[i][col], current[j][col]); // undo
        }
        temperature *= cfg.decay;
    }
    return best;
}

SpaceTimeDesign scale_to_box(const LhdDesign& design, const SpaceTimeBox& box) {
    SpaceTimeDesign out;
    out.points.reserve(design.size());
    for (const auto& p : design) {
        if (p.size() < 2) throw ParameterError("scale_to_box: need a 2-D design");
        out.points.push_back({box.x_min + (box.x_max - box.x_min) * p[0],
                              box.t_min + (box.t_max - box.t_min) * p[1]});
    }
    return out;
}

} // namespace rdgp
