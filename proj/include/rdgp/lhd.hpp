#ifndef RDGP_LHD_HPP
#define RDGP_LHD_HPP

#include <cstdint>
#include <vector>

#include "rdgp/errors.hpp"
#include "rdgp/types.hpp"

namespace rdgp {

struct LhdConfig {
    int n_points = 10;
    int dims = 2;
    int sa_iterations = 10000;
    double t0_fraction = 0.1;  // initial temperature as a fraction of the start min-distance
    double decay = 0.995;      // geometric cooling factor, in (0,1)
    std::uint64_t seed = 0;

    void validate() const {
        if (n_points < 1) throw ParameterError("LhdConfig: n_points must be >= 1");
        if (dims < 1) throw ParameterError("LhdConfig: dims must be >= 1");
        if (sa_iterations < 0) throw ParameterError("LhdConfig: sa_iterations must be >= 0");
        if (!(decay > 0.0 && decay < 1.0)) throw ParameterError("LhdConfig: decay must be in (0,1)");
        if (!(t0_fraction > 0.0)) throw ParameterError("LhdConfig: t0_fraction must be > 0");
    }
};

// row-major: design[i] is the i-th point with cfg.dims coordinates in [0,1)
using LhdDesign = std::vector<std::vector<double>>;

// Random Latin hypercube: exactly one point per axis-aligned stratum of width
// 1/n_points in every dimension.
LhdDesign random_lhd(const LhdConfig& cfg);

double min_pairwise_distance(const LhdDesign& design);

// Simulated-annealing maximin refinement. Proposals swap two entries within
// one column, so the stratification is preserved by every accepted move.
// Returns the best design seen over the whole run.
LhdDesign maximin_sa(const LhdDesign& design, const LhdConfig& cfg);

// Affine map of a [0,1]^2 design onto a space-time box (column 0 -> x,
// column 1 -> t).
SpaceTimeDesign scale_to_box(const LhdDesign& design, const SpaceTimeBox& box);

} // namespace rdgp

#endif
