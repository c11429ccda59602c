#ifndef RDGP_TYPES_HPP
#define RDGP_TYPES_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "rdgp/errors.hpp"

namespace rdgp {

enum class Channel { U, Y }; // U = mRNA (driving force), Y = protein (output)

struct SpaceTimePoint {
    double x = 0.0;
    double t = 0.0;
};

struct SpaceTimeBox {
    double x_min = 0.0, x_max = 1.0;
    double t_min = 0.0, t_max = 1.0;

    bool contains(const SpaceTimePoint& p) const {
        return p.x >= x_min && p.x <= x_max && p.t >= t_min && p.t <= t_max;
    }
};

// Constants of the reaction-diffusion law
//   dy/dt = S u - lambda y + D d2y/dx2.
struct MechanisticParams {
    double s_rate = 1.0;  // translation rate S (output per force unit per minute)
    double lambda = 0.1;  // decay rate (1/min)
    double diff = 0.01;   // diffusion rate (position^2/min)

    void validate() const {
        if (!(std::isfinite(s_rate) && std::isfinite(lambda) && std::isfinite(diff)))
            throw ParameterError("MechanisticParams: non-finite value");
        if (s_rate <= 0.0)
            throw ParameterError("MechanisticParams: s_rate must be > 0");
        if (lambda < 0.0)
            throw ParameterError("MechanisticParams: lambda must be >= 0");
        if (diff < 0.0)
            throw ParameterError("MechanisticParams: diff must be >= 0");
    }
};

struct SpaceTimeDesign {
    std::vector<SpaceTimePoint> points;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    void validate_within(const SpaceTimeBox& box) const {
        for (const auto& p : points) {
            if (!std::isfinite(p.x) || !std::isfinite(p.t))
                throw DomainError("SpaceTimeDesign: non-finite point");
            if (!box.contains(p))
                throw DomainError("SpaceTimeDesign: point outside the declared domain box");
        }
    }
};

} // namespace rdgp

#endif
