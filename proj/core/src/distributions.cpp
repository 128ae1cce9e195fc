#include "pcm/distributions.hpp"

#include <cmath>

#include "pcm/errors.hpp"
#include "pcm/rng.hpp"

namespace pcm {

std::string family_name(Family f) {
    switch (f) {
        case Family::Uniform: return "uniform";
        case Family::Normal: return "normal";
        case Family::Lognormal: return "lognormal";
        case Family::Gamma: return "gamma";
        case Family::Weibull: return "weibull";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "uniform") return Family::Uniform;
    if (name == "normal") return Family::Normal;
    if (name == "lognormal") return Family::Lognormal;
    if (name == "gamma") return Family::Gamma;
    if (name == "weibull") return Family::Weibull;
    throw ParamDomainError("unknown distribution family: " + name);
}

void validate(const InputSpec& spec) {
    switch (spec.family) {
        case Family::Uniform:
            if (!(spec.p1 < spec.p2))
                throw ParamDomainError("uniform '" + spec.name + "': requires a < b");
            break;
        case Family::Normal:
            if (!(spec.p2 > 0.0))
                throw ParamDomainError("normal '" + spec.name + "': std must be > 0");
            break;
        case Family::Lognormal:
            if (!(spec.p2 > 0.0))
                throw ParamDomainError("lognormal '" + spec.name + "': sigma must be > 0");
            break;
        case Family::Gamma:
            if (!(spec.p1 > 0.0) || !(spec.p2 > 0.0))
                throw ParamDomainError("gamma '" + spec.name + "': shape and scale must be > 0");
            break;
        case Family::Weibull:
            if (!(spec.p1 > 0.0))
                throw ParamDomainError("weibull '" + spec.name + "': shape must be > 0");
            break;
    }
    if (spec.truncation && !(*spec.truncation > 0.0))
        throw ParamDomainError("input '" + spec.name + "': truncation must be > 0");
}

double to_physical(const InputSpec& spec, double xi) {
    validate(spec);
    if (!std::isfinite(xi)) throw ParamDomainError("to_physical: xi must be finite");
    switch (spec.family) {
        case Family::Normal:
            return spec.p1 + spec.p2 * xi;
        case Family::Uniform:
            return spec.p1 + (spec.p2 - spec.p1) * (0.5 + 0.5 * std::erf(xi * M_SQRT1_2));
        case Family::Lognormal:
            return std::exp(spec.p1 + spec.p2 * xi);
        case Family::Gamma: {
            // Wilson-Hilferty cube approximation.
            double a = spec.p1, b = spec.p2;
            double s = std::sqrt(1.0 / (9.0 * a));
            double t = 1.0 - 1.0 / (9.0 * a) + xi * s;
            return a * b * t * t * t;
        }
        case Family::Weibull: {
            // Exact inverse-CDF composition for the unit-scale Weibull.
            // 1 - Phi(xi) = erfc(xi/sqrt(2))/2, kept in erfc form so large
            // positive xi does not lose the tail.
            double tail = 0.5 * std::erfc(xi * M_SQRT1_2);
            return std::pow(-std::log(tail), 1.0 / spec.p1);
        }
    }
    throw ParamDomainError("to_physical: unreachable family");
}

}  // namespace pcm
