#pragma once

#include <optional>
#include <string>

namespace pcm {

enum class Family { Uniform, Normal, Lognormal, Gamma, Weibull };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// One uncertain physical parameter, expressed as a transform of a
// standard normal variate xi.
struct InputSpec {
    std::string name;
    Family family = Family::Normal;
    // Uniform: p1=a, p2=b. Normal: p1=mean, p2=std. Lognormal: p1=mu, p2=sigma
    // of the underlying normal. Gamma: p1=shape, p2=scale. Weibull: p1=shape.
    double p1 = 0.0;
    double p2 = 0.0;
    // Symmetric srv-space bound, Monte Carlo sampling only.
    std::optional<double> truncation;
};

// Throws ParamDomainError on invalid parameters.
void validate(const InputSpec& spec);

// Maps a standard normal variate to the physical parameter value.
// Monotone nondecreasing in xi for every family.
double to_physical(const InputSpec& spec, double xi);

}  // namespace pcm
