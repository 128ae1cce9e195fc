#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pcm {

// Standard normal CDF and its inverse. inverse_normal_cdf is accurate to
// better than 1e-12 absolute (Acklam initializer plus one Halley step).
double normal_cdf(double x);
double inverse_normal_cdf(double p);

// splitmix64 step; used to derive independent substream seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

// Seed-reproducible standard normal stream. Values are produced by
// inverse-CDF transform of mt19937_64 uniforms, so the sequence is
// identical across platforms for a given seed.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    double next();

    // Rejection-sampled draw with |value| <= k.
    double next_truncated(double k);

private:
    std::mt19937_64 gen_;
};

std::vector<double> sample_srv(std::size_t count, std::uint64_t seed);
std::vector<double> sample_srv_truncated(std::size_t count, std::uint64_t seed, double k);

}  // namespace pcm
