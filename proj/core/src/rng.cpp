#include "pcm/rng.hpp"

#include <cmath>

#include "pcm/errors.hpp"

namespace pcm {

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

namespace {

// Acklam's rational approximation, |error| < 1.15e-9 over (0,1).
double acklam(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ParamDomainError("inverse_normal_cdf: p must be in (0,1)");
    }
    double x = acklam(p);
    // One Halley step against the exact CDF pushes the error below 1e-12.
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + tag * 0x9E3779B97F4A7C15ull + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double NormalSampler::next() {
    // Uniform in (0,1): 53 random bits offset by half an ulp.
    double u = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    return inverse_normal_cdf(u);
}

double NormalSampler::next_truncated(double k) {
    if (!(k > 0.0)) throw ParamDomainError("truncation bound must be > 0");
    for (;;) {
        double x = next();
        if (std::abs(x) <= k) return x;
    }
}

std::vector<double> sample_srv(std::size_t count, std::uint64_t seed) {
    if (count < 1) throw ParamDomainError("sample_srv: count must be >= 1");
    NormalSampler s(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = s.next();
    return out;
}

std::vector<double> sample_srv_truncated(std::size_t count, std::uint64_t seed, double k) {
    if (count < 1) throw ParamDomainError("sample_srv: count must be >= 1");
    NormalSampler s(seed);
    std::vector<double> out(count);
    for (auto& v : out) v = s.next_truncated(k);
    return out;
}

}  // namespace pcm
