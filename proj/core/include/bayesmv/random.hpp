#pragma once

#include <cstdint>
#include <random>

namespace bayesmv {

/// SplitMix64 finalizer over (master, a, b); used to derive independent
/// sub-stream seeds from one user seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Deterministic variate generator on top of mt19937_64.
///
/// Every transformation is written out here rather than delegated to
/// <random> distributions, whose algorithms are implementation-defined, so a
/// given seed yields the same sequence on every standard library.
class RandomStream {
public:
    /// Integer degrees of freedom up to this bound use a sum of squared
    /// normals; everything else goes through the gamma sampler.
    static constexpr double exact_chi_square_limit = 16.0;

    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;
    double normal() noexcept;
    /// Gamma(shape, 1), Marsaglia–Tsang squeeze.
    double gamma(double shape);
    double chi_square(double nu);
    /// Standard Student t as Z / sqrt(χ²_ν / ν).
    double student_t(double nu);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// One standard Student t draw with `nu` degrees of freedom from `rng`.
/// Throws InvalidArgument unless nu > 0.
double student_t_draw(double nu, RandomStream& rng);

}  // namespace bayesmv
