#include "bayesmv/random.hpp"

#include <cmath>

#include "bayesmv/error.hpp"

namespace bayesmv {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

double RandomStream::uniform() noexcept {
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u > 0.0) {
            return u;
        }
    }
}

double RandomStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // Marsaglia polar method.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

double RandomStream::gamma(double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw Error(ErrorCode::InvalidArgument, "gamma shape must be positive and finite");
    }
    if (shape < 1.0) {
        // Boost: Gamma(a) = Gamma(a + 1) · U^(1/a).
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

double RandomStream::chi_square(double nu) {
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw Error(ErrorCode::InvalidArgument, "chi-square degrees of freedom must be positive");
    }
    if (nu <= exact_chi_square_limit && nu == std::floor(nu)) {
        double sum = 0.0;
        for (int i = 0; i < static_cast<int>(nu); ++i) {
            const double z = normal();
            sum += z * z;
        }
        return sum;
    }
    return 2.0 * gamma(0.5 * nu);
}

double RandomStream::student_t(double nu) {
    if (!(nu > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "Student t degrees of freedom must be positive");
    }
    const double z = normal();
    return z / std::sqrt(chi_square(nu) / nu);
}

double student_t_draw(double nu, RandomStream& rng) {
    return rng.student_t(nu);
}

}  // namespace bayesmv
