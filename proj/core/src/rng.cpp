#include "sedh/rng.hpp"

#include <cmath>
#include <numbers>

namespace sedh::rng {

double Stream::gaussian(std::uint64_t j) const {
    std::uint64_t p = j >> 1;
    double u1 = uniform(2 * p);
    double u2 = uniform(2 * p + 1);
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    return (j & 1) ? radius * std::sin(angle) : radius * std::cos(angle);
}

void fill_gaussians(const Stream& st, double* out, std::size_t count) {
    for (std::size_t p = 0; 2 * p < count; ++p) {
        double u1 = st.uniform(2 * p);
        double u2 = st.uniform(2 * p + 1);
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        out[2 * p] = radius * std::cos(angle);
        if (2 * p + 1 < count) out[2 * p + 1] = radius * std::sin(angle);
    }
}

}  // namespace sedh::rng
