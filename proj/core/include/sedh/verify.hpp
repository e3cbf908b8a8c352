#pragma once

#include <cstdint>
#include <vector>

#include "sedh/mode_bank.hpp"
#include "sedh/vec3.hpp"

namespace sedh::verify {

/// Coulomb-gauge residual: central-difference divergence of the vector
/// potential over its own scale, |div A| h / |A|. The spatial dependence is
/// polynomial of degree two, so the central difference is exact and the
/// residual is pure round-off.
double gauge_divergence_rel(const ModeBank& bank, const Vec3& rbar, double t, double h = 1e-4);

/// Relative mismatch between the electric field and -dA/dt by central time
/// differences.
double e_consistency_rel(const ModeBank& bank, const Vec3& r, double t, double zalpha,
                         double h = 1e-6);

/// Relative mismatch between the field tensor and dA_j/dx_i - dA_i/dx_j by
/// central spatial differences.
double f_consistency_rel(const ModeBank& bank, const Vec3& r, double t, double zalpha,
                         double h = 1e-5);

struct ConsistencyWorst {
    double gauge = 0.0;
    double e_field = 0.0;
    double f_tensor = 0.0;
};

/// Worst residuals over n_points random (bank, r, t) combinations.
ConsistencyWorst field_consistency(int n_points, std::uint64_t seed, double zalpha);

}  // namespace sedh::verify
