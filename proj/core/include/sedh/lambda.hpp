#pragma once

#include <array>

#include "sedh/vec3.hpp"

namespace sedh {

/// The eight traceless 3x3 matrices spanning the linear-in-position channel
/// of the field synthesis. They are real rescalings of the SU(3) generators:
/// symmetric entries carry sqrt(3), antisymmetric ones sqrt(5), and the last
/// one is diag(1,1,-2). Their defining property is the contraction
///   sum_a L^a_ik L^a_jl = 2 (4 d_ij d_kl - d_ik d_jl - d_il d_jk),
/// which fixes the cross-correlations of the synthesized field at linear
/// order in the position.
const std::array<Mat3, 8>& lambda_basis();

/// Indices (0-based) of the antisymmetric members of lambda_basis().
inline constexpr std::array<int, 3> lambda_antisymmetric = {1, 4, 6};

/// Largest absolute deviation of sum_a L^a_ik L^a_jl from the closed form,
/// over all 81 index tuples. Exposed so verification suites can run it on a
/// tampered basis as a mutation check.
double lambda_contraction_error(const std::array<Mat3, 8>& basis);

}  // namespace sedh
