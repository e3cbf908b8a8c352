#include "sedh/lambda.hpp"

#include <cmath>

namespace sedh {

namespace {

std::array<Mat3, 8> build_basis() {
    const double s3 = std::sqrt(3.0);
    const double s5 = std::sqrt(5.0);
    std::array<Mat3, 8> l{};
    l[0](0, 1) = s3;  l[0](1, 0) = s3;
    l[1](0, 1) = -s5; l[1](1, 0) = s5;
    l[2](0, 0) = s3;  l[2](1, 1) = -s3;
    l[3](0, 2) = s3;  l[3](2, 0) = s3;
    l[4](0, 2) = -s5; l[4](2, 0) = s5;
    l[5](1, 2) = s3;  l[5](2, 1) = s3;
    l[6](1, 2) = -s5; l[6](2, 1) = s5;
    l[7](0, 0) = 1.0; l[7](1, 1) = 1.0; l[7](2, 2) = -2.0;
    return l;
}

}  // namespace

const std::array<Mat3, 8>& lambda_basis() {
    static const std::array<Mat3, 8> basis = build_basis();
    return basis;
}

double lambda_contraction_error(const std::array<Mat3, 8>& basis) {
    auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    double sum = 0.0;
                    for (const auto& lam : basis) sum += lam(i, k) * lam(j, l);
                    double expected = 2.0 * (4.0 * d(i, j) * d(k, l) - d(i, k) * d(j, l) - d(i, l) * d(j, k));
                    worst = std::max(worst, std::fabs(sum - expected));
                }
    return worst;
}

}  // namespace sedh
