#pragma once

// Closed forms for the alpha = 18 construction in terms of lambda_3, 4, 5, 7,
// xi_2^2 and xi_9^2, written independently of the recursive builder.

#include <map>

#include "hyperclass/numeric.hpp"

namespace hyperclass::testing {

struct Example18 {
    std::map<long, Real> x;      // x_4..x_13
    std::map<long, Real> xi_sq;  // xi_6^2, xi_10^2..xi_13^2
};

inline Example18 example18(const Real& l3_sq, const Real& l4_sq, const Real& l5_sq, const Real& l7_sq,
                           const Real& xi2_sq, const Real& xi9_sq) {
    const Real l3 = sqrt(l3_sq);
    const Real l4 = sqrt(l4_sq);
    const Real l5 = sqrt(l5_sq);
    const Real s = xi2_sq;
    const Real half(0.5);
    const Real alpha(18);

    Example18 e;
    e.x[4] = half * s;
    e.x[5] = e.x[4];
    e.x[6] = (l3 - half) * s;
    e.x[7] = e.x[6];
    e.x[8] = (l4 * l3 - half) * s;
    e.x[9] = (l4 * l3 - l3 + half * l3_sq) * s;
    e.x[10] = (l5 * l4 * l3 - l3 + half * l3_sq) * s;
    e.x[11] = e.x[10];
    e.x[12] = (sqrt(2 * (l3 - half)) * l5 * l4 * l3 - l4 * l3 + l4 * l3_sq - half * l3_sq) * s;
    e.x[13] = e.x[12];

    e.xi_sq[6] = 2 * (l3 - half) * l5_sq * l4_sq * l3_sq * s;

    const Real f5 = (alpha - 5) / 5 / (2 * l3_sq * l4_sq) * (1 - 1 / l5_sq);
    const Real f7 = (alpha - 7) / 7 / (2 * l3_sq * l4_sq * l5_sq) * (1 - 1 / l7_sq);
    // |y_k0| = x_{17-k0}
    const Real y4 = e.x[13];
    const Real y5 = e.x[12];
    const Real y6 = e.x[11];
    const Real y7 = e.x[10];
    const Real y8 = e.x[9];
    e.xi_sq[10] = y7 / y8 * xi9_sq;
    e.xi_sq[11] = y6 / (y8 / xi9_sq + f7);
    e.xi_sq[12] = y5 / (y8 / xi9_sq + f7);
    e.xi_sq[13] = y4 / (y8 / xi9_sq + f5 + f7);
    return e;
}

}  // namespace hyperclass::testing
