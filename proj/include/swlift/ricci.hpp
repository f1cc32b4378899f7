#pragma once

#include <Eigen/Dense>

#include "swlift/clifford.hpp"

namespace swlift {

// Ricci tensor of the circle-bundle metric g = g_base + r^2 (dtheta + a)^2 in
// the orthonormal frame {e_1*,..,e_4*, K/r}: fibre slot (1/2) r^2 |F|^2,
// horizontal block ric_base - (1/2) r^2 <i_V F, i_W F>, mixed block zero.
// Constant radius, coclosed curvature F (the imaginary fibre value at a point).
Eigen::Matrix<double, 5, 5> ricci_kk(const TwoFormFibre& F, double r,
                                     const Eigen::Matrix4d& ric_base = Eigen::Matrix4d::Zero());

// Brute-force check of the same numbers: the coordinate metric
// sum dx^2 + r^2 (dtheta + c x1 dx2)^2 on a chart, Christoffel, Riemann and
// Ricci by nested central differences at a generic point, contracted into the
// frame above. Finite-difference limited to roughly 1e-8.
Eigen::Matrix<double, 5, 5> ricci_coordinate_oracle(double c, double r);

}
