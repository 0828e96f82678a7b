#pragma once

// Per-face assembly loops over a whole surface. `serial` is the reference
// implementation; `parallel` distributes faces (and vertex gathers) over
// OpenMP threads and must agree with `serial` to rounding.

#include <array>
#include <vector>

#include <Eigen/SparseCore>

#include "ipack/variational.hpp"

namespace ipack::kernels {

// Below this many faces the parallel kernels run single-threaded.
inline constexpr int kParallelFaceThreshold = 512;

namespace serial {

std::vector<std::array<double, 3>> face_angles(const WeightedSurface& s, const RadiusVector& r);
std::vector<double> curvature(const WeightedSurface& s, const RadiusVector& r);
double total_energy(const WeightedSurface& s, const UCoordinates& u);
Eigen::SparseMatrix<double> angle_hessian(const WeightedSurface& s, const UCoordinates& u);

}  // namespace serial

namespace parallel {

std::vector<std::array<double, 3>> face_angles(const WeightedSurface& s, const RadiusVector& r);
std::vector<double> curvature(const WeightedSurface& s, const RadiusVector& r);
double total_energy(const WeightedSurface& s, const UCoordinates& u);
Eigen::SparseMatrix<double> angle_hessian(const WeightedSurface& s, const UCoordinates& u);

}  // namespace parallel

// Library default.
using namespace parallel;

}  // namespace ipack::kernels
