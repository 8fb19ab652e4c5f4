#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace mqsfeti {

using Index = std::int32_t;
using Vec3  = Eigen::Vector3d;
using Vec3c = Eigen::Vector3cd;
using Cplx  = std::complex<double>;

using VecR   = Eigen::VectorXd;
using VecC   = Eigen::VectorXcd;
using SpMatR = Eigen::SparseMatrix<double>;
using SpMatC = Eigen::SparseMatrix<Cplx>;

inline constexpr Index kInvalidIndex = -1;

} // namespace mqsfeti
