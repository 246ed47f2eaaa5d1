#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qoc1d {

using complexd = std::complex<double>;

using RVec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using SpCMat = Eigen::SparseMatrix<complexd>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr complexd imag_unit{0.0, 1.0};

} // namespace qoc1d
