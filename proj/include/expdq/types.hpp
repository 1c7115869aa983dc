#pragma once

#include <Eigen/Dense>

namespace expdq {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using VectorX = Eigen::Vector<Scalar, Eigen::Dynamic>;

}  // namespace expdq
