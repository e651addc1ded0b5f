// Copyright 2026 The osp-lab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace osp {

using Index = Eigen::Index;

template <typename Scalar>
using VecT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VecT<double>;
using Mat = MatT<double>;

// Thrown when vector or matrix sizes disagree with the object they are used
// with.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a numerical routine meets NaN/Inf or cannot make progress.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_dim(Index got, Index expected, const char* what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace osp
