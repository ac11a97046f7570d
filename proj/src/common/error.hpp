/*
 * Copyright (c) 2026 The stablelike Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stablelike {

enum class ErrorCode {
  kInvalidArgument = 1,
  kDomain = 2,
  kPole = 3,
  kConvergence = 4,
  kModel = 5,
  kIo = 6,
  kInternal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::kInvalidArgument, what) {}
};

/// Input outside the mathematical domain of an operation (e.g. alpha = 2).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::kDomain, what) {}
};

class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(ErrorCode::kPole, what) {}
};

/// Quadrature or series that did not reach its tolerance. Carries the last two iterates.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : Error(ErrorCode::kConvergence, what + " (last iterates " + std::to_string(previous) +
                                           ", " + std::to_string(last) + ")"),
        message_(what),
        previous_(previous),
        last_(last) {}
  /// Same iterates, message extended with where the failure happened.
  ConvergenceError in_context(const std::string& where) const {
    return ConvergenceError(message_ + " [" + where + "]", previous_, last_);
  }
  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  std::string message_;
  double previous_;
  double last_;
};

/// A model that violates its own declared structure (non-finite values, broken envelope).
class ModelError : public Error {
 public:
  ModelError(const std::string& what, std::vector<double> point = {})
      : Error(ErrorCode::kModel, what), point_(std::move(point)) {}
  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

}  // namespace stablelike
