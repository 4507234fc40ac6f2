// Copyright 2026 The Leggett Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace leggett {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A value left its mathematical domain (NaN, infinity, or a clamp beyond
/// rounding slack).
class NumericDomainError : public Error {
 public:
  using Error::Error;
};

/// A probability reconstructed from (MA, MB, C) is negative beyond tolerance.
class PositivityViolation : public Error {
 public:
  PositivityViolation(int alpha, int beta, double probability)
      : Error("negative probability p(" + std::to_string(alpha) + "," + std::to_string(beta) +
              ") = " + std::to_string(probability)),
        alpha_(alpha),
        beta_(beta),
        probability_(probability) {}

  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  double probability() const { return probability_; }

 private:
  int alpha_;
  int beta_;
  double probability_;
};

/// Raw probability tables whose marginals depend on the remote setting.
class SignalingError : public Error {
 public:
  using Error::Error;
};

/// Visibility above the range where the Werner construction is valid.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds what a solver is willing to enumerate.
class CapExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Malformed input document.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace leggett
