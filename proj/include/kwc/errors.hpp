// Copyright 2026 The kwc Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kwc {

// Base of every error thrown by the library. The CLI maps each subclass to a
// stable exit code, so new error kinds must pick one of the existing bases.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

// Bad user input: malformed arguments, violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "input_error"; }
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }
  const char* kind() const noexcept override { return "parse_error"; }

 private:
  std::size_t position_;
};

// A constant ladder that violates one of the admissibility inequalities.
class InadmissibleLadder : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "inadmissible_ladder"; }
};

// The function does not satisfy the growth hypotheses required by the
// constructive search. This is a mathematical "no", not an input typo.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "hypothesis_failure"; }
};

// A floor or a strict inequality could not be decided before the precision
// cap was reached.
class Undecidable : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "undecidable"; }
};

class PrecisionCapExceeded : public Undecidable {
 public:
  using Undecidable::Undecidable;
  const char* kind() const noexcept override {
    return "precision_cap_exceeded";
  }
};

// A proven inequality failed numerically. Signals a precision or
// admissibility bug, never a property of the input.
class InternalContradiction : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override {
    return "internal_contradiction";
  }
};

// A certificate was used where all of its condition flags must hold.
class CertificateRejected : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "certificate_rejected"; }
};

}  // namespace kwc
