// Copyright 2026 The bimatrix Authors.
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

namespace bimatrix {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kernel errors.
class ZeroPivotElement : public Error {
 public:
  using Error::Error;
};

// Integer pivoting produced a non-exact quotient. Always a bug.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class SingularBasis : public Error {
 public:
  using Error::Error;
};

class InfeasibleBasis : public Error {
 public:
  using Error::Error;
};

// Model errors.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidProfile : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class NotAnEquilibrium : public Error {
 public:
  using Error::Error;
};

class TabuExhausted : public Error {
 public:
  using Error::Error;
};

class EmptyTrace : public Error {
 public:
  using Error::Error;
};

// Lemke-Howson on a strictly positive game never runs off along a ray; seeing
// one means the input violated the positivity precondition.
class RayTermination : public Error {
 public:
  using Error::Error;
};

// Line and column are 1-based; 0 when the error has no single location.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) +
                             ": " + what
                       : what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace bimatrix
