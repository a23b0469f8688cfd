// Copyright 2026 The stgabor Authors.
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

#ifndef STGABOR_ERROR_HPP_
#define STGABOR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace stgabor {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied parameter is outside its documented domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Input data (volumes, datasets) violates a structural precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A computation produced NaN or Inf.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Feature vectors produced by different bank configurations were mixed.
class IncompatibleFeatures : public Error {
 public:
  using Error::Error;
};

// A file could not be parsed.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A volume header declared a zero extent.
class InvalidExtent : public FormatError {
 public:
  using FormatError::FormatError;
};

// A numbered frame sequence is missing an index.
class FrameGapError : public Error {
 public:
  FrameGapError(const std::string& what, long missing_index)
      : Error(what), missing_index_(missing_index) {}
  long missing_index() const noexcept { return missing_index_; }

 private:
  long missing_index_;
};

// Frames of one sequence disagree in width or height.
class InconsistentFrames : public Error {
 public:
  using Error::Error;
};

}  // namespace stgabor

#endif  // STGABOR_ERROR_HPP_
