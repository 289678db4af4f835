// Copyright 2026 The gmesim Authors
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

#ifndef GMESIM_ERRORS_H
#define GMESIM_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmesim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
   public:
    using Error::Error;
};

class BadSubsystem : public Error {
   public:
    using Error::Error;
};

class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

class OutOfRange : public Error {
   public:
    using Error::Error;
};

/// Raised when a value violates a type invariant (non-finite entry,
/// non-unit trace, negative eigenvalue, ...).
class InvalidState : public Error {
   public:
    using Error::Error;
};

class PhotonNumberMismatch : public Error {
   public:
    using Error::Error;
};

class EmptyPostSelection : public Error {
   public:
    using Error::Error;
};

class MissingSetting : public Error {
   public:
    using Error::Error;
};

class ParseError : public Error {
   public:
    ParseError(const std::string &what, std::size_t line, std::size_t column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {
    }

    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
};

class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace gmesim

#endif
