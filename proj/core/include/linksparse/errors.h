// Copyright 2026 The linksparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINKSPARSE_ERRORS_H_
#define LINKSPARSE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace linksparse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller supplied an argument outside the documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An input violates a precondition that the caller is responsible for, e.g.
// a non-independent schedule handed to the queue simulator.
class ContractError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent files on disk.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace linksparse

#endif  // LINKSPARSE_ERRORS_H_
