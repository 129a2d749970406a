// latfuse/error.h

// Copyright 2026  The latfuse Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LATFUSE_ERROR_H_
#define LATFUSE_ERROR_H_

#include <stdexcept>
#include <string>

namespace latfuse {

// Precondition violations and algorithmic failures (cyclic input, empty
// lattice where one is required, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed files and command-line input. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
  InputError(const std::string &source, int line, const std::string &what)
      : Error(source + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace latfuse

#endif  // LATFUSE_ERROR_H_
