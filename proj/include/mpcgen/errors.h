//
// Copyright 2026 The mpcgen Authors
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
//

//
// Copyright 2026 The mpcgen Authors
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
//

#ifndef MPCGEN_ERRORS_H_
#define MPCGEN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mpcgen {

// Root of every error raised by the library. The CLI maps the subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Value outside the representable fixed-point range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Overlapping share components disagree, or a revealed value is inconsistent.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Caller violated an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Bad user-facing parameter (epsilon, delta, holder count, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class IngestionError : public Error {
 public:
  using Error::Error;
};

// Peer disconnect, socket failure, or a local network that was aborted.
class TransportError : public Error {
 public:
  using Error::Error;
};

// A message arrived with an unexpected round tag.
class DesyncError : public TransportError {
 public:
  using TransportError::TransportError;
};

// A round did not complete before the configured timeout.
class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

// Released tables carry no usable signal (e.g. every class count is
// non-positive after noise).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Wraps any failure with the pipeline phase it happened in.
class PhaseError : public Error {
 public:
  PhaseError(std::string phase, const std::string& what)
      : Error("[" + phase + "] " + what), phase_(std::move(phase)) {}
  const std::string& phase() const { return phase_; }

 private:
  std::string phase_;
};

}  // namespace mpcgen

#endif  // MPCGEN_ERRORS_H_
