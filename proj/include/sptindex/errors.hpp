// Copyright 2026 The sptindex Authors
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

namespace sptindex {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

/// A computation would exceed a configured size budget.
struct ResourceError : Error {
    using Error::Error;
};

/// Integer arithmetic left the representable range.
struct OverflowError : Error {
    using Error::Error;
};

/// A numeric torus value is too far from the (1/m)Z/Z lattice to be rounded.
struct SnapError : Error {
    using Error::Error;
};

struct NotCocycle : Error {
    using Error::Error;
};

struct DegenerateTransfer : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct NotProjective : Error {
    using Error::Error;
};

struct NonSymmetricGate : Error {
    using Error::Error;
};

struct HomomorphismError : Error {
    using Error::Error;
};

}  // namespace sptindex
