// Copyright 2026 the clustergate authors
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

#include <stdexcept>
#include <string>

namespace clustergate {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input documents (manifests, quantities, selectors, templates).
class ParseError : public Error {
public:
    using Error::Error;
};

// A referenced object (pod, namespace, secret version, ...) does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

// A structurally valid input violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

namespace vault {

enum class ErrorCode {
    NotInitialized,
    AlreadyInitialized,
    Sealed,
    InvalidRequest,
    InvalidShare,
    PermissionDenied,
    AuthFailed,
    NotFound,
    Corrupt,
    Unavailable, // client side only: the vault endpoint could not be reached
};

class VaultError : public Error {
public:
    VaultError(ErrorCode code, const std::string& msg) : Error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace vault
} // namespace clustergate
