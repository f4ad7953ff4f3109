// Copyright 2026 The gradechain Authors
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

#ifndef GRADECHAIN_ERROR_H
#define GRADECHAIN_ERROR_H

#include <stdexcept>
#include <string>

namespace gradechain {

enum class ErrorKind {
    MixedSymbolTables,
    MissingAssignment,
    WrongGroup,
    InfiniteGroup,
    AlgebraMismatch,
    BadParameter,
    ContextMismatch,
    NotMonotone,
    NotPermutable,
    BadChain,
    WindowTooSmall,
    ModelMismatch,
    ParseError,
};

const char *error_kind_name(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and tests) can dispatch on it without string matching.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace gradechain

#endif
