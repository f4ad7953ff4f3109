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

#include "gradechain/error.h"

namespace gradechain {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MixedSymbolTables:
            return "MixedSymbolTables";
        case ErrorKind::MissingAssignment:
            return "MissingAssignment";
        case ErrorKind::WrongGroup:
            return "WrongGroup";
        case ErrorKind::InfiniteGroup:
            return "InfiniteGroup";
        case ErrorKind::AlgebraMismatch:
            return "AlgebraMismatch";
        case ErrorKind::BadParameter:
            return "BadParameter";
        case ErrorKind::ContextMismatch:
            return "ContextMismatch";
        case ErrorKind::NotMonotone:
            return "NotMonotone";
        case ErrorKind::NotPermutable:
            return "NotPermutable";
        case ErrorKind::BadChain:
            return "BadChain";
        case ErrorKind::WindowTooSmall:
            return "WindowTooSmall";
        case ErrorKind::ModelMismatch:
            return "ModelMismatch";
        case ErrorKind::ParseError:
            return "ParseError";
    }
    return "Error";
}

}  // namespace gradechain
