// Copyright 2026 The qtlight Authors
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

#ifndef QTLIGHT_ERROR_H
#define QTLIGHT_ERROR_H

#include <stdexcept>
#include <string>

namespace qtl {

/// Broad failure category. The CLI maps these onto process exit codes.
enum class ErrorKind {
    InvalidArgument,  // bad gate, index out of range, malformed config value
    Data,             // unreadable or malformed image/CSV input
    Numeric,          // a state or channel violated a numeric invariant
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {
    }
    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

inline Error invalid_argument(const std::string &what) {
    return Error(ErrorKind::InvalidArgument, what);
}
inline Error data_error(const std::string &what) {
    return Error(ErrorKind::Data, what);
}
inline Error numeric_error(const std::string &what) {
    return Error(ErrorKind::Numeric, what);
}

}  // namespace qtl

#endif
