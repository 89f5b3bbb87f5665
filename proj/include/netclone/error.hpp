/* Copyright 2026-present The netclone-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace netclone {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define NETCLONE_DEFINE_ERROR(Name)      \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  }

// codec
NETCLONE_DEFINE_ERROR(TruncatedHeader);
NETCLONE_DEFINE_ERROR(InvalidType);
NETCLONE_DEFINE_ERROR(InvalidField);

// switch / routing
NETCLONE_DEFINE_ERROR(InsufficientServers);
NETCLONE_DEFINE_ERROR(UnknownGroup);
NETCLONE_DEFINE_ERROR(NonPositiveLatency);

// client / engine
NETCLONE_DEFINE_ERROR(NonPositiveRate);
NETCLONE_DEFINE_ERROR(EmptySamples);
NETCLONE_DEFINE_ERROR(BadWindow);

// experiment runner
NETCLONE_DEFINE_ERROR(ConfigError);
NETCLONE_DEFINE_ERROR(SchemaError);
NETCLONE_DEFINE_ERROR(IoError);

#undef NETCLONE_DEFINE_ERROR

}  // namespace netclone
