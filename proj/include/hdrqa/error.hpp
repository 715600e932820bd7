/*
 * Copyright 2026 The hdrqa Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HDRQA_ERROR_HPP
#define HDRQA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace hdrqa {

/// Failure classes, mapped 1:1 onto CLI exit codes (usage=1, io/format=2,
/// numeric=3).
enum class errc {
  io,       // unreadable/unwritable files, short reads
  format,   // malformed headers, schema violations, out-of-range samples
  usage,    // caller passed arguments that violate a precondition
  numeric,  // mathematically undefined result (constant vector, zero plane, ...)
};

class Error : public std::runtime_error {
 public:
  Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace hdrqa

#endif  // HDRQA_ERROR_HPP
