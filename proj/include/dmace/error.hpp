// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The dmace authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace dmace
{

enum class ErrorCategory
{
    dimension,      // operand shapes do not agree
    invalid_input,  // argument outside its domain
    numerical,      // SVD failure, non-finite values, divergence
    ambiguity,      // scaling ambiguity cannot be anchored
    generation,     // random generator could not satisfy a post-condition
    config,         // unparseable or invalid experiment configuration
    io              // file system failures
};

inline const char *category_name(ErrorCategory c)
{
    switch (c)
    {
    case ErrorCategory::dimension: return "dimension";
    case ErrorCategory::invalid_input: return "invalid_input";
    case ErrorCategory::numerical: return "numerical";
    case ErrorCategory::ambiguity: return "ambiguity";
    case ErrorCategory::generation: return "generation";
    case ErrorCategory::config: return "config";
    case ErrorCategory::io: return "io";
    }
    return "unknown";
}

// All library failures are reported through this exception type.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCategory category, const std::string &what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

  private:
    ErrorCategory category_;
};

} // namespace dmace
