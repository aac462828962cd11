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


// Quick invariant suite exposed through `dmace_cli selftest`.

#pragma once

#include <string>
#include <vector>

namespace dmace
{

struct SelftestResult
{
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<SelftestResult> run_selftest(unsigned long long seed = 7);

} // namespace dmace
