// Copyright 2026 The cvnl Authors
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

#include "cvnl/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace cvnl {

std::string format_sig(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kReportDigits, value);
    return buf;
}

double round_sig(double value) {
    if (!std::isfinite(value)) {
        return value;
    }
    return std::strtod(format_sig(value).c_str(), nullptr);
}

}  // namespace cvnl
