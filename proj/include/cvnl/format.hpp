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

#pragma once

#include <string>

namespace cvnl {

/// Significant digits used for every number written to CSV or JSON.
inline constexpr int kReportDigits = 12;

/// `value` rounded to kReportDigits significant digits.
double round_sig(double value);

/// printf("%.12g") rendering.
std::string format_sig(double value);

}  // namespace cvnl
