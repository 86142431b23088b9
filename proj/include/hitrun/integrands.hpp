// Copyright (c) 2026 the hitrun authors
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

#include <string>

#include "hitrun/estimators.hpp"

namespace hitrun {

/// Named integrand families:
///   constant            value c
///   coordinate          x_i (1-based index)
///   halfspace           1 if normal . x > offset else 0
///   tanh_linear         tanh(a . x + b)
///   expression          parsed from the grammar below
struct IntegrandSpec {
    std::string name;
    double value = 1.0;       // constant
    int index = 1;            // coordinate
    Vec normal;               // halfspace
    double offset = 0.0;      // halfspace
    Vec a;                    // tanh_linear
    double b = 0.0;           // tanh_linear
    std::string expr;         // expression
};

IntegrandFn make_integrand(const IntegrandSpec& spec, int dim);

/// Expression grammar (whitespace-insensitive):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | primary
///   primary := number | 'x'<digits> | 'tanh' '(' expr ')'
///            | 'expclip' '(' expr ')' | '(' expr ')'
/// Coordinates are x1..xd; expclip(t) = exp(min(t, 0)), so the result stays
/// in (0, 1]. Throws std::invalid_argument on parse errors (with position)
/// or out-of-range coordinates.
IntegrandFn parse_expression(const std::string& expr, int dim);

} // namespace hitrun
