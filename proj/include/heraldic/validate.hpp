/**
 * Copyright 2026 The heraldic authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HERALDIC_VALIDATE_HPP
#define HERALDIC_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace heraldic {

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double max_error = 0.0;
    double tolerance = 0.0;
};

/// Cross-checks the numerical core against independent oracles: matching
/// enumeration, closed-form photon statistics, amplitude-probability
/// consistency and inclusion-exclusion post-selection.
std::vector<ValidationCheck> run_validation_suite(std::uint64_t seed = 12345);

} // namespace heraldic

#endif
