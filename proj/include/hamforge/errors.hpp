// Copyright 2026 The hamforge Authors
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

#include <stdexcept>
#include <string>

namespace hamforge {

// Exit codes of the command-line tool double as error categories.
enum class ErrorCategory { schema = 2, domain = 3, construction = 4, verification = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const { return category_; }
  const std::string& kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define HAMFORGE_ERROR(Name, Category)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what)                               \
        : Error(ErrorCategory::Category, #Name, what) {}                 \
  };

HAMFORGE_ERROR(SchemaError, schema)

HAMFORGE_ERROR(DomainError, domain)
HAMFORGE_ERROR(ParityViolation, domain)
HAMFORGE_ERROR(BoundViolation, domain)
HAMFORGE_ERROR(HermiticityError, domain)
HAMFORGE_ERROR(TractabilityError, domain)
HAMFORGE_ERROR(DegenerateSpec, domain)

HAMFORGE_ERROR(ConstructionError, construction)
HAMFORGE_ERROR(DegenerateState, construction)
HAMFORGE_ERROR(ZeroLeadingAmplitude, construction)
HAMFORGE_ERROR(NaNAngle, construction)
HAMFORGE_ERROR(ComplexResidual, construction)
HAMFORGE_ERROR(PatternOverflow, construction)
HAMFORGE_ERROR(SparsityOverflow, construction)
HAMFORGE_ERROR(NonConvergence, construction)
HAMFORGE_ERROR(WidthMismatch, construction)
HAMFORGE_ERROR(NameCollision, construction)
HAMFORGE_ERROR(UnknownFormula, construction)

HAMFORGE_ERROR(VerificationError, verification)
HAMFORGE_ERROR(AncillaLeak, verification)
HAMFORGE_ERROR(DimensionMismatch, verification)

#undef HAMFORGE_ERROR

}  // namespace hamforge
