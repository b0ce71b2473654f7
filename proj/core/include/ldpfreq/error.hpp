// Copyright 2026 The ldpfreq Authors
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

#ifndef LDPFREQ_ERROR_HPP_
#define LDPFREQ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ldpfreq {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LDPFREQ_DEFINE_ERROR(name)          \
  class name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

// Validation
LDPFREQ_DEFINE_ERROR(NonPositiveEpsilon);
LDPFREQ_DEFINE_ERROR(InvalidDomain);
LDPFREQ_DEFINE_ERROR(InvalidConfig);
LDPFREQ_DEFINE_ERROR(IndexOutOfDomain);
LDPFREQ_DEFINE_ERROR(KOutOfRange);

// Tallying / estimation
LDPFREQ_DEFINE_ERROR(MixedReportKinds);
LDPFREQ_DEFINE_ERROR(DomainMismatch);
LDPFREQ_DEFINE_ERROR(EmptyInput);
LDPFREQ_DEFINE_ERROR(EmptyTally);
LDPFREQ_DEFINE_ERROR(DegenerateP);
LDPFREQ_DEFINE_ERROR(DegenerateChannel);
LDPFREQ_DEFINE_ERROR(LengthMismatch);

// Hadamard / audit
LDPFREQ_DEFINE_ERROR(NotPowerOfTwo);
LDPFREQ_DEFINE_ERROR(OutputSpaceTooLarge);

// Data ingestion
LDPFREQ_DEFINE_ERROR(FileNotFound);
LDPFREQ_DEFINE_ERROR(ColumnNotFound);
LDPFREQ_DEFINE_ERROR(EmptyColumn);
LDPFREQ_DEFINE_ERROR(RaggedRow);
LDPFREQ_DEFINE_ERROR(InvalidSpec);
LDPFREQ_DEFINE_ERROR(IoError);

#undef LDPFREQ_DEFINE_ERROR

}  // namespace ldpfreq

#endif  // LDPFREQ_ERROR_HPP_
