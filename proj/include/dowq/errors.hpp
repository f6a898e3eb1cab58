#pragma once

#include <stdexcept>
#include <string>

namespace dowq {

#define DOWQ_DEFINE_ERROR(Name)                                      \
    struct Name : std::runtime_error {                               \
        explicit Name(const std::string& what_arg)                   \
            : std::runtime_error(std::string(#Name) + ": " + what_arg) {} \
    }

DOWQ_DEFINE_ERROR(CycleDetected);
DOWQ_DEFINE_ERROR(DuplicateKey);
DOWQ_DEFINE_ERROR(NotComparable);
DOWQ_DEFINE_ERROR(NotBounded);
DOWQ_DEFINE_ERROR(NotAPartition);
DOWQ_DEFINE_ERROR(InvalidSpec);
DOWQ_DEFINE_ERROR(NotInFamily);
DOWQ_DEFINE_ERROR(IncompatibleModulus);
DOWQ_DEFINE_ERROR(ColouringViolation);
DOWQ_DEFINE_ERROR(ExceptionalCosetUnsupported);
DOWQ_DEFINE_ERROR(BadConstantTerm);
DOWQ_DEFINE_ERROR(NonIntegerMu);
DOWQ_DEFINE_ERROR(HypothesisViolated);
DOWQ_DEFINE_ERROR(NotAFamilyPoset);
DOWQ_DEFINE_ERROR(NoUniqueMax);

#undef DOWQ_DEFINE_ERROR

}  // namespace dowq
