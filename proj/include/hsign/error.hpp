#pragma once

#include <stdexcept>
#include <string>

namespace hsign {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HSIGN_DEFINE_ERROR(Name)        \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

HSIGN_DEFINE_ERROR(NonFundamentalDiscriminant)
HSIGN_DEFINE_ERROR(DomainError)
HSIGN_DEFINE_ERROR(WeightMismatch)
HSIGN_DEFINE_ERROR(RamanujanViolation)
HSIGN_DEFINE_ERROR(MissingPrime)
HSIGN_DEFINE_ERROR(DuplicatePrime)
HSIGN_DEFINE_ERROR(ParseError)
HSIGN_DEFINE_ERROR(NotSquareFree)
HSIGN_DEFINE_ERROR(BracketError)
HSIGN_DEFINE_ERROR(DegenerateFit)
HSIGN_DEFINE_ERROR(ConfigError)
HSIGN_DEFINE_ERROR(IoError)

#undef HSIGN_DEFINE_ERROR

}  // namespace hsign
