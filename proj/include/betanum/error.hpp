#pragma once

#include <stdexcept>
#include <string>

namespace betanum {

// Every failure raised by the library derives from Error so callers (the CLI in
// particular) can map kinds to exit codes with a single catch chain.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

#define BETANUM_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                         \
       public:                                                          \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

BETANUM_DEFINE_ERROR(NotPisot);
BETANUM_DEFINE_ERROR(DegenerateInput);
BETANUM_DEFINE_ERROR(DivisionByZero);
BETANUM_DEFINE_ERROR(FieldMismatch);
BETANUM_DEFINE_ERROR(OutOfRange);
BETANUM_DEFINE_ERROR(OrbitBudgetExceeded);
BETANUM_DEFINE_ERROR(InadmissibleWord);
BETANUM_DEFINE_ERROR(IndexOutOfRange);
BETANUM_DEFINE_ERROR(UnsupportedRamification);
BETANUM_DEFINE_ERROR(PrecisionExhausted);
BETANUM_DEFINE_ERROR(FloorUndecidable);
BETANUM_DEFINE_ERROR(NoPlottableAxes);
BETANUM_DEFINE_ERROR(ParseError);

#undef BETANUM_DEFINE_ERROR

}  // namespace betanum
