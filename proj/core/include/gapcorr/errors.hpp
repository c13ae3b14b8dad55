#pragma once

#include <stdexcept>
#include <string>

namespace gapcorr {

// Three families, mapped to CLI exit codes 2, 3 and 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept = 0;
};

class InputError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class InvariantError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

#define GAPCORR_ERROR(Name, Base)                       \
    class Name : public Base {                          \
    public:                                             \
        explicit Name(const std::string& what)          \
            : Base(std::string(#Name ": ") + what) {}   \
    };

GAPCORR_ERROR(DomainError, InputError)
GAPCORR_ERROR(ZeroDirection, InputError)
GAPCORR_ERROR(CoincidentPoints, InputError)
GAPCORR_ERROR(PairingUnsatisfied, InputError)
GAPCORR_ERROR(ChargeNegative, InputError)
GAPCORR_ERROR(ParityError, InputError)
GAPCORR_ERROR(OverlapError, InputError)
GAPCORR_ERROR(DuplicateNodes, InputError)
GAPCORR_ERROR(CoincidentScaledPositions, InputError)
GAPCORR_ERROR(BudgetExceeded, InputError)
GAPCORR_ERROR(SpecError, InputError)

GAPCORR_ERROR(QuadratureNonConvergence, NumericError)
GAPCORR_ERROR(PrecisionExhausted, NumericError)

GAPCORR_ERROR(InconsistencyError, InvariantError)

#undef GAPCORR_ERROR

} // namespace gapcorr
