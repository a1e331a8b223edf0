#pragma once

#include <stdexcept>
#include <string>

namespace ctap {

// Base of every error raised by the library. Callers that only care about
// "something numerical went wrong" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Vector or matrix sizes do not match the chain.
class DimensionError : public Error {
public:
    using Error::Error;
};

// An argument lies outside its allowed range (negative coupling, time past
// the end of a schedule, site index out of range, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// The requested object is undefined for this input, e.g. a dark state whose
// normalisation vanishes.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// The spectrum does not have the structure the protocol relies on (no zero
// mode, no positive eigenvalue).
class ProtocolStateError : public Error {
public:
    using Error::Error;
};

// Gap between the zero mode and its nearest positive neighbour collapsed.
class DegenerateSpectrumError : public Error {
public:
    using Error::Error;
};

// Propagation lost unitarity beyond the allowed drift.
class IntegratorError : public Error {
public:
    using Error::Error;
};

}  // namespace ctap
