#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input that cannot be processed: bad literals, shapes, degenerate forms.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class UnsupportedField : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class ShapeMismatch : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class NotRepresented : public Error {
public:
    using Error::Error;
};

// Tracked digits ran out before an answer was determined.
class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

// Search budget or precision cap exhausted.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace dyadic
