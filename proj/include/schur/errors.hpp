#pragma once

#include <stdexcept>
#include <string>

namespace schur {

// Caller passed parameters outside an operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A result failed an internal consistency check (e.g. a solver model that
// does not satisfy its formula).
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Problem too large for the requested operation or integer width.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotTabulated : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

} // namespace schur
