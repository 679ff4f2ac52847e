#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flatcert {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// Raised when reducing a rational coefficient whose denominator vanishes mod p.
class DenominatorDivisibleByP : public Error {
public:
    using Error::Error;
};

class ResourceLimit : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

class NotAMember : public Error {
public:
    explicit NotAMember(std::size_t index)
        : Error("target " + std::to_string(index) + " is not a member of the ideal"), index_(index)
    {
    }
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// An identity that must hold by construction failed to hold.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace flatcert
