#pragma once

#include <stdexcept>
#include <string>

namespace permlift {

enum class ErrorKind {
    domain,
    precondition,
    parameter,
    capability,
    protocol,
    parse,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Element, key or register value outside its domain.
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::domain, w) {}
};

/// Inputs that violate an operation's stated precondition (e.g. a tuple that is not good).
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& w) : Error(ErrorKind::precondition, w) {}
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& w) : Error(ErrorKind::parameter, w) {}
};

/// Requested work is beyond what can be enumerated or represented here.
struct CapabilityError : Error {
    explicit CapabilityError(const std::string& w) : Error(ErrorKind::capability, w) {}
};

/// An adversary or challenger broke its query budget or message contract.
struct ProtocolError : Error {
    explicit ProtocolError(const std::string& w) : Error(ErrorKind::protocol, w) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::parse, w) {}
};

struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorKind::io, w) {}
};

}
