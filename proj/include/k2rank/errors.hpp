#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace k2rank {

/// Input outside an operation's mathematical domain. The CLI maps every
/// subclass to exit code 4.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidArgument : public DomainError {
public:
    using DomainError::DomainError;
};

class NotSquarefree : public DomainError {
public:
    explicit NotSquarefree(std::int64_t prime)
        : DomainError("integer is not squarefree (divisible by " + std::to_string(prime) + "^2)"),
          prime_(prime) {}

    std::int64_t prime() const noexcept { return prime_; }

private:
    std::int64_t prime_;
};

/// A norm equation x^2 - 2y^2 = N has no integral solution.
class NoRepresentation : public DomainError {
public:
    using DomainError::DomainError;
};

class NotCoprime : public DomainError {
public:
    using DomainError::DomainError;
};

/// A lemma's hypothesis fails for the given arguments.
class ConditionNotMet : public DomainError {
public:
    using DomainError::DomainError;
};

class NotApplicable : public DomainError {
public:
    using DomainError::DomainError;
};

/// Two independent routes to the same quantity disagreed. Always a bug or a
/// counterexample, never bad input.
class ConsistencyFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace k2rank
