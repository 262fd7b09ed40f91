#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ionet {

using Count = std::int64_t;
using Marking = std::vector<Count>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text; `line` is 1-based (0 when not tied to a line).
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A place or transition name that the net does not declare.
class UnknownIdentifier : public Error {
public:
    explicit UnknownIdentifier(const std::string& id) : Error("unknown identifier '" + id + "'"), id_(id) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

/// Dimension mismatches, malformed sets, out-of-range indices.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A transition was fired at a marking that does not cover its pre-mset.
class NotEnabled : public Error {
public:
    NotEnabled(std::size_t step, std::size_t transition, Marking marking, const std::string& what)
        : Error(what), step_(step), transition_(transition), marking_(std::move(marking)) {}
    /// Position of the offending step in a replayed sequence (0 for a single fire).
    std::size_t step() const { return step_; }
    std::size_t transition() const { return transition_; }
    const Marking& marking() const { return marking_; }

private:
    std::size_t step_;
    std::size_t transition_;
    Marking marking_;
};

class NotBimo : public Error {
public:
    using Error::Error;
};

class NotOrdImo : public Error {
public:
    using Error::Error;
};

class SubsetCapExceeded : public Error {
public:
    SubsetCapExceeded(std::size_t size, std::size_t cap)
        : Error("crucial-set enumeration over " + std::to_string(size) + " places exceeds the subset cap " +
                std::to_string(cap)),
          size_(size), cap_(cap) {}
    std::size_t size() const { return size_; }
    std::size_t cap() const { return cap_; }

private:
    std::size_t size_;
    std::size_t cap_;
};

/// An exploration ran out of its node budget before deciding.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t explored, const std::string& what)
        : Error(what + " (budget exhausted after " + std::to_string(explored) + " nodes)"), explored_(explored) {}
    std::size_t explored() const { return explored_; }

private:
    std::size_t explored_;
};

class CandidateBudgetExceeded : public Error {
public:
    explicit CandidateBudgetExceeded(std::size_t tested)
        : Error("candidate budget exhausted after " + std::to_string(tested) + " markings"), tested_(tested) {}
    std::size_t tested() const { return tested_; }

private:
    std::size_t tested_;
};

/// An LBA run broke the halting-on-cell-1 contract or left the tape.
class ConventionViolated : public Error {
public:
    using Error::Error;
};

class NonDeterministic : public Error {
public:
    using Error::Error;
};

}  // namespace ionet
