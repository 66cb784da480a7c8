#pragma once

#include <stdexcept>
#include <string>

namespace datareq {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A curve formula is undefined for the given inputs (e.g. log of a
// non-positive argument).
class DomainError : public Error {
public:
    using Error::Error;
};

// The requested target score lies above what the model/curve can reach.
class UnreachableError : public Error {
public:
    using Error::Error;
};

// A model failed the monotonicity check required for inversion.
class NotMonotoneError : public Error {
public:
    using Error::Error;
};

// The optimizer could not produce a usable model.
class FitError : public Error {
public:
    using Error::Error;
};

// Every curve family failed to fit.
class AllFitsFailedError : public Error {
public:
    using Error::Error;
};

// A subset schedule cannot be generated (e.g. more subsets than points).
class InvalidScheduleError : public Error {
public:
    using Error::Error;
};

// No family produced a finite data-requirement estimate.
class NoEstimatesError : public Error {
public:
    using Error::Error;
};

// A simulation target is not reachable on the ground-truth curve.
class InvalidTargetError : public Error {
public:
    using Error::Error;
};

// No correction factor on the search grid satisfies all targets.
class CalibrationError : public Error {
public:
    using Error::Error;
};

// An aggregate was requested over an empty collection.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Malformed data passed to a constructor (bad anchors, bad config, ...).
class InvalidDataError : public Error {
public:
    using Error::Error;
};

// A file could not be parsed; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace datareq
