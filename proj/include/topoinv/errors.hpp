#pragma once

#include <stdexcept>
#include <string>

namespace topoinv {

// Base of every error raised by the library. Callers that only need a
// message catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameters : public Error {
public:
    using Error::Error;
};

// No index j in the admissible range has an odd governing binomial.
class NoIndex : public Error {
public:
    using Error::Error;
};

class MixedPresentations : public Error {
public:
    MixedPresentations() : Error("elements belong to different presentations") {}
};

class UndeterminedSquare : public Error {
public:
    explicit UndeterminedSquare(int label)
        : Error("square of generator " + std::to_string(label) + " is not determined by the presentation"),
          label_(label) {}
    int label() const noexcept { return label_; }

private:
    int label_;
};

class UnsupportedPresentation : public Error {
public:
    using Error::Error;
};

class DimensionCapExceeded : public Error {
public:
    using Error::Error;
};

class WorkCapExceeded : public Error {
public:
    using Error::Error;
};

class DegreeMismatch : public Error {
public:
    using Error::Error;
};

} // namespace topoinv
