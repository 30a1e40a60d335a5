#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itolab {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

// Grid, path or matrix shapes that do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Syntax error in a field expression; position is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Evaluation left the domain of an operator (x/0, log(-1), ...).
class EvalError : public Error {
public:
    EvalError(const std::string& message, std::string subexpression)
        : Error(message), subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

// A path failed during time stepping.
class SimulationError : public Error {
public:
    static constexpr std::size_t kNoPath = static_cast<std::size_t>(-1);

    SimulationError(const std::string& message, std::size_t step, std::size_t path_id = kNoPath)
        : Error(message), step_(step), path_id_(path_id) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t path_id() const noexcept { return path_id_; }

private:
    std::size_t step_;
    std::size_t path_id_;
};

// Explicit PDE step produced NaN or blew up.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& message, std::size_t step)
        : Error(message + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace itolab
