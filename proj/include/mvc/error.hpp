#pragma once

#include <stdexcept>
#include <string>

namespace mvc {

/// Thrown when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative solver gives up. Carries where it stopped.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, int iteration = -1, int component_count = -1)
        : std::runtime_error(what), iteration_(iteration), component_count_(component_count) {}

    int iteration() const noexcept { return iteration_; }
    int component_count() const noexcept { return component_count_; }

private:
    int iteration_;
    int component_count_;
};

/// Dataset / manifest parse failures. The message names the file and line.
class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mvc
