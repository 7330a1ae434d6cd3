#pragma once

// Exception taxonomy. Every throw in the library uses one of these so callers
// (and the CLI exit-code mapping) can tell user error from numerical failure.

#include <stdexcept>
#include <string>

namespace reeblab {

// Bad argument values: unknown model name, invalid grid shape, order out of
// range. The CLI maps these to exit code 2.
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Evaluation requested outside a model's chart domain or a curve's parameter
// interval.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical precondition the caller promised does not hold (non-unit
// vector where a unit one is required, mismatched base points, ...).
class precondition_error : public std::logic_error {
public:
    explicit precondition_error(const std::string& msg) : std::logic_error(msg) {}
};

// Metric failed symmetry or positive-definiteness validation, or a linear
// solve hit a numerically singular matrix.
class metric_error : public std::runtime_error {
public:
    explicit metric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A curve violated the regularity assumption (speed too close to zero).
class regularity_error : public std::runtime_error {
public:
    explicit regularity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A sampled curve cannot support the requested derivative order at usable
// accuracy (too few nodes or spacing too coarse).
class derivative_order_error : public std::runtime_error {
public:
    explicit derivative_order_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Frame integration detected orthonormality drift beyond the per-step budget;
// the step size is too large for the requested curvatures.
class step_size_error : public std::runtime_error {
public:
    explicit step_size_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file. Carries the 1-based line number of the first offence.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, long line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

} // namespace reeblab
