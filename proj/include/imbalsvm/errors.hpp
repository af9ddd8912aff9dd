#ifndef IMBALSVM_ERRORS_HPP_
#define IMBALSVM_ERRORS_HPP_
#pragma once

#include <cstddef>    // std::size_t
#include <stdexcept>  // std::runtime_error
#include <string>     // std::string, std::to_string

namespace imbalsvm {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (KEEL header, CSV row, config file, model file).
class parse_error : public error {
  public:
    parse_error(const std::string &msg, std::size_t line) :
        error{ "line " + std::to_string(line) + ": " + msg },
        line_{ line } {}

    explicit parse_error(const std::string &msg) :
        error{ msg } {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_{ 0 };
};

/// Well-formed input that violates a semantic requirement (too few classes, k > N, ...).
class data_error : public error {
  public:
    using error::error;
};

/// Feature vector of the wrong length.
class dimension_error : public error {
  public:
    dimension_error(std::size_t expected, std::size_t actual) :
        error{ "dimension mismatch: expected " + std::to_string(expected) + " features, got " + std::to_string(actual) } {}
};

/// Invalid configuration value.
class config_error : public error {
  public:
    using error::error;
};

/// A numerical routine could not produce a meaningful result.
class numerical_error : public error {
  public:
    using error::error;
};

}  // namespace imbalsvm

#endif  // IMBALSVM_ERRORS_HPP_
