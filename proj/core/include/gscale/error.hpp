#ifndef GSCALE_ERROR_HPP
#define GSCALE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gscale {

// Base for all library errors. Parse/config problems map to exit code 2 in
// the CLI, numerical failures to exit code 3.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParameterError : public Error {
  public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

class DomainError : public Error {
  public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

class SingularDesignError : public Error {
  public:
    SingularDesignError(const std::string& msg, std::string column)
        : Error(msg), column_label(std::move(column)) {}
    std::string column_label;
};

class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string& msg, int iters, double gap)
        : Error(msg), iterations(iters), objective_gap(gap) {}
    int iterations = 0;
    double objective_gap = 0.0;
};

class IdentifiabilityError : public Error {
  public:
    explicit IdentifiabilityError(const std::string& msg) : Error(msg) {}
};

class DegenerateVarianceError : public Error {
  public:
    explicit DegenerateVarianceError(const std::string& msg) : Error(msg) {}
};

class InsufficientGroupError : public Error {
  public:
    explicit InsufficientGroupError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
  public:
    ParseError(const std::string& msg, std::string file, long line)
        : Error(msg), file(std::move(file)), line(line) {}
    std::string file;
    long line = 0;
};

class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace gscale

#endif
