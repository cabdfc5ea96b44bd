// errors.hpp: Exception hierarchy shared by all tclgen modules

#pragma once

#include <stdexcept>
#include <string>

namespace tclgen {

// Each error carries a short machine-readable category used by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& what)
        : std::runtime_error(what), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error("dimension", what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error("numerical", what) {}

protected:
    NumericalError(std::string category, const std::string& what)
        : Error(std::move(category), what) {}
};

// expm input too large to exponentiate in double precision.
class NumericalRangeError : public NumericalError {
public:
    explicit NumericalRangeError(const std::string& what)
        : NumericalError("numerical_range", what) {}
};

class StiffnessError : public NumericalError {
public:
    StiffnessError(double t, const std::string& what)
        : NumericalError("stiffness", what), time_(t) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

class SingularityError : public NumericalError {
public:
    explicit SingularityError(const std::string& what)
        : NumericalError("singularity", what) {}
};

// Two evaluation routes of the same quantity disagree beyond tolerance.
class ConsistencyError : public NumericalError {
public:
    ConsistencyError(const std::string& what, double discrepancy)
        : NumericalError("consistency", what), discrepancy_(discrepancy) {}

    double discrepancy() const noexcept { return discrepancy_; }

private:
    double discrepancy_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

} // namespace tclgen
