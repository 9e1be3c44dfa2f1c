#pragma once

#include <stdexcept>
#include <string>

namespace circlepack {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct GeometricInfeasibility : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace circlepack
