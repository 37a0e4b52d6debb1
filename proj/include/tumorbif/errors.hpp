#pragma once

#include <stdexcept>
#include <string>

namespace tumorbif {

// Base of every library error. The CLI maps the concrete types to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PositivityViolation : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class ToleranceNotMet : public Error { public: using Error::Error; };
class RegimeError : public Error { public: using Error::Error; };
class ConvergenceError : public Error { public: using Error::Error; };
class BracketError : public Error { public: using Error::Error; };
class DegenerateStart : public Error { public: using Error::Error; };
class NotABifurcationValue : public Error { public: using Error::Error; };
class AmplitudeTooLarge : public Error { public: using Error::Error; };
class SingularSystem : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

} // namespace tumorbif
