#pragma once

#include <stdexcept>
#include <string>

namespace implicate {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Store errors.
struct MalformedAttitude : Error { using Error::Error; };
struct Inconsistent : Error { using Error::Error; };

// Ascription and dialogue-act errors.
struct UnboundSchema : Error { using Error::Error; };
struct UnknownAct : Error { using Error::Error; };
struct NotFraudulent : Error { using Error::Error; };
struct NotCommunicated : Error { using Error::Error; };
struct NoMatch : Error { using Error::Error; };

// Scenario errors carry a 1-based source position when one is known.
struct ScenarioError : Error {
  ScenarioError(const std::string& msg, int line = 0, int column = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
        line(line),
        column(column) {}
  int line;
  int column;
};
struct ParseError : ScenarioError { using ScenarioError::ScenarioError; };
struct ValidationError : ScenarioError { using ScenarioError::ScenarioError; };

}  // namespace implicate
