#pragma once

#include <stdexcept>
#include <string>

namespace prp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state violates a structural invariant (duplicate pod, overfull queue, ...).
class InvalidState : public Error {
 public:
  using Error::Error;
};

// An instance is malformed or its departure sequence cannot be replayed.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

enum class ActionError { PlaceBusy, WrongPhase, UnknownPlace, NoDeparture };

const char* to_string(ActionError e);

// Raised when an action is not admissible in the state it is applied to.
class InvalidAction : public Error {
 public:
  InvalidAction(int step, ActionError reason, const std::string& detail)
      : Error("step " + std::to_string(step) + ": " + to_string(reason) +
              (detail.empty() ? std::string() : " (" + detail + ")")),
        step_(step),
        reason_(reason) {}

  int step() const { return step_; }
  ActionError reason() const { return reason_; }

 private:
  int step_;
  ActionError reason_;
};

// A sequence or assignment cannot be realized (e.g. more pods than places).
class Infeasible : public Error {
 public:
  using Error::Error;
};

// A search refused to run because its size estimate exceeds the cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

}  // namespace prp
