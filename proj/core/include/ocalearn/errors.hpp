#pragma once

#include <stdexcept>
#include <string>

namespace ocalearn {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's domain: a foreign
/// letter, a malformed file, a missing counter value.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A sample (or an enriched sample) has a word that is both positive and
/// negative.
class InconsistentSample : public InputError {
 public:
  using InputError::InputError;
};

/// No DROCA could be read off a learned DFA over the enriched alphabet.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

/// A checked algorithmic invariant failed at run time.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The random generator ran out of restarts.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// A wall-clock or iteration budget ran out.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace ocalearn
