// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_ERRORS_HPP
#define TEMPO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tempo {

/// Base class for all engine exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed statement or expression construction (empty body, unbound
/// trap label, null child, ...).
class AstError : public Error {
 public:
  using Error::Error;
};

/// Two events with the same name registered in one scope, or a local
/// declaration shadowing a visible event name.
class DuplicateEventError : public Error {
 public:
  using Error::Error;
};

/// Program references an event that is neither in the machine interface
/// nor declared by an enclosing local scope.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// input() called with an event that is not an input of the machine.
class InputKindError : public Error {
 public:
  using Error::Error;
};

/// add_listener() called with an event that is not an output.
class ListenerKindError : public Error {
 public:
  using Error::Error;
};

/// val/preval read of an event that has never carried a value.
class NoValueError : public Error {
 public:
  using Error::Error;
};

/// A host value did not have the type the engine needed (e.g. a branch
/// test that is not a boolean).
class HostTypeError : public Error {
 public:
  using Error::Error;
};

/// Demo configuration rejected (unknown genre, empty catalog, ...).
class DemoConfigError : public Error {
 public:
  using Error::Error;
};

/// Errors that abort a reaction and poison the machine. They are reported
/// through ReactionReport::error rather than thrown to the host.
enum class ReactionErrorKind {
  causality,
  instantaneous_loop,
  multiple_emit,
  emit_after_read,
  host,
};

struct ReactionError {
  ReactionErrorKind kind;
  std::string message;
};

const char* to_string(ReactionErrorKind kind);

}  // namespace tempo

#endif  // TEMPO_ERRORS_HPP
