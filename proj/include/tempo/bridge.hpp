// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_BRIDGE_HPP
#define TEMPO_BRIDGE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tempo/ast.hpp"
#include "tempo/value.hpp"

namespace tempo {

/// Identifies one issued service request. Unique per machine lifetime.
using Token = std::uint64_t;

struct ServiceCall {
  std::string service;
  std::vector<Value> args;  // argument expressions evaluated at issue time
  Token token = 0;
};

struct Completion {
  Token token = 0;
  bool success = false;
  Value value;         // success payload
  std::string reason;  // failure diagnostic
};

inline Completion succeed(Token t, Value v) {
  return Completion{t, true, std::move(v), {}};
}
inline Completion fail(Token t, std::string reason) {
  return Completion{t, false, {}, std::move(reason)};
}

/// Thread-safe callback handed to ServiceClient::issue. Invoking it enqueues
/// the completion on the owning machine; it is applied at the next reaction.
using CompletionSink = std::function<void(Completion)>;

/// Host integration seam for asynchronous services. Both entry points are
/// called from inside react() and must return immediately; real waiting
/// happens elsewhere, ending in a sink invocation. At most one completion
/// per token is honored.
class ServiceClient {
 public:
  virtual ~ServiceClient() = default;
  virtual void issue(const ServiceCall& call, CompletionSink sink) = 0;
  virtual void cancel(Token token) = 0;
};

/// Asynchronous request statement. When control reaches it, evaluates args,
/// issues the call through the machine's client, and pauses. At the
/// reaction where the completion is applied: success emits e with the
/// response value and terminates; failure terminates silently. If the
/// statement is killed while pending, cancel(token) is invoked at the end
/// of the killing reaction; killed in the very reaction it would have been
/// issued, it never issues at all.
Statement request(std::string service, std::vector<SignalExpr> args,
                  const Event& e);

}  // namespace tempo

#endif  // TEMPO_BRIDGE_HPP
