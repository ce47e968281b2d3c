// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/bridge.hpp"

#include "tempo/errors.hpp"

namespace tempo {

Statement request(std::string service, std::vector<SignalExpr> args,
                  const Event& e) {
  if (service.empty()) {
    throw AstError("request: empty service name");
  }
  if (!e.valid()) {
    throw AstError("request: invalid completion event");
  }
  for (const auto& a : args) {
    if (!a.valid()) {
      throw AstError("request: invalid argument expression");
    }
  }
  StmtNode n;
  n.kind = StmtKind::request;
  n.service = std::move(service);
  n.call_args = std::move(args);
  n.event = e;
  return Statement(std::make_shared<const StmtNode>(std::move(n)));
}

}  // namespace tempo
