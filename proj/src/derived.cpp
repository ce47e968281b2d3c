// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#include "tempo/derived.hpp"

#include "tempo/errors.hpp"

namespace tempo {

namespace {

constexpr const char* kDone = "done";

}  // namespace

Statement halt() { return loop(pause()); }

Statement sustain(const Event& e) { return loop(emit(e), pause()); }

Statement sustain(const Event& e, SignalExpr v) {
  return loop(emit(e, std::move(v)), pause());
}

Statement await(SignalExpr cond) {
  return trap(kDone, loop(pause(), if_(std::move(cond), exit(kDone))));
}

Statement await(SignalExpr cond, std::vector<Statement> body) {
  if (body.empty()) {
    return await(std::move(cond));
  }
  std::vector<Statement> chain;
  chain.reserve(body.size() + 1);
  chain.push_back(await(std::move(cond)));
  for (auto& s : body) {
    chain.push_back(std::move(s));
  }
  return seq(std::move(chain));
}

Statement abort(SignalExpr cond, std::vector<Statement> body) {
  SignalExpr watched = cond;
  return trap(kDone, par(suspend(std::move(cond), std::move(body)),
                         await(std::move(watched), exit(kDone))));
}

Statement until(SignalExpr cond, std::vector<Statement> body) {
  if (body.empty()) {
    throw AstError("until: body must not be empty");
  }
  body.push_back(exit(kDone));
  return trap(kDone,
              par(seq(std::move(body)), await(std::move(cond), exit(kDone))));
}

Statement loop_each(SignalExpr cond, std::vector<Statement> body) {
  return loop(abort(std::move(cond), std::move(body)));
}

Statement every(SignalExpr cond, std::vector<Statement> body) {
  SignalExpr watched = cond;
  return seq(await(std::move(cond)),
             loop_each(std::move(watched), std::move(body)));
}

}  // namespace tempo
