// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TEMPO_DERIVED_HPP
#define TEMPO_DERIVED_HPP

#include <utility>
#include <vector>

#include "tempo/ast.hpp"

namespace tempo {

// Statements built purely from kernel constructors. None of them introduce
// a new runtime node kind; the interpreter only ever sees kernel nodes.
// Internal traps use the label "done"; exits bind to the nearest enclosing
// trap, so user code nested inside these forms should avoid that label.

/// Pauses forever: loop(pause()).
Statement halt();

/// Emits at every reaction: loop(emit(e), pause()).
Statement sustain(const Event& e);
Statement sustain(const Event& e, SignalExpr v);

/// Pauses, then terminates at the first later reaction where cond is true:
/// trap("done", loop(pause(), if_(cond, exit("done")))). A condition
/// already true at the starting reaction is not seen.
Statement await(SignalExpr cond);

/// await(cond) followed by body in the reaction the wait terminates.
Statement await(SignalExpr cond, std::vector<Statement> body);

/// Strong abortion: the body gets no control at the reaction cond becomes
/// true. trap("done", par(suspend(cond, body), await(cond, exit("done")))).
/// Note the body terminating on its own does not terminate the abort; only
/// the condition does.
Statement abort(SignalExpr cond, std::vector<Statement> body);

/// Weak abortion: the body runs one last time at the reaction cond becomes
/// true, then the whole statement terminates. Also terminates if the body
/// does.
Statement until(SignalExpr cond, std::vector<Statement> body);

/// Starts body immediately; whenever cond becomes true, strongly kills the
/// body and restarts it within that same reaction.
Statement loop_each(SignalExpr cond, std::vector<Statement> body);

/// Like loop_each but waits for cond before the first iteration.
Statement every(SignalExpr cond, std::vector<Statement> body);

template <class... Ss>
Statement await(SignalExpr cond, Statement first, Ss... rest) {
  return await(std::move(cond),
               std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement abort(SignalExpr cond, Statement first, Ss... rest) {
  return abort(std::move(cond),
               std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement until(SignalExpr cond, Statement first, Ss... rest) {
  return until(std::move(cond),
               std::vector<Statement>{std::move(first), std::move(rest)...});
}
template <class... Ss>
Statement loop_each(SignalExpr cond, Statement first, Ss... rest) {
  return loop_each(std::move(cond), std::vector<Statement>{std::move(first),
                                                           std::move(rest)...});
}
template <class... Ss>
Statement every(SignalExpr cond, Statement first, Ss... rest) {
  return every(std::move(cond),
               std::vector<Statement>{std::move(first), std::move(rest)...});
}

}  // namespace tempo

#endif  // TEMPO_DERIVED_HPP
