// Copyright 2026 The Tempo Authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference semantics used to cross-check the engine, implemented as
// directly as possible from the definitions and sharing no code with it:
//
//  * a two-valued executor that runs one reaction under a full, fixed
//    status assignment and reports what got emitted, plus the coherence
//    enumeration built on it (an assignment is a solution iff presence
//    equals inputs union emissions);
//  * a three-valued must/can fixpoint that decides whether the reaction
//    is constructively schedulable at all, used to tell "unique but
//    self-justifying" solutions apart from genuinely unique ones.
//
// Restrictions (matched by the generator): presence-only programs over
// kernel statements without atom/local/request, conditions of the form
// now(event), loop bodies that cannot terminate in their first reaction.

#ifndef TEMPO_TESTS_ORACLE_HPP
#define TEMPO_TESTS_ORACLE_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tempo/ast.hpp"

namespace tempo::oracle {

using Assignment = std::map<std::string, bool>;

/// Selection state between reactions: paths ("0.2.1") of paused pause()
/// nodes. Mirrors the engine's per-node marks without sharing them.
using Selection = std::set<std::string>;

struct ReactionResult {
  int code = 0;  // completion code of the whole program
  std::set<std::string> emitted;
  Selection next_selection;
};

/// Runs one reaction with every status fixed up front. `resuming` is false
/// for the very first reaction. Throws std::runtime_error on statements
/// outside the supported subset or on an instantaneously restarting loop.
ReactionResult run_reaction(const Statement& program, const Assignment& statuses,
                            const Selection& selection, bool resuming);

/// All coherent assignments for one reaction: sigma such that for every
/// event e, sigma(e) holds iff e was supplied as input or the program
/// emits e when executed under sigma.
std::vector<Assignment> enumerate_solutions(const Statement& program,
                                            const std::vector<std::string>& events,
                                            const std::set<std::string>& inputs,
                                            const Selection& selection,
                                            bool resuming);

/// Three-valued fixpoint: returns true and fills `solution` when every
/// status can be decided by alternating must-emission and cannot-emit
/// pruning; returns false when statuses remain undecided (the reaction is
/// not constructively schedulable).
bool constructive_reaction(const Statement& program,
                           const std::vector<std::string>& events,
                           const std::set<std::string>& inputs,
                           const Selection& selection, bool resuming,
                           Assignment* solution);

}  // namespace tempo::oracle

#endif  // TEMPO_TESTS_ORACLE_HPP
