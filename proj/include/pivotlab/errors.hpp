// Copyright 2026 The pivotlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace pivotlab {

/// A policy under which some vertex cannot reach the sink; vertex values are
/// undefined and the Bellman system may be singular.
class NotWeakUnichainError : public std::runtime_error {
 public:
  explicit NotWeakUnichainError(const std::string& what) : std::runtime_error(what) {}
};

/// Reduced costs are only defined for edges leaving agent vertices.
class NotAgentEdgeError : public std::runtime_error {
 public:
  explicit NotAgentEdgeError(const std::string& what) : std::runtime_error(what) {}
};

/// Switch applied at a vertex with a single outgoing edge.
class NotSwitchableError : public std::runtime_error {
 public:
  explicit NotSwitchableError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the domain of a bit helper or a generator.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Gadget probability outside (0,1].
class BadProbabilityError : public std::runtime_error {
 public:
  explicit BadProbabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Bland selection over a candidate without a number.
class MissingNumberError : public std::runtime_error {
 public:
  explicit MissingNumberError(const std::string& what) : std::runtime_error(what) {}
};

/// Policy iteration hit its iteration cap before running out of switches.
class IterationCapError : public std::runtime_error {
 public:
  explicit IterationCapError(const std::string& what) : std::runtime_error(what) {}
};

/// Simplex hit its pivot cap before reaching optimality.
class PivotCapError : public std::runtime_error {
 public:
  explicit PivotCapError(const std::string& what) : std::runtime_error(what) {}
};

/// A zero-length (or tied) simplex step; these instances are expected to be
/// non-degenerate, so this is a fidelity failure.
class DegeneratePivotError : public std::runtime_error {
 public:
  explicit DegeneratePivotError(const std::string& what) : std::runtime_error(what) {}
};

/// Start basis singular or with a negative basic value.
class InfeasibleBasisError : public std::runtime_error {
 public:
  explicit InfeasibleBasisError(const std::string& what) : std::runtime_error(what) {}
};

/// Flux LP construction requires every randomization successor to be an
/// agent vertex.
class UnsupportedTopologyError : public std::runtime_error {
 public:
  explicit UnsupportedTopologyError(const std::string& what) : std::runtime_error(what) {}
};

/// A runtime invariant that should hold on these instances was violated
/// (weak unichain broken mid-run, value sum decreased, policy revisited,
/// nonzero Bellman residual). Signals a bug, not bad input.
class InvariantViolationError : public std::logic_error {
 public:
  explicit InvariantViolationError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pivotlab
