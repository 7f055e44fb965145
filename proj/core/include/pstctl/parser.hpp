// Copyright (c) 2026 The pstctl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <pstctl/formula.hpp>
#include <pstctl/model.hpp>

namespace pstctl {

// Parses the block-structured modeling language:
//
//   agent <name> {
//     clocks x, y;
//     init <loc>;
//     loc <name> [x <= 3] {
//       labels p, q;
//       protocol a, b;
//       on a when x >= 1 goto { 1/2: reset {x} -> l1; 1/2: -> l2; }
//     }
//   }
//
// '//' starts a line comment. Throws ParseError on syntax errors and
// ModelError when validation reports errors (warnings are kept on the side,
// see validate_all).
Network parse_model(const std::string& text);

// Parses a formula. State layer: propositions, !, &, |, ->, <<A,B>> g.
// Strategy layer g: !, &, and probability-bounded path operators
// P{<,<=,>=,>}num followed by F[a,b] g, G[a,b] g, or (g U[a,b] g) /
// (g R[a,b] g). The coalition modality binds the next unary expression;
// parenthesize compound bodies. Returns the surface tree (run desugar before
// evaluation).
FormulaPtr parse_formula(const std::string& text);

}  // namespace pstctl
