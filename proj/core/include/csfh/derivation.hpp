#pragma once

// End-to-end replay of the Harnack-quantity derivation: each step pairs a
// hand-transcribed reference form with the engine's recomputation.

#include "csfh/rational.hpp"

#include <string>
#include <vector>

namespace csfh {

struct DerivationStep {
  std::string id;
  std::string title;
  std::string expected;  // transcribed form, canonical serialization
  std::string engine;    // recomputed form, canonical serialization
  bool match = false;
};

/// Runs all eight steps. `epsilon` is used by the final specialisation step.
std::vector<DerivationStep> run_derivation(const Rational& epsilon = Rational(1, 100));

/// Canonical serialization of the general heat remainder with symbolic a, b, c.
std::string general_remainder_text();

}  // namespace csfh
