#pragma once

// The pinned demonstration corpus: small named objects with known verdicts,
// shared by `perfacto demo`, the acceptance runner and the sample data.

#include <string>
#include <vector>

#include "perfacto/colimit.hpp"
#include "perfacto/complex.hpp"

namespace perfacto::corpus {

/// disc(0, Z) -> Z@0, the identity in degree 0.
ChainMap disc_projection();
/// Z@0.
ChainComplex integers_at_zero();
/// Z/6 in degrees 0..terms-1 with differentials alternating .2 and .3.
ChainComplex z6_window(int terms = 7);
/// Z/2@0 over Z/6.
ChainComplex z2_over_z6();
/// Z/2 --.3--> Z/6 --reduce--> Z/3 in degrees 2, 1, 0 over Z/6.
ChainComplex z6_three_term();
/// Z@-1 included into disc(0, Z) against the zero map: homology does not
/// commute with this coequalizer.
FiniteDiagram homology_failing_coequalizer();

struct Check {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
};

/// Runs every pinned assertion.
std::vector<Check> run_demo();

}  // namespace perfacto::corpus
