#pragma once

#include <iosfwd>
#include <string>

#include "seqent/ensemble.hpp"

namespace seqent {

class model_parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plain-text model files:
//
//   # comments and blank lines are ignored
//   markov ACGT
//   0.25 0.125 0.0625 0.5625
//   ...                        (|A| rows of |A| transition probabilities)
//
//   pmp 01 2
//   ...                        (per letter, d rows of d entries)
//
// The stationary law is computed from the transitions. Rows whose sums
// drift from 1 by more than 1e-9 are rejected; smaller drift is
// renormalized away.
AnySource parse_model(std::istream& in, const std::string& origin);
AnySource load_model(const std::string& path);

}  // namespace seqent
