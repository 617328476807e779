#pragma once

namespace ambient_cycles {

struct GeometryOptions {
  // Two orbit distances closer than this are treated as a tie.
  double tie_tolerance = 1e-9;
  // Longest generator word the genus-two orbit enumeration may produce.
  int max_word_length = 12;
};

}  // namespace ambient_cycles
