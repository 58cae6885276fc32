#ifndef EMEND_CONFIG_HPP
#define EMEND_CONFIG_HPP

#include <stdexcept>

namespace emend {

struct RunConfig {
  // Plural genitives of s-final nouns: "wives's" when true, "wives'" when false.
  bool paper_faithful = false;
  // Leave contractions that are still standard (don't, can't, ...) unexpanded.
  bool keep_modern_contractions = false;
  int variant_depth = 2;   // chained orthographic-variant edits, 0..4
  int subcat_window = 3;   // right context for verb collocates, 1..10
  int hypothesis_cap = 64; // per-token bound; exceeding it is a diagnostic

  void validate() const {
    if (variant_depth < 0 || variant_depth > 4) {
      throw std::invalid_argument("variant_depth must be in [0, 4]");
    }
    if (subcat_window < 1 || subcat_window > 10) {
      throw std::invalid_argument("subcat_window must be in [1, 10]");
    }
    if (hypothesis_cap < 1) {
      throw std::invalid_argument("hypothesis_cap must be positive");
    }
  }
};

}  // namespace emend

#endif
