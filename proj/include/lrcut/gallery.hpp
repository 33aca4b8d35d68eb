#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrcut/scheme.hpp"

namespace lrcut {

using GalleryParams = std::map<std::string, std::string>;

struct GalleryExpectations {
  std::vector<std::size_t> kernel_ranks;  // r_i
  bool lr1 = true;
  bool totally_irrational = true;
  std::string certificate;  // expected lr2 certificate kind, if any
  std::string overall;      // expected cubical verdict
};

struct GalleryEntry {
  std::string name;
  Scheme scheme;
  GalleryExpectations expect;
};

/// Names: fibonacci, codim1, numberfield, ammann_beenker, penrose,
/// lemma_5_3, lemma_5_5, liouville, cubic_line.
/// Common parameter: window=cubical|canonical.
GalleryEntry build(const std::string& name, const GalleryParams& params = {});
std::vector<std::string> gallery_names();

}  // namespace lrcut
