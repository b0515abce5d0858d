#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tamperlens/image.hpp"
#include "tamperlens/pipeline.hpp"

namespace tamperlens {

struct DatasetSample {
  std::string path;
  TamperLabel truth;
  GrayImage image;
};

struct LabeledDataset {
  std::vector<DatasetSample> samples;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

// Loads a class-per-directory dataset: root may contain only the
// subdirectories normal/, blurred/, rotated/ and obstructed/ (any subset),
// each holding PGM/PPM files. Every file becomes one sample labeled by its
// directory; samples are ordered lexicographically by path. Hidden files
// are skipped, plain files directly under root are ignored. Throws
// SchemaError for an unknown subdirectory name and IoError (naming the
// file) when a file cannot be decoded.
LabeledDataset load_dataset(const std::filesystem::path& root);

}  // namespace tamperlens
