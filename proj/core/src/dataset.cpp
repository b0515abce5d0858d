#include "tamperlens/dataset.hpp"

#include <algorithm>

#include "tamperlens/errors.hpp"
#include "tamperlens/netpbm.hpp"

namespace tamperlens {

LabeledDataset load_dataset(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw IoError("dataset root is not a directory: " + root.string());
  }

  LabeledDataset dataset;
  std::vector<fs::path> class_dirs;
  for (const fs::directory_entry& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) {
      continue;  // loose files under the root are ignored
    }
    const std::string name = entry.path().filename().string();
    parse_label(name);  // throws SchemaError("unknown label: ...") on anything else
    class_dirs.push_back(entry.path());
  }
  std::sort(class_dirs.begin(), class_dirs.end());

  for (const fs::path& dir : class_dirs) {
    const TamperLabel truth = parse_label(dir.filename().string());
    std::vector<fs::path> files;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      if (entry.path().filename().string().starts_with('.')) continue;
      files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const fs::path& file : files) {
      try {
        dataset.samples.push_back({file.string(), truth, load_gray(file)});
      } catch (const Error& e) {
        throw IoError("cannot decode '" + file.string() + "': " + e.what());
      }
    }
  }

  std::sort(dataset.samples.begin(), dataset.samples.end(),
            [](const DatasetSample& a, const DatasetSample& b) { return a.path < b.path; });
  return dataset;
}

}  // namespace tamperlens
