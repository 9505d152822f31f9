#pragma once

#include <string>
#include <utility>
#include <vector>

#include "edc/classifiers.hpp"

namespace edc {

struct LabeledDataset {
  Matrix features;
  std::vector<std::string> labels;
  std::vector<std::string> vocabulary;  // distinct labels, first appearance

  std::size_t size() const { return features.size(); }
  std::size_t dim() const { return features.empty() ? 0 : features.front().size(); }
};

/// Parses a CSV file (RFC-4180-style quoting) into a labeled dataset.
/// label_column is either a header name (requires has_header) or a 0-based
/// column index given as a number. All other columns must parse as reals.
LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        bool has_header);

/// Feature-only variant: every column is a feature, no labels.
Matrix load_csv_features(const std::string& path, bool has_header);

/// Per class c with N_c rows, sends round(fraction * N_c) rows to train,
/// rounding halves down. Selection is uniform without replacement; row order
/// within each split preserves the original dataset order.
std::pair<LabeledDataset, LabeledDataset> stratified_split(
    const LabeledDataset& data, double fraction, Rng& rng);

void save_model(const std::string& path, const BinaryModel& model);
void save_model(const std::string& path, const OvoEnsemble& ensemble);

/// Tagged union for the two model document kinds.
struct LoadedModel {
  bool is_ovo = false;
  std::vector<BinaryModel> binaries;  // one entry unless is_ovo
  std::vector<std::string> labels;    // ovo label vocabulary

  const BinaryModel& binary() const { return binaries.front(); }
  OvoEnsemble ovo() const;
};

/// Loads a model document, revalidating the stored statistics against the
/// stored training data. Rejects unknown format versions and corrupt files.
LoadedModel load_model(const std::string& path);

}  // namespace edc
