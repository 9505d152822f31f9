#include "edc/dataio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "edc/error.hpp"

namespace edc {

namespace {

using nlohmann::json;

std::vector<std::string> parse_csv_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_number(const std::string& cell, std::size_t row, std::size_t col) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r'))
    --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error("non-numeric feature cell '" + cell + "' at row " +
                std::to_string(row) + ", column " + std::to_string(col));
  }
  return value;
}

std::vector<std::vector<std::string>> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::vector<std::vector<std::string>> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
    records.push_back(parse_csv_record(line));
  }
  if (records.empty()) throw Error("empty CSV file: " + path);
  return records;
}

}  // namespace

LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        bool has_header) {
  auto records = read_records(path);
  const std::size_t ncols = records.front().size();

  std::size_t label_idx = ncols;
  if (has_header) {
    const auto& header = records.front();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == label_column) {
        label_idx = i;
        break;
      }
    }
  }
  if (label_idx == ncols) {
    // Fall back to a numeric column index.
    try {
      const long idx = std::stol(label_column);
      if (idx >= 0 && static_cast<std::size_t>(idx) < ncols) {
        label_idx = static_cast<std::size_t>(idx);
      }
    } catch (...) {
    }
  }
  if (label_idx == ncols) {
    throw Error("label column '" + label_column + "' not found");
  }

  LabeledDataset ds;
  const std::size_t first = has_header ? 1 : 0;
  for (std::size_t r = first; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != ncols) {
      throw Error("ragged row " + std::to_string(r) + ": expected " +
                  std::to_string(ncols) + " fields, got " +
                  std::to_string(rec.size()));
    }
    Vec row;
    row.reserve(ncols - 1);
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c == label_idx) continue;
      row.push_back(parse_number(rec[c], r, c));
    }
    const std::string& label = rec[label_idx];
    if (std::find(ds.vocabulary.begin(), ds.vocabulary.end(), label) ==
        ds.vocabulary.end()) {
      ds.vocabulary.push_back(label);
    }
    ds.features.push_back(std::move(row));
    ds.labels.push_back(label);
  }
  if (ds.features.empty()) throw Error("CSV has no data rows: " + path);
  return ds;
}

Matrix load_csv_features(const std::string& path, bool has_header) {
  auto records = read_records(path);
  const std::size_t ncols = records.front().size();
  Matrix out;
  for (std::size_t r = has_header ? 1 : 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != ncols) {
      throw Error("ragged row " + std::to_string(r));
    }
    Vec row;
    row.reserve(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
      row.push_back(parse_number(rec[c], r, c));
    }
    out.push_back(std::move(row));
  }
  if (out.empty()) throw Error("CSV has no data rows: " + path);
  return out;
}

std::pair<LabeledDataset, LabeledDataset> stratified_split(
    const LabeledDataset& data, double fraction, Rng& rng) {
  if (fraction <= 0.0 || fraction >= 1.0) {
    throw Error("stratified_split: fraction must be in (0, 1)");
  }
  std::vector<bool> to_train(data.size(), false);
  for (const auto& label : data.vocabulary) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.labels[i] == label) rows.push_back(i);
    }
    if (rows.size() < 2) {
      throw Error("stratified_split: class '" + label + "' too small");
    }
    // round(fraction * N_c) with halves resolved downward.
    const auto n_train = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(rows.size()) - 0.5));
    // Partial Fisher-Yates draw of n_train rows without replacement.
    for (std::size_t k = 0; k < n_train; ++k) {
      const std::size_t j = k + rng.uniform_index(rows.size() - k);
      std::swap(rows[k], rows[j]);
      to_train[rows[k]] = true;
    }
  }
  LabeledDataset train, test;
  for (std::size_t i = 0; i < data.size(); ++i) {
    LabeledDataset& dst = to_train[i] ? train : test;
    dst.features.push_back(data.features[i]);
    dst.labels.push_back(data.labels[i]);
    if (std::find(dst.vocabulary.begin(), dst.vocabulary.end(),
                  data.labels[i]) == dst.vocabulary.end()) {
      dst.vocabulary.push_back(data.labels[i]);
    }
  }
  return {std::move(train), std::move(test)};
}

namespace {

constexpr int kModelFormatVersion = 1;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (const auto& row : m) rows.push_back(row);
  return rows;
}

Matrix matrix_from_json(const json& j) {
  Matrix m;
  for (const auto& row : j) m.push_back(row.get<Vec>());
  return m;
}

json binary_model_doc(const BinaryModel& model) {
  const TrainStats& s = model.stats();
  return json{
      {"rule", rule_name(model.rule())},
      {"d", model.training().dim()},
      {"m", model.training().m()},
      {"n", model.training().n()},
      {"label_f", model.label_f()},
      {"label_g", model.label_g()},
      {"class_f", matrix_to_json(model.training().class_f)},
      {"class_g", matrix_to_json(model.training().class_g)},
      {"stats",
       {{"t_ff", s.t_ff},
        {"t_gg", s.t_gg},
        {"t_fg", s.t_fg},
        {"T_ff", s.T_ff},
        {"T_gg", s.T_gg},
        {"T_fg", s.T_fg},
        {"w_bar_star", s.w_bar_star},
        {"s_fg", s.s_fg}}},
  };
}

BinaryModel binary_model_from_doc(const json& doc) {
  BinaryModel model = BinaryModel::fit(
      rule_from_name(doc.at("rule").get<std::string>()),
      matrix_from_json(doc.at("class_f")), matrix_from_json(doc.at("class_g")),
      doc.at("label_f").get<std::string>(), doc.at("label_g").get<std::string>());
  if (model.training().dim() != doc.at("d").get<std::size_t>() ||
      model.training().m() != doc.at("m").get<std::size_t>() ||
      model.training().n() != doc.at("n").get<std::size_t>()) {
    throw Error("model file: stored shape does not match training data");
  }
  const json& s = doc.at("stats");
  const TrainStats& c = model.stats();
  const bool ok = s.at("t_ff").get<double>() == c.t_ff &&
                  s.at("t_gg").get<double>() == c.t_gg &&
                  s.at("t_fg").get<double>() == c.t_fg &&
                  s.at("T_ff").get<double>() == c.T_ff &&
                  s.at("T_gg").get<double>() == c.T_gg &&
                  s.at("T_fg").get<double>() == c.T_fg &&
                  s.at("w_bar_star").get<double>() == c.w_bar_star &&
                  s.at("s_fg").get<double>() == c.s_fg;
  if (!ok) {
    throw Error("model file: stored statistics do not match training data");
  }
  return model;
}

void write_json(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << doc.dump(2) << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw Error("malformed model file " + path + ": " + e.what());
  }
  return doc;
}

}  // namespace

void save_model(const std::string& path, const BinaryModel& model) {
  json doc = binary_model_doc(model);
  doc["format_version"] = kModelFormatVersion;
  doc["kind"] = "binary_model";
  write_json(path, doc);
}

void save_model(const std::string& path, const OvoEnsemble& ensemble) {
  json models = json::array();
  for (const auto& m : ensemble.models()) models.push_back(binary_model_doc(m));
  write_json(path, json{{"format_version", kModelFormatVersion},
                        {"kind", "ovo_ensemble"},
                        {"labels", ensemble.labels()},
                        {"models", std::move(models)}});
}

OvoEnsemble LoadedModel::ovo() const {
  return OvoEnsemble::from_models(labels, binaries);
}

LoadedModel load_model(const std::string& path) {
  const json doc = read_json(path);
  try {
    if (doc.at("format_version").get<int>() != kModelFormatVersion) {
      throw Error("model file: unsupported format_version");
    }
    const auto kind = doc.at("kind").get<std::string>();
    LoadedModel out;
    if (kind == "binary_model") {
      out.binaries.push_back(binary_model_from_doc(doc));
    } else if (kind == "ovo_ensemble") {
      out.is_ovo = true;
      out.labels = doc.at("labels").get<std::vector<std::string>>();
      for (const auto& m : doc.at("models")) {
        out.binaries.push_back(binary_model_from_doc(m));
      }
      OvoEnsemble::from_models(out.labels, out.binaries);  // validate pairing
    } else {
      throw Error("model file: unknown kind '" + kind + "'");
    }
    return out;
  } catch (const json::exception& e) {
    throw Error("malformed model file " + path + ": " + e.what());
  }
}

}  // namespace edc
