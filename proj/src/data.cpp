#include "depcam/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "depcam/errors.hpp"
#include "depcam/rng.hpp"

namespace depcam {

void BinaryDataset::validate() const {
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      const double v = X(i, j);
      if (v != 0.0 && v != 1.0) {
        throw UsageError("dataset entry (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ") is not 0 or 1");
      }
    }
  }
  if (labels) {
    if (static_cast<Eigen::Index>(labels->size()) != X.rows()) {
      throw UsageError("dataset has " + std::to_string(labels->size()) +
                       " labels for " + std::to_string(X.rows()) + " rows");
    }
    for (int l : *labels) {
      if (l < 0) throw UsageError("dataset labels must be non-negative");
    }
  }
  if (!feature_names.empty() &&
      static_cast<Eigen::Index>(feature_names.size()) != X.cols()) {
    throw UsageError("feature name count does not match column count");
  }
}

BinaryDataset BinaryDataset::subset(
    const std::vector<Eigen::Index>& rows) const {
  BinaryDataset out;
  out.X.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.X.row(static_cast<Eigen::Index>(r)) = X.row(rows[r]);
  }
  if (labels) {
    std::vector<int> l;
    l.reserve(rows.size());
    for (auto r : rows) l.push_back((*labels)[static_cast<std::size_t>(r)]);
    out.labels = std::move(l);
  }
  out.feature_names = feature_names;
  return out;
}

bool BinaryDataset::operator==(const BinaryDataset& other) const {
  return X.rows() == other.X.rows() && X.cols() == other.X.cols() &&
         X == other.X && labels == other.labels;
}

namespace data {

void SyntheticConfig::validate() const {
  if (classes < 1 || prototypes_per_class < 1 || copies < 1 || dims < 1) {
    throw UsageError(
        "synthetic config: classes, prototypes, copies and dims must be >= 1");
  }
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) {
    throw UsageError("synthetic config: flip probability must be in [0,1]");
  }
  if (static_cast<int>(class_means.size()) != classes) {
    throw UsageError("synthetic config: need one mean per class (" +
                     std::to_string(classes) + "), got " +
                     std::to_string(class_means.size()));
  }
  for (double m : class_means) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw UsageError("synthetic config: class means must be in [0,1]");
    }
  }
}

SyntheticData generate_synthetic(const SyntheticConfig& cfg) {
  cfg.validate();
  const SeedStream root(cfg.seed);
  auto proto_rng = root.split("prototypes").engine();
  auto flip_rng = root.split("flips").engine();
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const Eigen::Index N = static_cast<Eigen::Index>(cfg.classes) *
                         cfg.prototypes_per_class * cfg.copies;
  SyntheticData out;
  out.clean.X.resize(N, cfg.dims);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(N));

  Eigen::Index row = 0;
  for (int c = 0; c < cfg.classes; ++c) {
    const double mean = cfg.class_means[static_cast<std::size_t>(c)];
    for (int p = 0; p < cfg.prototypes_per_class; ++p) {
      Eigen::RowVectorXd proto(cfg.dims);
      for (int i = 0; i < cfg.dims; ++i) {
        proto(i) = unit(proto_rng) < mean ? 1.0 : 0.0;
      }
      for (int copy = 0; copy < cfg.copies; ++copy) {
        out.clean.X.row(row++) = proto;
        labels.push_back(c);
      }
    }
  }
  out.clean.labels = labels;

  out.noisy = out.clean;
  for (Eigen::Index n = 0; n < N; ++n) {
    for (Eigen::Index i = 0; i < cfg.dims; ++i) {
      if (unit(flip_rng) < cfg.flip_prob) {
        out.noisy.X(n, i) = 1.0 - out.noisy.X(n, i);
      }
    }
  }

  std::vector<std::string> names;
  for (int i = 0; i < cfg.dims; ++i) names.push_back("f" + std::to_string(i));
  out.clean.feature_names = names;
  out.noisy.feature_names = std::move(names);
  return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos
                        ? std::string()
                        : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_int(const std::string& s, long& out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !s.empty();
}

bool parse_number(const std::string& s) {
  if (s.empty()) return false;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

BinaryDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    rows.push_back(split_line(line));
  }
  if (rows.empty()) throw ParseError(path.string() + ": no data rows");

  std::vector<std::string> header;
  if (std::any_of(rows.front().begin(), rows.front().end(),
                  [](const std::string& c) { return !parse_number(c); })) {
    header = rows.front();
    rows.erase(rows.begin());
  }
  if (rows.empty()) throw ParseError(path.string() + ": no data rows");

  const std::size_t width = header.empty() ? rows.front().size() : header.size();
  const bool has_label = !header.empty() && header.back() == "label";
  const std::size_t D = has_label ? width - 1 : width;
  if (D == 0) throw ParseError(path.string() + ": no feature columns");

  BinaryDataset ds;
  ds.X.resize(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(D));
  std::vector<int> labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != width) {
      throw ParseError(path.string() + ": row " + std::to_string(r + 1) +
                           " has " + std::to_string(cells.size()) +
                           " columns, expected " + std::to_string(width),
                       r + 1, 0);
    }
    for (std::size_t c = 0; c < D; ++c) {
      long v = 0;
      if (!parse_int(cells[c], v) || (v != 0 && v != 1)) {
        throw ParseError(path.string() + ": non-binary value '" + cells[c] +
                             "' at (" + std::to_string(r + 1) + "," +
                             std::to_string(c + 1) + ")",
                         r + 1, c + 1);
      }
      ds.X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          static_cast<double>(v);
    }
    if (has_label) {
      long v = 0;
      if (!parse_int(cells[D], v) || v < 0) {
        throw ParseError(path.string() + ": invalid label '" + cells[D] +
                             "' at (" + std::to_string(r + 1) + "," +
                             std::to_string(D + 1) + ")",
                         r + 1, D + 1);
      }
      labels.push_back(static_cast<int>(v));
    }
  }
  if (has_label) ds.labels = std::move(labels);
  if (!header.empty()) {
    ds.feature_names.assign(header.begin(),
                            header.begin() + static_cast<std::ptrdiff_t>(D));
  }
  return ds;
}

void save_csv(const BinaryDataset& ds, const std::filesystem::path& path) {
  ds.validate();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (Eigen::Index i = 0; i < ds.dims(); ++i) {
    if (i) out << ',';
    out << (ds.feature_names.empty() ? "f" + std::to_string(i)
                                     : ds.feature_names[static_cast<std::size_t>(i)]);
  }
  if (ds.labels) out << ",label";
  out << '\n';
  for (Eigen::Index n = 0; n < ds.size(); ++n) {
    for (Eigen::Index i = 0; i < ds.dims(); ++i) {
      if (i) out << ',';
      out << (ds.X(n, i) != 0.0 ? '1' : '0');
    }
    if (ds.labels) out << ',' << (*ds.labels)[static_cast<std::size_t>(n)];
    out << '\n';
  }
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::vector<Fold> kfold_split(Eigen::Index N, int folds, std::uint64_t seed) {
  if (folds < 2) throw UsageError("kfold_split: need at least 2 folds");
  if (N < folds) {
    throw UsageError("kfold_split: " + std::to_string(N) +
                     " samples cannot fill " + std::to_string(folds) + " folds");
  }
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(N));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  auto engine = SeedStream(seed).split("kfold").engine();
  std::shuffle(perm.begin(), perm.end(), engine);

  std::vector<Fold> out(static_cast<std::size_t>(folds));
  const Eigen::Index base = N / folds;
  const Eigen::Index extra = N % folds;
  Eigen::Index start = 0;
  for (int f = 0; f < folds; ++f) {
    const Eigen::Index len = base + (f < extra ? 1 : 0);
    auto& fold = out[static_cast<std::size_t>(f)];
    for (Eigen::Index i = 0; i < N; ++i) {
      const auto idx = perm[static_cast<std::size_t>(i)];
      if (i >= start && i < start + len) {
        fold.test.push_back(idx);
      } else {
        fold.train.push_back(idx);
      }
    }
    start += len;
  }
  return out;
}

}  // namespace data
}  // namespace depcam
