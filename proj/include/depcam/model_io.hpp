#ifndef DEPCAM_MODEL_IO_HPP
#define DEPCAM_MODEL_IO_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "depcam/inference.hpp"

namespace depcam {

inline constexpr const char* kModelFileVersion = "depcam-model/1";

struct FitStats {
  int outer_iters = 0;
  double final_objective = 0.0;
  bool converged = false;
};

struct ModelFile {
  MixtureModel model;
  std::uint64_t seed = 0;
  FitStats fit_stats;
};

// JSON text. Bases are stored row-major (D*d values) and re-validated on
// load with an orthonormality tolerance of 1e-6.
std::string to_json(const ModelFile& file);
ModelFile model_from_json(const std::string& text);

void save_model(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace depcam

#endif  // DEPCAM_MODEL_IO_HPP
