#include "depcam/model_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "depcam/errors.hpp"

namespace depcam {

namespace {

constexpr double kLoadTolerance = 1e-6;

using nlohmann::json;

template <typename T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("model file: missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file: bad '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_json(const ModelFile& file) {
  const auto& m = file.model;
  json j;
  j["version"] = kModelFileVersion;
  j["K"] = m.K();
  j["d"] = m.d();
  j["D"] = m.D();
  j["pi"] = std::vector<double>(m.pi.data(), m.pi.data() + m.pi.size());
  j["xi"] = m.xi;
  j["varrho"] = m.varrho;
  j["lambda"] = m.lambda;
  json comps = json::array();
  for (const auto& c : m.components) {
    std::vector<double> upsilon;
    const auto& u = c.basis.matrix();
    upsilon.reserve(static_cast<std::size_t>(u.size()));
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index col = 0; col < u.cols(); ++col) upsilon.push_back(u(r, col));
    comps.push_back({{"upsilon", upsilon},
                     {"phi", std::vector<double>(c.scales.data(),
                                                 c.scales.data() + c.scales.size())}});
  }
  j["components"] = comps;
  j["seed"] = file.seed;
  j["fit_stats"] = {{"outer_iters", file.fit_stats.outer_iters},
                    {"final_objective", file.fit_stats.final_objective},
                    {"converged", file.fit_stats.converged}};
  return j.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  const auto version = required<std::string>(j, "version");
  if (version != kModelFileVersion) {
    throw ParseError("model file: unsupported version '" + version + "'");
  }
  const auto K = required<long>(j, "K");
  const auto d = required<long>(j, "d");
  const auto D = required<long>(j, "D");
  if (K < 1 || d < 1 || D < d) throw ParseError("model file: bad K/d/D");

  ModelFile out;
  auto& m = out.model;
  const auto pi = required<std::vector<double>>(j, "pi");
  if (static_cast<long>(pi.size()) != K) throw ParseError("model file: pi length != K");
  m.pi = Eigen::Map<const Eigen::VectorXd>(pi.data(), K);
  m.xi = required<double>(j, "xi");
  m.varrho = required<double>(j, "varrho");
  m.lambda = required<double>(j, "lambda");

  const auto& comps = j.at("components");
  if (!comps.is_array() || static_cast<long>(comps.size()) != K) {
    throw ParseError("model file: expected " + std::to_string(K) + " components");
  }
  for (const auto& c : comps) {
    const auto upsilon = required<std::vector<double>>(c, "upsilon");
    const auto phi = required<std::vector<double>>(c, "phi");
    if (static_cast<long>(upsilon.size()) != D * d ||
        static_cast<long>(phi.size()) != d) {
      throw ParseError("model file: component has the wrong shape");
    }
    Eigen::MatrixXd u(D, d);
    for (long r = 0; r < D; ++r)
      for (long col = 0; col < d; ++col) u(r, col) = upsilon[static_cast<std::size_t>(r * d + col)];
    try {
      m.components.push_back(Component{Basis::from_matrix(std::move(u), kLoadTolerance),
                                       Eigen::Map<const Eigen::VectorXd>(phi.data(), d)});
    } catch (const DegenerateInputError& e) {
      throw ParseError(std::string("model file: ") + e.what());
    }
  }
  try {
    m.validate(kLoadTolerance);
  } catch (const std::exception& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }

  out.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
  if (j.contains("fit_stats")) {
    const auto& s = j.at("fit_stats");
    out.fit_stats.outer_iters = s.value("outer_iters", 0);
    out.fit_stats.final_objective = s.value("final_objective", 0.0);
    out.fit_stats.converged = s.value("converged", false);
  }
  return out;
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(file);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace depcam
