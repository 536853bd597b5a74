#include "depcam/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "depcam/data.hpp"
#include "depcam/errors.hpp"
#include "depcam/eval.hpp"
#include "depcam/experiment.hpp"
#include "depcam/inference.hpp"
#include "depcam/model_io.hpp"

namespace depcam::cli {

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad value '") + cell + "' in " + what);
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(17);
  return out;
}

void add_fit_flags(CLI::App* cmd, FitConfig& cfg) {
  cmd->add_option("--k", cfg.K, "number of mixture components")->check(CLI::PositiveNumber);
  cmd->add_option("--d", cfg.d, "latent dimension per component")->check(CLI::PositiveNumber);
  cmd->add_option("--xi", cfg.xi, "quality scale of the DPP prior")->check(CLI::NonNegativeNumber);
  cmd->add_option("--varrho", cfg.varrho, "similarity scale of the DPP prior")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--eps", cfg.epsilon, "stopping tolerance on the objective")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-outer", cfg.max_outer, "outer EM iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--max-inner", cfg.max_inner, "inner E-step iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--y-steps", cfg.y_step_iters, "ascent steps per code update")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--phi-sweeps", cfg.phi_sweeps, "coordinate sweeps per scales update")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", cfg.seed, "random seed");
}

void cmd_generate(const data::SyntheticConfig& cfg, const std::string& out_path,
                  const std::string& clean_path, std::ostream& out) {
  const auto generated = data::generate_synthetic(cfg);
  data::save_csv(generated.noisy, out_path);
  if (!clean_path.empty()) data::save_csv(generated.clean, clean_path);
  out << "samples=" << generated.noisy.size() << '\n'
      << "dims=" << generated.noisy.dims() << '\n';
}

void cmd_fit(const FitConfig& cfg, const std::string& data_path,
             const std::string& model_path, const std::string& trace_path,
             std::ostream& out) {
  const BinaryDataset ds = data::load_csv(data_path);
  const auto result = inference::fit(ds, cfg);
  const auto& rep = result.report;

  ModelFile file{result.model, cfg.seed,
                 FitStats{rep.outer_iters, rep.final_objective(), rep.converged}};
  save_model(file, model_path);

  if (!trace_path.empty()) {
    auto trace = open_out(trace_path);
    trace << "iteration,outer,objective\n";
    for (std::size_t i = 0; i < rep.objective_trace.size(); ++i) {
      trace << i << ',' << rep.trace_outer_index[i] << ',' << rep.objective_trace[i] << '\n';
    }
  }

  out << std::setprecision(17);
  out << "outer_iters=" << rep.outer_iters << '\n'
      << "inner_iters=" << rep.inner_iters << '\n'
      << "converged=" << (rep.converged ? "true" : "false") << '\n'
      << "final_objective=" << rep.final_objective() << '\n'
      << "jitter_events=" << rep.jitter_events << '\n';
  if (ds.labels) {
    int K = cfg.K;
    for (int l : *ds.labels) K = std::max(K, l + 1);
    const auto acc = eval::clustering_accuracy(
        eval::hard_assignments(result.state.R), *ds.labels, K);
    out << "train_accuracy=" << acc.accuracy << '\n';
  }
}

void cmd_predict(const std::string& model_path, const std::string& data_path,
                 const std::string& out_path) {
  const auto file = load_model(model_path);
  const BinaryDataset ds = data::load_csv(data_path);
  const auto& model = file.model;
  if (ds.dims() != model.D()) {
    throw UsageError("data has " + std::to_string(ds.dims()) +
                     " columns but the model expects " + std::to_string(model.D()));
  }
  auto out = open_out(out_path);
  out << "sample_index,z_star";
  for (Eigen::Index k = 0; k < model.K(); ++k) out << ",posterior_" << k;
  for (Eigen::Index j = 0; j < model.d(); ++j) out << ",y_star_" << j;
  out << '\n';
  for (Eigen::Index n = 0; n < ds.size(); ++n) {
    const auto p = inference::predict(ds.X.row(n).transpose(), model);
    out << n << ',' << p.z_star;
    for (Eigen::Index k = 0; k < model.K(); ++k) out << ',' << p.posterior(k);
    for (Eigen::Index j = 0; j < model.d(); ++j) out << ',' << p.y_star(j);
    out << '\n';
  }
}

void cmd_eval(const std::string& model_path, const std::string& data_path,
              double tau, std::ostream& out) {
  const auto file = load_model(model_path);
  const BinaryDataset ds = data::load_csv(data_path);
  if (!ds.labels) throw UsageError(data_path + " has no label column");
  const auto rep = eval::evaluate(file.model, ds, tau);
  auto join = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  out << std::setprecision(17);
  out << "accuracy=" << rep.accuracy << '\n'
      << "permutation=" << join(rep.matched_permutation) << '\n'
      << "mean_log_likelihood=" << rep.mean_log_likelihood << '\n'
      << "effective_dims=" << join(rep.effective_dims_per_component) << '\n'
      << "tau=" << tau << '\n';
}

void cmd_cv(experiment::CvConfig cfg, const std::string& data_path,
            const std::string& lambda_list, const std::string& out_path,
            const std::string& summary_path, std::ostream& out) {
  cfg.lambdas = parse_list(lambda_list, "--lambda-list");
  for (double l : cfg.lambdas) {
    if (!(l >= 0.0)) throw UsageError("--lambda-list entries must be >= 0");
  }
  const BinaryDataset ds = data::load_csv(data_path);
  if (!ds.labels) throw UsageError(data_path + " has no label column");
  if (ds.size() < cfg.folds) {
    throw UsageError("dataset is smaller than the number of folds");
  }
  const auto runs = experiment::cross_validate(ds, cfg);
  const auto summary = experiment::summarize(runs);
  {
    auto f = open_out(out_path);
    experiment::write_runs_csv(runs, f);
  }
  if (!summary_path.empty()) {
    auto f = open_out(summary_path);
    experiment::write_summary_csv(summary, f);
  }
  experiment::write_summary_csv(summary, out);
}

void cmd_export(const std::string& model_path, const std::string& data_path,
                const std::string& what, const std::string& format,
                const std::string& out_path) {
  const auto file = load_model(model_path);
  if (what == "hinton") {
    eval::export_hinton(file.model, out_path);
    return;
  }
  if (data_path.empty()) throw UsageError("--what means requires --data");
  const BinaryDataset ds = data::load_csv(data_path);
  const auto& model = file.model;
  if (ds.dims() != model.D()) {
    throw UsageError("data has " + std::to_string(ds.dims()) +
                     " columns but the model expects " + std::to_string(model.D()));
  }
  Eigen::MatrixXd Y(ds.size(), model.d());
  Eigen::MatrixXd R(ds.size(), model.K());
  for (Eigen::Index n = 0; n < ds.size(); ++n) {
    const auto p = inference::predict(ds.X.row(n).transpose(), model);
    Y.row(n) = p.y_star.transpose();
    R.row(n) = p.posterior.transpose();
  }
  eval::export_reconstructions(model, Y, R, out_path,
                               format == "pgm" ? eval::ImageFormat::kPgm
                                               : eval::ImageFormat::kCsv);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Diversified exponential-family PCA mixtures for binary data"};
  app.require_subcommand(1);

  // generate
  data::SyntheticConfig syn;
  std::string means = "0.9,0.5,0.1";
  std::string gen_out;
  std::string gen_clean;
  auto* gen = app.add_subcommand("generate", "write a synthetic binary dataset");
  gen->add_option("--classes", syn.classes)->check(CLI::PositiveNumber);
  gen->add_option("--prototypes-per-class", syn.prototypes_per_class)->check(CLI::PositiveNumber);
  gen->add_option("--copies", syn.copies)->check(CLI::PositiveNumber);
  gen->add_option("--dims", syn.dims)->check(CLI::PositiveNumber);
  gen->add_option("--flip", syn.flip_prob)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--means", means, "comma-separated Bernoulli mean per class");
  gen->add_option("--seed", syn.seed);
  gen->add_option("--out", gen_out, "noisy dataset CSV")->required();
  gen->add_option("--clean-out", gen_clean, "noise-free dataset CSV");

  // fit
  FitConfig fit_cfg;
  std::string fit_data, fit_out, fit_trace;
  auto* fit = app.add_subcommand("fit", "fit a mixture model");
  fit->add_option("--data", fit_data)->required();
  fit->add_option("--lambda", fit_cfg.lambda, "weight of the diversity prior")
      ->check(CLI::NonNegativeNumber);
  add_fit_flags(fit, fit_cfg);
  fit->add_option("--out", fit_out, "model file (JSON)")->required();
  fit->add_option("--trace-out", fit_trace, "objective trace CSV");

  // predict
  std::string pred_model, pred_data, pred_out;
  auto* pred = app.add_subcommand("predict", "assign samples to components");
  pred->add_option("--model", pred_model)->required();
  pred->add_option("--data", pred_data)->required();
  pred->add_option("--out", pred_out)->required();

  // eval
  std::string ev_model, ev_data;
  double ev_tau = 0.05;
  auto* ev = app.add_subcommand("eval", "score a model on labelled data");
  ev->add_option("--model", ev_model)->required();
  ev->add_option("--data", ev_data)->required();
  ev->add_option("--tau", ev_tau, "relative threshold for effective dimensions")
      ->check(CLI::Range(0.0, 1.0));

  // cv
  experiment::CvConfig cv_cfg;
  std::string cv_data, cv_out, cv_summary, cv_lambdas = "0,1,10";
  auto* cv = app.add_subcommand("cv", "k-fold cross-validation over lambda and seeds");
  cv->add_option("--data", cv_data)->required();
  cv->add_option("--folds", cv_cfg.folds)->check(CLI::Range(2, 1000000));
  cv->add_option("--lambda-list", cv_lambdas);
  cv->add_option("--seeds", cv_cfg.seeds, "number of seeds per lambda")->check(CLI::PositiveNumber);
  cv->add_option("--tau", cv_cfg.tau)->check(CLI::Range(0.0, 1.0));
  add_fit_flags(cv, cv_cfg.fit);
  cv->add_option("--out", cv_out, "per-run CSV")->required();
  cv->add_option("--summary-out", cv_summary, "per-lambda summary CSV");

  // export
  std::string ex_model, ex_data, ex_what, ex_format = "csv", ex_out;
  auto* ex = app.add_subcommand("export", "write plot-ready figure data");
  ex->add_option("--model", ex_model)->required();
  ex->add_option("--data", ex_data);
  ex->add_option("--what", ex_what)->required()->check(CLI::IsMember({"hinton", "means"}));
  ex->add_option("--format", ex_format)->check(CLI::IsMember({"csv", "pgm"}));
  ex->add_option("--out", ex_out)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "depcam: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*gen) {
      syn.class_means = parse_list(means, "--means");
      cmd_generate(syn, gen_out, gen_clean, out);
    } else if (*fit) {
      cmd_fit(fit_cfg, fit_data, fit_out, fit_trace, out);
    } else if (*pred) {
      cmd_predict(pred_model, pred_data, pred_out);
    } else if (*ev) {
      cmd_eval(ev_model, ev_data, ev_tau, out);
    } else if (*cv) {
      cv_cfg.seed = cv_cfg.fit.seed;
      cmd_cv(cv_cfg, cv_data, cv_lambdas, cv_out, cv_summary, out);
    } else if (*ex) {
      cmd_export(ex_model, ex_data, ex_what, ex_format, ex_out);
    }
  } catch (const UsageError& e) {
    err << "depcam: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "depcam: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace depcam::cli
