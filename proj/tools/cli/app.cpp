#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pse/error.hpp"

namespace fs = std::filesystem;

namespace pse::cli {

namespace {

bool is_io_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::FileNotFound:
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::CorruptImage:
    case ErrorCode::MissingGroundTruth:
    case ErrorCode::EmptyDataset:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_app(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Saliency maps from boundary-prior region graphs"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style key = value file; flags take precedence");

  RunConfig config;
  config.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string method = std::string(to_string(config.pipeline.method));

  app.add_option("--threads", config.threads, "Worker threads (images are split across them)")
      ->check(CLI::PositiveNumber);
  app.add_option("--method", method, "pse, qcut, diffusion or manifold")
      ->check(CLI::IsMember({"pse", "qcut", "diffusion", "manifold"}));
  app.add_option("--q", config.pipeline.q, "Boundary penalty as a fraction of the max degree");
  app.add_option("--sigma", config.pipeline.sigma, "Affinity kernel width (CIELab units)");
  app.add_option("--levels,--granularities", config.pipeline.granularities,
                 "Superpixel counts, one map per level")
      ->delimiter(',');
  app.add_option("--compactness,--slic-compactness,--slic_compactness",
                 config.pipeline.slic_compactness, "SLIC compactness");
  app.add_option("--slic-iterations,--slic_iterations", config.pipeline.slic_iterations,
                 "SLIC iterations");
  app.add_option("--min-weight,--min_weight", config.pipeline.min_weight, "Edge weight floor");
  app.add_option("--epsilon", config.pipeline.epsilon, "Regulariser of the diffusion baseline");
  app.add_option("--mu", config.pipeline.mu, "Fitting weight of manifold ranking");
  app.add_option("--beta-sq,--beta_sq", config.beta_sq, "F-measure beta squared");

  auto* run = app.add_subcommand("run", "Saliency map for one image");
  fs::path run_image, run_out;
  run->add_option("image", run_image, "Input image")->required();
  run->add_option("--out", run_out, "Output PNG")->required();

  auto* batch = app.add_subcommand("batch", "Maps and metrics for a dataset");
  fs::path img_dir, gt_dir, batch_out;
  batch->add_option("image_dir", img_dir)->required();
  batch->add_option("gt_dir", gt_dir)->required();
  batch->add_option("--out", batch_out, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep-q", "Dataset metrics across boundary penalties");
  std::vector<double> grid = kDefaultQGrid;
  fs::path sweep_out;
  sweep->add_option("image_dir", img_dir)->required();
  sweep->add_option("gt_dir", gt_dir)->required();
  sweep->add_option("--grid", grid, "Comma-separated q values")->delimiter(',');
  sweep->add_option("--out", sweep_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    config.pipeline.method = parse_method(method);
    config.validate();
    if (*sweep) {
      for (const double q : grid) {
        if (!(q > 0.0)) throw Error(ErrorCode::NonPositiveQ, "sweep values must be positive");
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*run) {
      run_single(run_image, run_out, config);
    } else if (*batch) {
      const BatchResult r = batch_command(img_dir, gt_dir, batch_out, config, err);
      out << "images " << r.images.size() << ", max_f_beta "
          << format_number(r.aggregate.max_f_beta) << ", auc "
          << format_number(r.aggregate.auc) << ", mse " << format_number(r.aggregate.mse)
          << '\n';
    } else if (*sweep) {
      std::vector<std::string> missing;
      const auto entries = scan_dataset(img_dir, gt_dir, &missing);
      for (const auto& m : missing) {
        err << "warning: MissingGroundTruth: " << m << " has no ground truth, skipped\n";
      }
      const auto rows = sweep_q(entries, grid, config);
      std::ofstream csv(sweep_out, std::ios::binary);
      write_sweep_csv(csv, rows);
      if (!csv) {
        err << "error: cannot write " << sweep_out.string() << '\n';
        return 2;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_io_error(e.code()) ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace pse::cli
