#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pse/eval.hpp"
#include "pse/pipeline.hpp"

namespace pse::cli {

struct RunConfig {
  PipelineConfig pipeline;
  double beta_sq = 0.3;
  int threads = 1;

  /// Pipeline checks plus beta_sq > 0 and threads >= 1.
  void validate() const;
};

/// One image/ground-truth pair matched by file stem.
struct DatasetEntry {
  std::string name;
  std::filesystem::path image;
  std::filesystem::path ground_truth;
};

/// Images in `image_dir` (png/jpg/jpeg, sorted by stem) paired with the
/// ground truth of the same stem in `gt_dir`. Images without a mask are
/// reported through `missing` and left out. Throws FileNotFound for a missing
/// directory and EmptyDataset when no pair remains.
std::vector<DatasetEntry> scan_dataset(const std::filesystem::path& image_dir,
                                       const std::filesystem::path& gt_dir,
                                       std::vector<std::string>* missing = nullptr);

struct ImageResult {
  std::string name;
  EvalCurves curves;
};

struct BatchResult {
  std::vector<ImageResult> images;  ///< dataset order
  EvalCurves aggregate;             ///< threshold-wise mean curves
  double mean_max_f_beta = 0.0;     ///< per-image max-F averaged
  double mean_auc = 0.0;
  double mean_mse = 0.0;
};

/// Saliency plus metrics for every entry, spread over `config.threads`
/// workers. When `map_dir` is non-empty each map is written there as
/// `<name>.png`. The first failing image (in dataset order) rethrows.
BatchResult run_batch(const std::vector<DatasetEntry>& entries, const RunConfig& config,
                      const std::filesystem::path& map_dir = {});

/// Computes and writes the 8-bit map for one image. Errors carry the path.
SaliencyMap run_single(const std::filesystem::path& image, const std::filesystem::path& out,
                       const RunConfig& config);

struct SweepRow {
  double q = 0.0;
  double max_f_beta = 0.0;
  double auc = 0.0;
  double mse = 0.0;
};

/// One batch evaluation per q. Throws NonPositiveQ for any q <= 0.
std::vector<SweepRow> sweep_q(const std::vector<DatasetEntry>& entries,
                              const std::vector<double>& grid, const RunConfig& config);

inline const std::vector<double> kDefaultQGrid{0.001, 0.01, 0.1, 1.0, 10.0};

/// 12 significant digits, shortest form.
std::string format_number(double v);

void write_summary_csv(std::ostream& out, const BatchResult& result);
void write_curves_csv(std::ostream& out, const EvalCurves& curves);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Writes summary.csv, curves.csv and maps/ under `out_dir`.
BatchResult batch_command(const std::filesystem::path& image_dir,
                          const std::filesystem::path& gt_dir,
                          const std::filesystem::path& out_dir, const RunConfig& config,
                          std::ostream& log);

/// Whole command line; returns the process exit status
/// (0 ok, 1 pipeline error, 2 usage or I/O error).
int run_app(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pse::cli
