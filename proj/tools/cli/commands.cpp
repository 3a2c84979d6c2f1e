#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "pse/error.hpp"
#include "pse/image_io.hpp"

namespace fs = std::filesystem;

namespace pse::cli {

void RunConfig::validate() const {
  pipeline.validate();
  if (!(beta_sq > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta_sq must be positive");
  if (threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be >= 1");
}

namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// stem -> path, sorted by stem; the first file wins when stems collide.
std::vector<std::pair<std::string, fs::path>> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::FileNotFound, "no such directory: " + dir.string());
  }
  std::vector<std::pair<std::string, fs::path>> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && is_image_file(e.path())) {
      files.emplace_back(e.path().stem().string(), e.path());
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              files.end());
  return files;
}

Error with_context(const Error& e, const fs::path& p) {
  return Error(e.code(), p.string() + ": " + e.detail());
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw Error(ErrorCode::FileNotFound, "cannot write " + path.string());
}

}  // namespace

std::vector<DatasetEntry> scan_dataset(const fs::path& image_dir, const fs::path& gt_dir,
                                       std::vector<std::string>* missing) {
  const auto images = list_images(image_dir);
  const auto masks = list_images(gt_dir);
  std::vector<DatasetEntry> entries;
  for (const auto& [stem, path] : images) {
    const auto it = std::lower_bound(masks.begin(), masks.end(), stem,
                                     [](const auto& m, const std::string& s) { return m.first < s; });
    if (it == masks.end() || it->first != stem) {
      if (missing) missing->push_back(stem);
      continue;
    }
    entries.push_back({stem, path, it->second});
  }
  if (entries.empty()) {
    throw Error(ErrorCode::EmptyDataset,
                "no image with a matching ground truth in " + image_dir.string());
  }
  return entries;
}

BatchResult run_batch(const std::vector<DatasetEntry>& entries, const RunConfig& config,
                      const fs::path& map_dir) {
  config.validate();
  if (entries.empty()) throw Error(ErrorCode::EmptyDataset, "empty dataset");

  std::vector<ImageResult> results(entries.size());
  std::vector<std::exception_ptr> failures(entries.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      const DatasetEntry& e = entries[i];
      try {
        const GroundTruth gt = load_ground_truth(e.ground_truth);
        const SaliencyMap map = compute_saliency(load_image(e.image), config.pipeline);
        if (!map_dir.empty()) write_png(map_dir / (e.name + ".png"), quantize_map(map));
        results[i] = {e.name, evaluate(map, gt, config.beta_sq)};
      } catch (const Error& err) {
        failures[i] = std::make_exception_ptr(with_context(err, e.image));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const int workers = std::min<int>(config.threads, static_cast<int>(entries.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  BatchResult out;
  out.images = std::move(results);
  std::vector<EvalCurves> curves;
  curves.reserve(out.images.size());
  for (const auto& r : out.images) {
    curves.push_back(r.curves);
    out.mean_max_f_beta += r.curves.max_f_beta;
    out.mean_auc += r.curves.auc;
    out.mean_mse += r.curves.mse;
  }
  const double n = static_cast<double>(out.images.size());
  out.mean_max_f_beta /= n;
  out.mean_auc /= n;
  out.mean_mse /= n;
  out.aggregate = aggregate(curves, config.beta_sq);
  return out;
}

SaliencyMap run_single(const fs::path& image, const fs::path& out, const RunConfig& config) {
  config.validate();
  SaliencyMap map;
  try {
    map = compute_saliency(load_image(image), config.pipeline);
  } catch (const Error& e) {
    throw with_context(e, image);
  }
  write_png(out, quantize_map(map));
  return map;
}

std::vector<SweepRow> sweep_q(const std::vector<DatasetEntry>& entries,
                              const std::vector<double>& grid, const RunConfig& config) {
  for (const double q : grid) {
    if (!(q > 0.0)) throw Error(ErrorCode::NonPositiveQ, "sweep values must be positive");
  }
  std::vector<SweepRow> rows;
  for (const double q : grid) {
    RunConfig c = config;
    c.pipeline.q = q;
    const BatchResult r = run_batch(entries, c);
    rows.push_back({q, r.aggregate.max_f_beta, r.aggregate.auc, r.aggregate.mse});
  }
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return {buf, res.ptr};
}

void write_summary_csv(std::ostream& out, const BatchResult& result) {
  auto row = [&](const std::string& name, double f, double a, double m) {
    out << name << ',' << format_number(f) << ',' << format_number(a) << ','
        << format_number(m) << '\n';
  };
  out << "image,max_f_beta,auc,mse\n";
  for (const auto& r : result.images) row(r.name, r.curves.max_f_beta, r.curves.auc, r.curves.mse);
  row("aggregate", result.aggregate.max_f_beta, result.aggregate.auc, result.aggregate.mse);
  row("per_image_mean", result.mean_max_f_beta, result.mean_auc, result.mean_mse);
}

void write_curves_csv(std::ostream& out, const EvalCurves& curves) {
  out << "threshold,precision,recall,fpr\n";
  for (int t = 0; t < kThresholds; ++t) {
    out << t << ',' << format_number(curves.precision[t]) << ','
        << format_number(curves.recall[t]) << ',' << format_number(curves.fpr[t]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "q,max_f_beta,auc,mse\n";
  for (const auto& r : rows) {
    out << format_number(r.q) << ',' << format_number(r.max_f_beta) << ','
        << format_number(r.auc) << ',' << format_number(r.mse) << '\n';
  }
}

BatchResult batch_command(const fs::path& image_dir, const fs::path& gt_dir,
                          const fs::path& out_dir, const RunConfig& config, std::ostream& log) {
  std::vector<std::string> missing;
  const auto entries = scan_dataset(image_dir, gt_dir, &missing);
  for (const auto& m : missing) {
    log << "warning: " << to_string(ErrorCode::MissingGroundTruth) << ": " << m
        << " has no ground truth, skipped\n";
  }
  const fs::path maps = out_dir / "maps";
  fs::create_directories(maps);
  const BatchResult result = run_batch(entries, config, maps);

  std::ostringstream summary, curves;
  write_summary_csv(summary, result);
  write_curves_csv(curves, result.aggregate);
  write_file(out_dir / "summary.csv", summary.str());
  write_file(out_dir / "curves.csv", curves.str());
  return result;
}

}  // namespace pse::cli
