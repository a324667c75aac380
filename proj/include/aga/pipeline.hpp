#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aga/affine.hpp"
#include "aga/backend.hpp"
#include "aga/isolate.hpp"
#include "aga/manifest.hpp"
#include "aga/prompt.hpp"

namespace aga {

struct AugTask {
  std::string image_id;
  uint32_t replica_idx = 0;
  uint64_t task_seed = 0;
};

// Stable per-task seed: fold global_seed, image_id and replica_idx through
// FNV-1a in that order. Everything random in a task derives from this.
uint64_t task_seed(uint64_t global_seed, const std::string& image_id, uint32_t replica_idx);

// Expands the dataset k-fold. Resolves missing superclasses in place via the
// table (so run() never needs it) and returns tasks sorted by
// (image_id, replica_idx).
std::vector<AugTask> plan(DatasetManifest& manifest, uint32_t k, uint64_t global_seed,
                          const SuperclassTable& table);

struct RunConfig {
  std::string out_dir;
  uint32_t scale = 1;
  uint64_t global_seed = 0;
  unsigned jobs = 1;

  IsolationConfig isolation;
  ModalitySets sets;
  AvoidList avoid;
  AffineRanges affine;
  bool allow_translate = false;
  int caption_max_retries = 4;

  // Test hook: abandon the run after this many tasks complete (0 = run all).
  size_t max_tasks = 0;

  std::string config_json;  // effective-config echo for the manifest header
};

struct RunSummary {
  size_t done = 0;
  size_t failed = 0;
  size_t skipped = 0;
};

// Executes tasks with the worker pool, appending to <out_dir>/manifest.jsonl.
// Existing Done records whose output file still matches its recorded hash are
// skipped; everything else is (re)computed. Per-task failures become Failed
// records; only output-store problems abort the run.
RunSummary run(const DatasetManifest& manifest, const std::vector<AugTask>& tasks,
               const BackendSet& backends, const RunConfig& config);

// One task end to end, without any manifest involvement: isolate, caption,
// background, affine, merge. Exposed for tests and the single-image CLI path.
struct TaskOutput {
  ImageBuffer image;
  AugRecord record;  // everything but output_path/output_sha256/timestamp
};

TaskOutput execute_task(const ImageBuffer& source, const ClassLabel& label,
                        const AugTask& task, const BackendSet& backends,
                        const RunConfig& config);

}  // namespace aga
