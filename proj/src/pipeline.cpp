#include "aga/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "aga/compose.hpp"
#include "aga/digest.hpp"
#include "aga/error.hpp"
#include "aga/image_io.hpp"
#include "aga/rng.hpp"
#include "aga/worker_pool.hpp"

namespace fs = std::filesystem;

namespace aga {
namespace {

std::string sanitize_component(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (c == '/' || c == '\\' || c == ' ') c = '_';
  return out;
}

// <class_dir>/<flattened image_id>_r<replica>.png, relative to out_dir.
std::string output_rel_path(const DatasetEntry& entry, uint32_t replica_idx) {
  return sanitize_component(entry.label.fine_name) + "/" +
         sanitize_component(entry.image_id) + "_r" + std::to_string(replica_idx) + ".png";
}

}  // namespace

uint64_t task_seed(uint64_t global_seed, const std::string& image_id, uint32_t replica_idx) {
  uint64_t h = fnv1a64_u64(global_seed);
  h = fnv1a64(image_id, h);
  h = fnv1a64_u64(replica_idx, h);
  return h;
}

std::vector<AugTask> plan(DatasetManifest& manifest, uint32_t k, uint64_t global_seed,
                          const SuperclassTable& table) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "plan: scale factor must be >= 1");

  std::set<std::string> seen;
  for (DatasetEntry& entry : manifest.entries) {
    if (!seen.insert(entry.image_id).second)
      fail(ErrorCode::DuplicateImageId, "duplicate image_id \"" + entry.image_id + "\"");
    if (entry.label.superclass.empty())
      entry.label.superclass = table.resolve(entry.label.fine_name);
  }

  std::vector<AugTask> tasks;
  tasks.reserve(manifest.entries.size() * k);
  for (const DatasetEntry& entry : manifest.entries)
    for (uint32_t r = 0; r < k; ++r)
      tasks.push_back({entry.image_id, r, task_seed(global_seed, entry.image_id, r)});

  std::sort(tasks.begin(), tasks.end(), [](const AugTask& a, const AugTask& b) {
    return a.image_id != b.image_id ? a.image_id < b.image_id
                                    : a.replica_idx < b.replica_idx;
  });
  return tasks;
}

TaskOutput execute_task(const ImageBuffer& source, const ClassLabel& label,
                        const AugTask& task, const BackendSet& backends,
                        const RunConfig& config) {
  MaskedSubject subject =
      isolate(source, label, *backends.detector, *backends.segmenter, config.isolation);

  SeededRng prompt_rng(derive_seed(task.task_seed, "prompt"));
  const PromptSpec spec = sample_spec(prompt_rng, config.sets, config.avoid);
  const CaptionResult caption =
      obtain_caption(spec, *backends.captioner, config.avoid, config.caption_max_retries);

  ImageBuffer background = backends.background->generate(
      caption.caption, derive_seed(task.task_seed, "background"), source.width(),
      source.height());
  if (!background.same_dims(source))
    background = resize_background(background, source.width(), source.height());

  SeededRng affine_rng(derive_seed(task.task_seed, "affine"));
  const AffineParams params = sample_affine_params(affine_rng, config.affine);
  TransformedSubject transformed =
      apply_affine(subject, params, source.width(), source.height(),
                   derive_seed(task.task_seed, "placement"), config.allow_translate);

  CompositeOutput composite = merge(transformed.subject, background);

  AugRecord record;
  record.image_id = task.image_id;
  record.replica_idx = task.replica_idx;
  record.status = RecordStatus::Done;
  record.prompt = caption.spec;
  record.caption = caption.caption;
  record.attempts = caption.attempts;
  record.affine = transformed.effective;
  record.backends = {backends.detector->identity(), backends.segmenter->identity(),
                     backends.captioner->identity(), backends.background->identity()};
  record.foreground_coverage = composite.foreground_coverage;

  return TaskOutput{std::move(composite.image), std::move(record)};
}

RunSummary run(const DatasetManifest& manifest, const std::vector<AugTask>& tasks,
               const BackendSet& backends, const RunConfig& config) {
  if (config.out_dir.empty()) fail(ErrorCode::InvalidArgument, "run: empty output dir");
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) fail(ErrorCode::FatalIOError, "run: cannot create " + config.out_dir);

  std::map<std::string, const DatasetEntry*> by_id;
  for (const DatasetEntry& entry : manifest.entries) by_id[entry.image_id] = &entry;

  // Class directories are created up front so workers never race on mkdir.
  for (const DatasetEntry& entry : manifest.entries) {
    fs::create_directories(
        fs::path(config.out_dir) / sanitize_component(entry.label.fine_name), ec);
    if (ec) fail(ErrorCode::FatalIOError, "run: cannot create class directory");
  }

  const std::string manifest_path = config.out_dir + "/manifest.jsonl";

  // Resume: the last Done record per (image_id, replica) whose output still
  // hashes clean marks that task as already produced.
  std::set<std::pair<std::string, uint32_t>> completed;
  if (fs::exists(manifest_path)) {
    RunManifest previous = read_run_manifest(manifest_path);
    std::map<std::pair<std::string, uint32_t>, const AugRecord*> last;
    for (const AugRecord& record : previous.records)
      last[{record.image_id, record.replica_idx}] = &record;
    for (const auto& [key, record] : last) {
      if (record->status != RecordStatus::Done) continue;
      fs::path output = fs::path(record->output_path);
      if (output.is_relative()) output = fs::path(config.out_dir) / output;
      if (fs::exists(output) && sha256_file(output.string()) == record->output_sha256)
        completed.insert(key);
    }
  }

  ManifestHeader header;
  header.created = utc_timestamp_now();
  header.global_seed = config.global_seed;
  header.scale = config.scale;
  header.config_json = config.config_json;
  ManifestWriter writer(manifest_path, header);

  std::vector<const AugTask*> work;
  work.reserve(tasks.size());
  RunSummary summary;
  for (const AugTask& task : tasks) {
    if (completed.count({task.image_id, task.replica_idx}))
      ++summary.skipped;
    else
      work.push_back(&task);
  }

  std::atomic<size_t> done{0};
  std::atomic<size_t> failed{0};

  parallel_for(
      work.size(), config.jobs,
      [&](size_t i) {
        const AugTask& task = *work[i];
        auto it = by_id.find(task.image_id);
        if (it == by_id.end())
          fail(ErrorCode::InvalidArgument, "run: task references unknown image_id \"" +
                                               task.image_id + "\"");
        const DatasetEntry& entry = *it->second;

        try {
          ImageBuffer source = load_image(entry.image_path);
          TaskOutput output = execute_task(source, entry.label, task, backends, config);

          const std::string rel = output_rel_path(entry, task.replica_idx);
          const fs::path abs = fs::path(config.out_dir) / rel;
          const std::vector<uint8_t> png = encode_png(output.image);
          {
            std::ofstream out(abs, std::ios::binary | std::ios::trunc);
            if (!out ||
                !out.write(reinterpret_cast<const char*>(png.data()),
                           static_cast<std::streamsize>(png.size())))
              fail(ErrorCode::FatalIOError, "run: cannot write " + abs.string());
          }

          output.record.output_path = rel;
          output.record.output_sha256 = sha256_hex(png);
          output.record.timestamp = utc_timestamp_now();
          writer.append(output.record);
          done.fetch_add(1, std::memory_order_relaxed);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::FatalIOError) throw;
          AugRecord record;
          record.image_id = task.image_id;
          record.replica_idx = task.replica_idx;
          record.status = RecordStatus::Failed;
          record.reason = e.what();
          record.timestamp = utc_timestamp_now();
          writer.append(record);
          failed.fetch_add(1, std::memory_order_relaxed);
        }
      },
      config.max_tasks);

  summary.done = done.load();
  summary.failed = failed.load();
  return summary;
}

}  // namespace aga
