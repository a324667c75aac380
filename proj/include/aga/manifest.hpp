#pragma once

#include <mutex>
#include <fstream>
#include <string>
#include <vector>

#include "aga/affine.hpp"
#include "aga/backend.hpp"
#include "aga/image.hpp"
#include "aga/prompt.hpp"

namespace aga {

// ---- Source dataset description ----

struct DatasetEntry {
  std::string image_path;
  ClassLabel label;
  std::string image_id;  // stable across runs; key for seeding and resume
};

struct DatasetManifest {
  std::vector<DatasetEntry> entries;
};

// JSON form: {"entries": [{"image_path", "image_id", "class": {"fine_name"
// [, "superclass"]}}]}. Missing superclasses are resolved from the hierarchy
// table at planning time.
DatasetManifest load_dataset_manifest(const std::string& path);

// Directory layout <root>/<class_dir>/<image files>. Class names substitute
// ' ' for '_' in the directory name; image_id is "<class_dir>/<stem>".
// Entries come back sorted by image_id.
DatasetManifest scan_dataset_dir(const std::string& root);

// ---- Run provenance manifest (JSON Lines, append-only) ----

inline constexpr const char* kManifestSchema = "aga-manifest/1";

struct ManifestHeader {
  std::string schema = kManifestSchema;
  std::string created;      // wall clock; excluded from determinism checks
  uint64_t global_seed = 0;
  uint32_t scale = 0;
  std::string config_json;  // effective run configuration, canonical JSON
};

enum class RecordStatus { Done, Failed };
const char* to_string(RecordStatus status);

// One line per finished task. Done records carry full provenance; Failed
// records carry the reason. output_path is relative to the manifest's
// directory so an output tree can be relocated wholesale.
struct AugRecord {
  std::string image_id;
  uint32_t replica_idx = 0;
  RecordStatus status = RecordStatus::Done;
  std::string timestamp;

  PromptSpec prompt;
  std::string caption;
  int attempts = 0;
  AffineParams affine;
  std::vector<BackendIdentity> backends;
  std::string output_path;
  std::string output_sha256;
  double foreground_coverage = 0.0;

  std::string reason;
};

std::string utc_timestamp_now();

std::string encode_manifest_header(const ManifestHeader& header);
ManifestHeader decode_manifest_header(const std::string& line);  // InvalidArgument

std::string encode_aug_record(const AugRecord& record);
AugRecord decode_aug_record(const std::string& line);  // InvalidArgument

// Serialized append-and-flush; the single point of write contention in a run.
class ManifestWriter {
 public:
  // Writes the header when creating the file; otherwise appends to it.
  ManifestWriter(const std::string& path, const ManifestHeader& header);

  void append(const AugRecord& record);
  const std::string& path() const { return path_; }

 private:
  std::mutex mutex_;
  std::ofstream out_;
  std::string path_;
};

struct RunManifest {
  ManifestHeader header;
  std::vector<AugRecord> records;  // file order; duplicates possible (resume)
  bool torn_tail = false;          // final line was a partial write, ignored
};

// Tolerant reader used for resume: a torn final line is dropped, interior
// lines that fail to parse are skipped. UnreadableManifest when the file or
// its header cannot be read at all.
RunManifest read_run_manifest(const std::string& path);

struct Violation {
  std::string kind;  // unreadable-header | bad-schema | malformed-record |
                     // duplicate-record | missing-file | hash-mismatch |
                     // truncated-tail
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  size_t record_count = 0;

  bool ok() const { return violations.empty(); }
};

// Strict pass over a run manifest: schema, per-record shape, Done/Done
// duplicate keys, output existence and content hashes.
ValidationReport validate_manifest(const std::string& path);  // UnreadableManifest

}  // namespace aga
