#include "aga/manifest.hpp"

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <map>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "aga/digest.hpp"
#include "aga/error.hpp"

namespace fs = std::filesystem;

namespace aga {
namespace {

using nlohmann::json;

const json& get_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    fail(ErrorCode::InvalidArgument, std::string("manifest: missing field \"") + name + "\"");
  return *it;
}

FlipMode flip_from_string(const std::string& s) {
  if (s == "none") return FlipMode::None;
  if (s == "horizontal") return FlipMode::Horizontal;
  if (s == "vertical") return FlipMode::Vertical;
  fail(ErrorCode::InvalidArgument, "manifest: unknown flip \"" + s + "\"");
}

BackendRole role_from_string(const std::string& s) {
  if (s == "detector") return BackendRole::Detector;
  if (s == "segmenter") return BackendRole::Segmenter;
  if (s == "captioner") return BackendRole::Captioner;
  if (s == "background") return BackendRole::BackgroundGenerator;
  fail(ErrorCode::InvalidArgument, "manifest: unknown backend role \"" + s + "\"");
}

json parse_line(const std::string& line, const char* what) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(ErrorCode::InvalidArgument, std::string("manifest: ") + what + " is not a JSON object");
  return j;
}

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

DatasetManifest load_dataset_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FatalIOError, "dataset manifest: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();

  json j = json::parse(buffer.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    fail(ErrorCode::InvalidArgument, "dataset manifest: not a JSON object: " + path);
  const json& entries = get_field(j, "entries");
  if (!entries.is_array())
    fail(ErrorCode::InvalidArgument, "dataset manifest: \"entries\" is not an array");

  DatasetManifest manifest;
  manifest.entries.reserve(entries.size());
  for (const json& e : entries) {
    DatasetEntry entry;
    entry.image_path = get_field(e, "image_path").get<std::string>();
    entry.image_id = get_field(e, "image_id").get<std::string>();
    const json& cls = get_field(e, "class");
    entry.label.fine_name = get_field(cls, "fine_name").get<std::string>();
    if (cls.contains("superclass"))
      entry.label.superclass = cls["superclass"].get<std::string>();
    if (entry.image_path.empty() || entry.image_id.empty() || entry.label.fine_name.empty())
      fail(ErrorCode::InvalidArgument, "dataset manifest: empty field in entry");
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

DatasetManifest scan_dataset_dir(const std::string& root) {
  if (!fs::is_directory(root))
    fail(ErrorCode::FatalIOError, "dataset scan: not a directory: " + root);

  DatasetManifest manifest;
  for (const auto& class_entry : fs::directory_iterator(root)) {
    if (!class_entry.is_directory()) continue;
    const std::string dir_name = class_entry.path().filename().string();
    std::string fine_name = dir_name;
    std::replace(fine_name.begin(), fine_name.end(), '_', ' ');

    for (const auto& file_entry : fs::directory_iterator(class_entry.path())) {
      if (!file_entry.is_regular_file() || !has_image_extension(file_entry.path())) continue;
      DatasetEntry entry;
      entry.image_path = file_entry.path().string();
      entry.image_id = dir_name + "/" + file_entry.path().stem().string();
      entry.label.fine_name = fine_name;
      manifest.entries.push_back(std::move(entry));
    }
  }
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const DatasetEntry& a, const DatasetEntry& b) { return a.image_id < b.image_id; });
  return manifest;
}

const char* to_string(RecordStatus status) {
  return status == RecordStatus::Done ? "done" : "failed";
}

std::string utc_timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

std::string encode_manifest_header(const ManifestHeader& header) {
  json config = json::object();
  if (!header.config_json.empty()) {
    config = json::parse(header.config_json, nullptr, false);
    if (config.is_discarded())
      fail(ErrorCode::InvalidArgument, "manifest header: config_json is not valid JSON");
  }
  json j{{"config", std::move(config)},
         {"created", header.created},
         {"global_seed", header.global_seed},
         {"scale", header.scale},
         {"schema", header.schema}};
  return j.dump();
}

ManifestHeader decode_manifest_header(const std::string& line) {
  json j = parse_line(line, "header");
  ManifestHeader header;
  header.schema = get_field(j, "schema").get<std::string>();
  header.created = get_field(j, "created").get<std::string>();
  header.global_seed = get_field(j, "global_seed").get<uint64_t>();
  header.scale = get_field(j, "scale").get<uint32_t>();
  header.config_json = get_field(j, "config").dump();
  return header;
}

std::string encode_aug_record(const AugRecord& record) {
  json j{{"image_id", record.image_id},
         {"replica_idx", record.replica_idx},
         {"status", to_string(record.status)},
         {"timestamp", record.timestamp}};
  if (record.status == RecordStatus::Done) {
    j["prompt"] = {{"instruction_idx", record.prompt.instruction_idx},
                   {"background_idx", record.prompt.background_idx},
                   {"temporal_idx", record.prompt.temporal_idx},
                   {"rendered", record.prompt.rendered}};
    j["caption"] = record.caption;
    j["attempts"] = record.attempts;
    j["affine"] = {{"flip", to_string(record.affine.flip)},
                   {"rotation_deg", record.affine.rotation_deg},
                   {"scale", record.affine.scale}};
    json backends = json::array();
    for (const BackendIdentity& b : record.backends)
      backends.push_back({{"endpoint", b.endpoint},
                          {"name", b.name},
                          {"role", to_string(b.role)},
                          {"version", b.version}});
    j["backends"] = std::move(backends);
    j["output_path"] = record.output_path;
    j["output_sha256"] = record.output_sha256;
    j["foreground_coverage"] = record.foreground_coverage;
  } else {
    j["reason"] = record.reason;
  }
  return j.dump();
}

AugRecord decode_aug_record(const std::string& line) {
  json j = parse_line(line, "record");
  AugRecord record;
  record.image_id = get_field(j, "image_id").get<std::string>();
  record.replica_idx = get_field(j, "replica_idx").get<uint32_t>();
  record.timestamp = get_field(j, "timestamp").get<std::string>();

  const std::string status = get_field(j, "status").get<std::string>();
  if (status == "done") {
    record.status = RecordStatus::Done;
    const json& prompt = get_field(j, "prompt");
    record.prompt.instruction_idx = get_field(prompt, "instruction_idx").get<uint32_t>();
    record.prompt.background_idx = get_field(prompt, "background_idx").get<uint32_t>();
    record.prompt.temporal_idx = get_field(prompt, "temporal_idx").get<uint32_t>();
    record.prompt.rendered = get_field(prompt, "rendered").get<std::string>();
    record.caption = get_field(j, "caption").get<std::string>();
    record.attempts = get_field(j, "attempts").get<int>();
    const json& affine = get_field(j, "affine");
    record.affine.flip = flip_from_string(get_field(affine, "flip").get<std::string>());
    record.affine.rotation_deg = get_field(affine, "rotation_deg").get<double>();
    record.affine.scale = get_field(affine, "scale").get<double>();
    record.affine.validate();
    const json& backends = get_field(j, "backends");
    if (!backends.is_array())
      fail(ErrorCode::InvalidArgument, "manifest: \"backends\" is not an array");
    for (const json& b : backends) {
      BackendIdentity identity;
      identity.role = role_from_string(get_field(b, "role").get<std::string>());
      identity.name = get_field(b, "name").get<std::string>();
      identity.version = get_field(b, "version").get<std::string>();
      identity.endpoint = get_field(b, "endpoint").get<std::string>();
      record.backends.push_back(std::move(identity));
    }
    record.output_path = get_field(j, "output_path").get<std::string>();
    record.output_sha256 = get_field(j, "output_sha256").get<std::string>();
    record.foreground_coverage = get_field(j, "foreground_coverage").get<double>();
    if (record.output_path.empty() || record.output_sha256.size() != 64)
      fail(ErrorCode::InvalidArgument, "manifest: bad output reference in done record");
    if (record.foreground_coverage < 0.0 || record.foreground_coverage > 1.0)
      fail(ErrorCode::InvalidArgument, "manifest: foreground_coverage out of range");
  } else if (status == "failed") {
    record.status = RecordStatus::Failed;
    record.reason = get_field(j, "reason").get<std::string>();
  } else {
    fail(ErrorCode::InvalidArgument, "manifest: unknown status \"" + status + "\"");
  }
  return record;
}

ManifestWriter::ManifestWriter(const std::string& path, const ManifestHeader& header)
    : path_(path) {
  const bool fresh = !fs::exists(path);
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) fail(ErrorCode::FatalIOError, "manifest: cannot open for append: " + path);
  if (fresh) {
    out_ << encode_manifest_header(header) << '\n';
    out_.flush();
    if (!out_) fail(ErrorCode::FatalIOError, "manifest: header write failed: " + path);
  }
}

void ManifestWriter::append(const AugRecord& record) {
  const std::string line = encode_aug_record(record);
  std::lock_guard<std::mutex> lock(mutex_);
  out_ << line << '\n';
  out_.flush();
  if (!out_) fail(ErrorCode::FatalIOError, "manifest: record write failed: " + path_);
}

RunManifest read_run_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::UnreadableManifest, "cannot open manifest: " + path);

  std::string line;
  if (!std::getline(in, line))
    fail(ErrorCode::UnreadableManifest, "manifest is empty: " + path);

  RunManifest manifest;
  try {
    manifest.header = decode_manifest_header(line);
  } catch (const Error& e) {
    fail(ErrorCode::UnreadableManifest, std::string("bad manifest header: ") + e.what());
  }
  if (manifest.header.schema != kManifestSchema)
    fail(ErrorCode::UnreadableManifest,
         "unsupported manifest schema \"" + manifest.header.schema + "\"");

  while (std::getline(in, line)) {
    try {
      manifest.records.push_back(decode_aug_record(line));
    } catch (const Error&) {
      // A partial trailing line is the expected residue of an interrupted
      // run; anything else unparseable is likewise skipped here and left to
      // validate_manifest to report.
      manifest.torn_tail = in.eof();
    }
  }
  return manifest;
}

ValidationReport validate_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::UnreadableManifest, "cannot open manifest: " + path);

  const fs::path base = fs::path(path).parent_path();
  ValidationReport report;

  std::string line;
  if (!std::getline(in, line)) {
    report.violations.push_back({"unreadable-header", "manifest is empty"});
    return report;
  }
  try {
    ManifestHeader header = decode_manifest_header(line);
    if (header.schema != kManifestSchema)
      report.violations.push_back({"bad-schema", "schema \"" + header.schema + "\""});
  } catch (const Error& e) {
    report.violations.push_back({"unreadable-header", e.what()});
    return report;
  }

  // (image_id, replica_idx) -> first Done record's output claim.
  // Failed-then-Done is the normal retry shape, and a task recomputed after
  // output tampering appends a second, identical Done record (the manifest is
  // append-only), so only *conflicting* claims count as duplicates.
  std::map<std::pair<std::string, uint32_t>, std::pair<std::string, std::string>>
      done_claims;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    AugRecord record;
    try {
      record = decode_aug_record(line);
    } catch (const Error& e) {
      const bool last = in.peek() == EOF;
      report.violations.push_back(
          {last ? "truncated-tail" : "malformed-record",
           "line " + std::to_string(line_no) + ": " + e.what()});
      continue;
    }
    ++report.record_count;
    if (record.status != RecordStatus::Done) continue;

    auto key = std::make_pair(record.image_id, record.replica_idx);
    auto claim = std::make_pair(record.output_path, record.output_sha256);
    auto [it, fresh] = done_claims.emplace(std::move(key), claim);
    if (!fresh && it->second != claim) {
      report.violations.push_back(
          {"duplicate-record", record.image_id + " r" + std::to_string(record.replica_idx) +
                                   ": conflicting output claims"});
    }

    fs::path output = fs::path(record.output_path);
    if (output.is_relative()) output = base / output;
    if (!fs::exists(output)) {
      report.violations.push_back({"missing-file", output.string()});
      continue;
    }
    if (sha256_file(output.string()) != record.output_sha256)
      report.violations.push_back({"hash-mismatch", output.string()});
  }
  return report;
}

}  // namespace aga
