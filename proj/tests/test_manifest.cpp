#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "aga/digest.hpp"
#include "aga/manifest.hpp"
#include "test_support.hpp"

using namespace aga;
namespace fs = std::filesystem;

namespace {

AugRecord sample_done_record() {
  AugRecord record;
  record.image_id = "chickadee/img0";
  record.replica_idx = 2;
  record.status = RecordStatus::Done;
  record.timestamp = "2026-01-02T03:04:05Z";
  record.prompt = {1, 7, 3, "Describe a scene at the edge of a lake at dusk."};
  record.caption = "A still lake ringed by reeds.";
  record.attempts = 2;
  record.affine = {FlipMode::Horizontal, -12.25, 1.125};
  record.backends = {{BackendRole::Detector, "mock-detector", "1.0", "mock"},
                     {BackendRole::Segmenter, "mock-segmenter", "1.0", "mock"},
                     {BackendRole::Captioner, "mock-captioner", "1.0", "mock"},
                     {BackendRole::BackgroundGenerator, "mock-background", "1.0", "mock"}};
  record.output_path = "chickadee/chickadee_img0_r2.png";
  record.output_sha256 = std::string(64, 'a');
  record.foreground_coverage = 0.25;
  return record;
}

ManifestHeader sample_header() {
  ManifestHeader header;
  header.created = "2026-01-02T03:04:05Z";
  header.global_seed = 7;
  header.scale = 3;
  header.config_json = "{\"jobs\":2}";
  return header;
}

}  // namespace

TEST_CASE("dataset manifest JSON load") {
  const auto dir = test::unique_tmp_dir("dsjson");
  const auto path = dir / "ds.json";
  {
    std::ofstream out(path);
    out << R"({"entries": [
      {"image_path": "a.png", "image_id": "c/a", "class": {"fine_name": "chickadee"}},
      {"image_path": "b.png", "image_id": "c/b",
       "class": {"fine_name": "tick", "superclass": "tick"}}
    ]})";
  }
  const DatasetManifest manifest = load_dataset_manifest(path.string());
  REQUIRE(manifest.entries.size() == 2);
  CHECK(manifest.entries[0].label.fine_name == "chickadee");
  CHECK(manifest.entries[0].label.superclass.empty());
  CHECK(manifest.entries[1].label.superclass == "tick");

  {
    std::ofstream out(path);
    out << R"({"entries": [{"image_path": "", "image_id": "x", "class": {"fine_name": "y"}}]})";
  }
  CHECK_THROWS_AS(load_dataset_manifest(path.string()), Error);
  CHECK_THROWS_WITH_AS(load_dataset_manifest((dir / "nope.json").string()),
                       doctest::Contains("FatalIOError"), Error);
}

TEST_CASE("scan_dataset_dir walks class directories in sorted order") {
  const auto dir = test::unique_tmp_dir("dsscan");
  test::write_fixture_dataset(dir);
  (void)std::ofstream(dir / "chickadee" / "notes.txt");  // ignored: not an image

  const DatasetManifest manifest = scan_dataset_dir(dir.string());
  REQUIRE(manifest.entries.size() == 10);
  CHECK(std::is_sorted(manifest.entries.begin(), manifest.entries.end(),
                       [](const DatasetEntry& a, const DatasetEntry& b) {
                         return a.image_id < b.image_id;
                       }));
  CHECK(manifest.entries[0].image_id == "chickadee/img0");
  CHECK(manifest.entries[0].label.fine_name == "chickadee");
  // Underscores in directory names map to spaces in fine names.
  bool found_ouzel = false;
  for (const auto& entry : manifest.entries)
    if (entry.label.fine_name == "water ouzel") found_ouzel = true;
  CHECK(found_ouzel);
  CHECK_THROWS_AS(scan_dataset_dir((dir / "absent").string()), Error);
}

TEST_CASE("aug record encode/decode round trip") {
  const AugRecord done = sample_done_record();
  const AugRecord back = decode_aug_record(encode_aug_record(done));
  CHECK(back.image_id == done.image_id);
  CHECK(back.replica_idx == done.replica_idx);
  CHECK(back.status == RecordStatus::Done);
  CHECK(back.timestamp == done.timestamp);
  CHECK(back.prompt.instruction_idx == 1);
  CHECK(back.prompt.background_idx == 7);
  CHECK(back.prompt.temporal_idx == 3);
  CHECK(back.prompt.rendered == done.prompt.rendered);
  CHECK(back.caption == done.caption);
  CHECK(back.attempts == 2);
  CHECK(back.affine.flip == FlipMode::Horizontal);
  CHECK(back.affine.rotation_deg == -12.25);
  CHECK(back.affine.scale == 1.125);
  REQUIRE(back.backends.size() == 4);
  CHECK(back.backends[0].role == BackendRole::Detector);
  CHECK(back.backends[3].name == "mock-background");
  CHECK(back.output_path == done.output_path);
  CHECK(back.output_sha256 == done.output_sha256);
  CHECK(back.foreground_coverage == 0.25);

  AugRecord failed;
  failed.image_id = "c/a";
  failed.replica_idx = 0;
  failed.status = RecordStatus::Failed;
  failed.reason = "NoDetection: no detection for \"bird\"";
  failed.timestamp = "2026-01-02T03:04:06Z";
  const AugRecord fback = decode_aug_record(encode_aug_record(failed));
  CHECK(fback.status == RecordStatus::Failed);
  CHECK(fback.reason == failed.reason);
}

TEST_CASE("record encoding is stable (one line, sorted keys)") {
  const std::string line = encode_aug_record(sample_done_record());
  CHECK(line.find('\n') == std::string::npos);
  CHECK(line == encode_aug_record(sample_done_record()));
  // Spot-check canonical key ordering.
  CHECK(line.find("\"affine\"") < line.find("\"attempts\""));
  CHECK(line.find("\"attempts\"") < line.find("\"backends\""));
  CHECK(line.find("\"image_id\"") < line.find("\"output_path\""));
}

TEST_CASE("decode_aug_record rejects corrupted lines") {
  CHECK_THROWS_AS(decode_aug_record("{not json"), Error);
  CHECK_THROWS_AS(decode_aug_record("{}"), Error);
  CHECK_THROWS_AS(decode_aug_record(R"({"image_id":"a","replica_idx":0,)"
                                    R"("status":"odd","timestamp":"t"})"),
                  Error);
  // A done record with an out-of-range affine scale.
  std::string line = encode_aug_record(sample_done_record());
  const auto pos = line.find("1.125");
  line.replace(pos, 5, "9.125");
  CHECK_THROWS_AS(decode_aug_record(line), Error);
}

TEST_CASE("manifest header round trip and writer header handling") {
  const ManifestHeader header = sample_header();
  const ManifestHeader back = decode_manifest_header(encode_manifest_header(header));
  CHECK(back.schema == kManifestSchema);
  CHECK(back.created == header.created);
  CHECK(back.global_seed == 7);
  CHECK(back.scale == 3);
  CHECK(back.config_json == "{\"jobs\":2}");

  const auto dir = test::unique_tmp_dir("mwriter");
  const std::string path = (dir / "manifest.jsonl").string();
  {
    ManifestWriter writer(path, header);
    writer.append(sample_done_record());
  }
  {
    // Reopening appends without duplicating the header.
    ManifestWriter writer(path, header);
    writer.append(sample_done_record());
  }
  const RunManifest manifest = read_run_manifest(path);
  CHECK(manifest.header.global_seed == 7);
  CHECK(manifest.records.size() == 2);
  CHECK_FALSE(manifest.torn_tail);
}

TEST_CASE("read_run_manifest tolerates a torn tail") {
  const auto dir = test::unique_tmp_dir("torn");
  const std::string path = (dir / "manifest.jsonl").string();
  {
    ManifestWriter writer(path, sample_header());
    writer.append(sample_done_record());
  }
  {
    std::ofstream out(path, std::ios::app | std::ios::binary);
    out << "{\"image_id\":\"half";  // no newline: simulated crash mid-write
  }
  const RunManifest manifest = read_run_manifest(path);
  CHECK(manifest.records.size() == 1);
  CHECK(manifest.torn_tail);

  CHECK_THROWS_WITH_AS(read_run_manifest((dir / "absent.jsonl").string()),
                       doctest::Contains("UnreadableManifest"), Error);
}

TEST_CASE("read_run_manifest rejects foreign schemas") {
  const auto dir = test::unique_tmp_dir("schema");
  const std::string path = (dir / "m.jsonl").string();
  {
    std::ofstream out(path);
    out << R"({"config":{},"created":"t","global_seed":0,"scale":1,"schema":"other/9"})"
        << "\n";
  }
  CHECK_THROWS_WITH_AS(read_run_manifest(path), doctest::Contains("UnreadableManifest"),
                       Error);
}

TEST_CASE("validate_manifest flags each tamper class") {
  const auto dir = test::unique_tmp_dir("validate");
  const std::string path = (dir / "manifest.jsonl").string();

  // A real output file, hashed honestly.
  const fs::path out_file = dir / "chickadee" / "chickadee_img0_r2.png";
  fs::create_directories(out_file.parent_path());
  {
    std::ofstream out(out_file, std::ios::binary);
    out << "png bytes stand-in";
  }
  AugRecord record = sample_done_record();
  record.output_sha256 = sha256_file(out_file.string());

  SUBCASE("clean manifest has zero violations") {
    ManifestWriter writer(path, sample_header());
    writer.append(record);
    const ValidationReport report = validate_manifest(path);
    CHECK(report.ok());
    CHECK(report.record_count == 1);
  }
  SUBCASE("failed records need no file and a retry pair is not a duplicate") {
    ManifestWriter writer(path, sample_header());
    AugRecord failed;
    failed.image_id = record.image_id;
    failed.replica_idx = record.replica_idx;
    failed.status = RecordStatus::Failed;
    failed.reason = "transient";
    failed.timestamp = "t";
    writer.append(failed);
    writer.append(record);  // retry succeeded
    const ValidationReport report = validate_manifest(path);
    CHECK(report.ok());
    CHECK(report.record_count == 2);
  }
  SUBCASE("an identical repair pair is tolerated; conflicting claims are not") {
    ManifestWriter writer(path, sample_header());
    writer.append(record);
    writer.append(record);  // the shape a tamper-then-recompute run leaves behind
    CHECK(validate_manifest(path).ok());

    AugRecord conflicting = record;
    conflicting.output_sha256 = std::string(64, 'b');
    writer.append(conflicting);
    const ValidationReport report = validate_manifest(path);
    REQUIRE(report.violations.size() == 2);
    CHECK(report.violations[0].kind == "duplicate-record");
    CHECK(report.violations[1].kind == "hash-mismatch");
  }
  SUBCASE("missing output file") {
    ManifestWriter writer(path, sample_header());
    writer.append(record);
    fs::remove(out_file);
    const ValidationReport report = validate_manifest(path);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == "missing-file");
  }
  SUBCASE("flipped content byte") {
    ManifestWriter writer(path, sample_header());
    writer.append(record);
    {
      std::fstream f(out_file, std::ios::in | std::ios::out | std::ios::binary);
      f.seekp(3);
      f.put('X');
    }
    const ValidationReport report = validate_manifest(path);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == "hash-mismatch");
  }
  SUBCASE("malformed interior line and truncated tail") {
    ManifestWriter writer(path, sample_header());
    writer.append(record);
    {
      std::ofstream out(path, std::ios::app | std::ios::binary);
      out << "garbage line\n";
      out << record.image_id;  // torn tail, no newline
    }
    const ValidationReport report = validate_manifest(path);
    REQUIRE(report.violations.size() == 2);
    CHECK(report.violations[0].kind == "malformed-record");
    CHECK(report.violations[1].kind == "truncated-tail");
  }
  SUBCASE("bad schema") {
    std::ofstream out(path);
    out << R"({"config":{},"created":"t","global_seed":0,"scale":1,"schema":"other/9"})"
        << "\n";
    out.close();
    const ValidationReport report = validate_manifest(path);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == "bad-schema");
  }
}
