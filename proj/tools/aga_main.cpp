#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "aga/error.hpp"
#include "aga/http_backends.hpp"
#include "aga/image_io.hpp"
#include "aga/isolate.hpp"
#include "aga/manifest.hpp"
#include "aga/mock_backends.hpp"
#include "aga/pipeline.hpp"
#include "aga/prompt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct BackendOptions {
  bool mock = false;
  std::string detector_url, segmenter_url, captioner_url, background_url;
};

void add_backend_options(CLI::App* cmd, BackendOptions& opts) {
  cmd->add_flag("--mock", opts.mock, "Use the in-process deterministic mock backends");
  cmd->add_option("--detector-url", opts.detector_url, "Detector service base URL");
  cmd->add_option("--segmenter-url", opts.segmenter_url, "Segmenter service base URL");
  cmd->add_option("--captioner-url", opts.captioner_url, "Captioner service base URL");
  cmd->add_option("--background-url", opts.background_url,
                  "Background generator service base URL");
}

aga::BackendSet resolve_backends(const BackendOptions& opts) {
  if (opts.mock) return aga::make_mock_backends();
  if (opts.detector_url.empty() || opts.segmenter_url.empty() ||
      opts.captioner_url.empty() || opts.background_url.empty())
    aga::fail(aga::ErrorCode::InvalidArgument,
              "either --mock or all four --*-url endpoints are required");
  return aga::make_http_backends({opts.detector_url, opts.segmenter_url,
                                  opts.captioner_url, opts.background_url});
}

json backends_echo(const BackendOptions& opts) {
  if (opts.mock) return json{{"mode", "mock"}};
  return json{{"mode", "http"},
              {"detector", opts.detector_url},
              {"segmenter", opts.segmenter_url},
              {"captioner", opts.captioner_url},
              {"background", opts.background_url}};
}

aga::NoDetectionPolicy parse_policy(const std::string& name) {
  if (name == "error") return aga::NoDetectionPolicy::Error;
  if (name == "center-box") return aga::NoDetectionPolicy::CenterBox;
  aga::fail(aga::ErrorCode::InvalidArgument,
            "--on-no-detection must be 'error' or 'center-box'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dataset augmentation engine: subject isolation, generated "
               "backgrounds, affine manipulation, deterministic manifests"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");
  app.get_config_ptr()->configurable(false);

  // ---- augment ----
  auto* augment = app.add_subcommand("augment", "Plan and run kX augmentation");
  std::string dataset, out_dir, sets_path, superclasses_path;
  uint32_t scale = 1;
  uint64_t seed = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string policy_name = "error";
  std::vector<double> theta_range{-25.0, 25.0};
  std::vector<double> scale_range{0.7, 1.3};
  bool allow_vflip = false;
  bool allow_translate = false;
  BackendOptions aug_backends;

  augment->add_option("--dataset", dataset,
                      "Dataset manifest JSON, or a directory of class subdirectories")
      ->required();
  augment->add_option("--out", out_dir, "Output directory")->required();
  augment->add_option("--scale", scale, "Replicas per source image (k)")
      ->check(CLI::Range(1u, 1000u));
  augment->add_option("--seed", seed, "Global seed");
  augment->add_option("--sets", sets_path, "Modality sets JSON file")->required();
  augment->add_option("--superclasses", superclasses_path,
                      "Fine-name to superclass table (TSV)");
  augment->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  augment->add_option("--on-no-detection", policy_name,
                      "Policy when detection is empty: error | center-box");
  augment->add_option("--theta-range", theta_range, "Rotation range in degrees (min max)")
      ->expected(2);
  augment->add_option("--scale-range", scale_range, "Scale range (min max)")->expected(2);
  augment->add_flag("--allow-vflip", allow_vflip, "Permit vertical flips");
  augment->add_flag("--allow-translate", allow_translate,
                    "Randomly re-position the subject on the canvas");
  add_backend_options(augment, aug_backends);

  // ---- prompts ----
  auto* prompts = app.add_subcommand("prompts", "Sample rendered captioner prompts");
  std::string prompts_sets;
  uint64_t prompts_seed = 0;
  uint32_t prompts_n = 1;
  prompts->add_option("--sets", prompts_sets, "Modality sets JSON file")->required();
  prompts->add_option("--seed", prompts_seed, "Sampling seed");
  prompts->add_option("-n,--count", prompts_n, "Number of prompts to print");

  // ---- isolate ----
  auto* isolate_cmd = app.add_subcommand("isolate", "Cut one subject out of one image");
  std::string iso_image, iso_class, iso_superclasses;
  std::string iso_policy = "error";
  BackendOptions iso_backends;
  isolate_cmd->add_option("--image", iso_image, "Input image (PNG or JPEG)")->required();
  isolate_cmd->add_option("--class", iso_class, "Fine-grained class name")->required();
  isolate_cmd->add_option("--superclasses", iso_superclasses,
                          "Fine-name to superclass table (TSV)")
      ->required();
  isolate_cmd->add_option("--on-no-detection", iso_policy,
                          "Policy when detection is empty: error | center-box");
  add_backend_options(isolate_cmd, iso_backends);

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "Check a run manifest");
  std::string manifest_path;
  validate->add_option("manifest", manifest_path, "Path to manifest.jsonl")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (augment->parsed()) {
      aga::PromptLibrary library = aga::PromptLibrary::load(sets_path);
      aga::SuperclassTable table =
          superclasses_path.empty() ? aga::SuperclassTable::from_pairs({})
                                    : aga::SuperclassTable::load(superclasses_path);

      aga::DatasetManifest data = fs::is_directory(dataset)
                                      ? aga::scan_dataset_dir(dataset)
                                      : aga::load_dataset_manifest(dataset);
      std::vector<aga::AugTask> tasks = aga::plan(data, scale, seed, table);

      aga::RunConfig config;
      config.out_dir = out_dir;
      config.scale = scale;
      config.global_seed = seed;
      config.jobs = jobs;
      config.isolation.on_no_detection = parse_policy(policy_name);
      config.sets = library.sets;
      config.avoid = library.avoid;
      config.affine.rotation_min_deg = theta_range[0];
      config.affine.rotation_max_deg = theta_range[1];
      config.affine.scale_min = scale_range[0];
      config.affine.scale_max = scale_range[1];
      config.affine.allow_vflip = allow_vflip;
      config.allow_translate = allow_translate;
      config.config_json = json{{"allow_translate", allow_translate},
                                {"allow_vflip", allow_vflip},
                                {"backends", backends_echo(aug_backends)},
                                {"dataset", dataset},
                                {"jobs", jobs},
                                {"on_no_detection", policy_name},
                                {"out", out_dir},
                                {"scale", scale},
                                {"scale_range", scale_range},
                                {"seed", seed},
                                {"sets", sets_path},
                                {"superclasses", superclasses_path},
                                {"theta_range", theta_range}}
                               .dump();

      aga::BackendSet backends = resolve_backends(aug_backends);
      aga::RunSummary summary = aga::run(data, tasks, backends, config);
      std::printf("%zu done, %zu failed, %zu skipped\n", summary.done, summary.failed,
                  summary.skipped);
      return summary.failed == 0 ? 0 : 1;
    }

    if (prompts->parsed()) {
      aga::PromptLibrary library = aga::PromptLibrary::load(prompts_sets);
      aga::SeededRng rng(prompts_seed);
      for (uint32_t i = 0; i < prompts_n; ++i)
        std::printf("%s\n",
                    aga::sample_spec(rng, library.sets, library.avoid).rendered.c_str());
      std::printf("space: %llu\n",
                  static_cast<unsigned long long>(aga::space_size(library.sets)));
      return 0;
    }

    if (isolate_cmd->parsed()) {
      aga::SuperclassTable table = aga::SuperclassTable::load(iso_superclasses);
      aga::ClassLabel label{iso_class, table.resolve(iso_class)};
      aga::ImageBuffer image = aga::load_image(iso_image);

      aga::IsolationConfig config;
      config.on_no_detection = parse_policy(iso_policy);
      aga::BackendSet backends = resolve_backends(iso_backends);
      aga::MaskedSubject subject =
          aga::isolate(image, label, *backends.detector, *backends.segmenter, config);

      const fs::path input(iso_image);
      const fs::path cutout_path =
          input.parent_path() / (input.stem().string() + "_cutout.png");
      const fs::path mask_path = input.parent_path() / (input.stem().string() + "_mask.png");
      aga::save_png(cutout_path, subject.cutout);
      aga::save_png(mask_path, aga::mask_to_image(subject.mask));
      std::printf("%s\n%s\n", cutout_path.string().c_str(), mask_path.string().c_str());
      return 0;
    }

    if (validate->parsed()) {
      aga::ValidationReport report = aga::validate_manifest(manifest_path);
      for (const aga::Violation& v : report.violations)
        std::printf("%s: %s\n", v.kind.c_str(), v.detail.c_str());
      std::printf("%zu records, %zu violations\n", report.record_count,
                  report.violations.size());
      return report.ok() ? 0 : 1;
    }
  } catch (const aga::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
