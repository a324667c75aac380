#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "aga/backend.hpp"
#include "aga/rng.hpp"

namespace aga {

// The three fragment lists whose Cartesian product defines the prompt space:
// an instruction ("Describe a scene"), a spatial background ("in a dense
// forest"), and a temporal modality ("at dawn").
struct ModalitySets {
  std::vector<std::string> instructions;
  std::vector<std::string> backgrounds;
  std::vector<std::string> temporals;

  void validate() const;  // non-empty lists, non-empty unique entries
};

// Subject words that must never appear in a caption sent to the background
// generator. Entries are lowercase single tokens.
struct AvoidList {
  std::set<std::string> words;

  static AvoidList from_words(const std::vector<std::string>& words);
};

// One sampled (instruction, background, temporal) triple plus the rendered
// prompt text sent to the captioner.
struct PromptSpec {
  uint32_t instruction_idx = 0;
  uint32_t background_idx = 0;
  uint32_t temporal_idx = 0;
  std::string rendered;
};

struct CaptionResult {
  std::string caption;
  PromptSpec spec;
  int attempts = 0;
};

// Modality configuration file: named lists "instructions", "backgrounds",
// "temporals", "avoid".
struct PromptLibrary {
  ModalitySets sets;
  AvoidList avoid;

  static PromptLibrary load(const std::filesystem::path& path);
};

// |Ins| x |Bgr| x |Temp|.
uint64_t space_size(const ModalitySets& sets);

// Deterministic template: the three fragments in instruction -> background ->
// temporal order, a period, then an exclusion trailer naming the avoid words
// (sorted) when the list is non-empty.
std::string render_prompt(uint32_t instruction_idx, uint32_t background_idx,
                          uint32_t temporal_idx, const ModalitySets& sets,
                          const AvoidList& avoid);

// Each index drawn independently and uniformly; draw order is instruction,
// background, temporal.
PromptSpec sample_spec(SeededRng& rng, const ModalitySets& sets, const AvoidList& avoid);

// Accepts unless some avoid word matches a whole token of the lowercased
// caption (token boundary: any non-alphanumeric byte).
bool sanitize_caption(const std::string& caption, const AvoidList& avoid);

// Calls the captioner with spec.rendered, redrawing with a fresh nonce while
// the caption trips the avoid list, up to max_retries calls total.
CaptionResult obtain_caption(const PromptSpec& spec, Captioner& captioner,
                             const AvoidList& avoid, int max_retries);

}  // namespace aga
