#include "aga/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "aga/error.hpp"

namespace aga {

namespace {

std::string to_lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_token_char(unsigned char c) { return std::isalnum(c) != 0; }

void check_list(const std::vector<std::string>& list, const char* name) {
  if (list.empty()) {
    fail(ErrorCode::InvalidArgument, std::string(name) + " list is empty");
  }
  std::unordered_set<std::string> seen;
  for (const auto& entry : list) {
    if (entry.empty()) {
      fail(ErrorCode::InvalidArgument, std::string(name) + " list contains an empty entry");
    }
    if (!seen.insert(entry).second) {
      fail(ErrorCode::InvalidArgument,
           std::string(name) + " list contains duplicate entry \"" + entry + "\"");
    }
  }
}

}  // namespace

void ModalitySets::validate() const {
  check_list(instructions, "instructions");
  check_list(backgrounds, "backgrounds");
  check_list(temporals, "temporals");
}

AvoidList AvoidList::from_words(const std::vector<std::string>& words) {
  AvoidList list;
  for (const auto& word : words) {
    const std::string lowered = to_lower(word);
    if (lowered.empty()) {
      fail(ErrorCode::InvalidArgument, "avoid list contains an empty word");
    }
    for (unsigned char c : lowered) {
      if (!is_token_char(c)) {
        fail(ErrorCode::InvalidArgument,
             "avoid word \"" + word + "\" is not a single alphanumeric token");
      }
    }
    list.words.insert(lowered);
  }
  return list;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::FatalIOError, "cannot open modality-set file " + path.string());
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument,
         "malformed modality-set file " + path.string() + ": " + e.what());
  }

  auto read_list = [&](const char* key) -> std::vector<std::string> {
    if (!doc.contains(key) || !doc[key].is_array()) {
      fail(ErrorCode::InvalidArgument,
           "modality-set file missing list \"" + std::string(key) + "\"");
    }
    return doc[key].get<std::vector<std::string>>();
  };

  PromptLibrary lib;
  lib.sets.instructions = read_list("instructions");
  lib.sets.backgrounds = read_list("backgrounds");
  lib.sets.temporals = read_list("temporals");
  lib.sets.validate();
  lib.avoid = AvoidList::from_words(read_list("avoid"));
  return lib;
}

uint64_t space_size(const ModalitySets& sets) {
  return static_cast<uint64_t>(sets.instructions.size()) * sets.backgrounds.size() *
         sets.temporals.size();
}

std::string render_prompt(uint32_t instruction_idx, uint32_t background_idx,
                          uint32_t temporal_idx, const ModalitySets& sets,
                          const AvoidList& avoid) {
  if (instruction_idx >= sets.instructions.size() ||
      background_idx >= sets.backgrounds.size() ||
      temporal_idx >= sets.temporals.size()) {
    fail(ErrorCode::IndexOutOfBounds, "prompt fragment index out of bounds");
  }
  std::string prompt = sets.instructions[instruction_idx] + " " +
                       sets.backgrounds[background_idx] + " " +
                       sets.temporals[temporal_idx] + ".";
  if (!avoid.words.empty()) {
    prompt += " Do not mention ";
    bool first = true;
    for (const auto& word : avoid.words) {  // std::set iterates sorted
      if (!first) prompt += ", ";
      prompt += word;
      first = false;
    }
    prompt += ".";
  }
  return prompt;
}

PromptSpec sample_spec(SeededRng& rng, const ModalitySets& sets, const AvoidList& avoid) {
  sets.validate();
  PromptSpec spec;
  spec.instruction_idx = static_cast<uint32_t>(rng.uniform_index(sets.instructions.size()));
  spec.background_idx = static_cast<uint32_t>(rng.uniform_index(sets.backgrounds.size()));
  spec.temporal_idx = static_cast<uint32_t>(rng.uniform_index(sets.temporals.size()));
  spec.rendered = render_prompt(spec.instruction_idx, spec.background_idx,
                                spec.temporal_idx, sets, avoid);
  return spec;
}

bool sanitize_caption(const std::string& caption, const AvoidList& avoid) {
  if (avoid.words.empty()) return true;
  const std::string lowered = to_lower(caption);
  size_t i = 0;
  while (i < lowered.size()) {
    if (!is_token_char(static_cast<unsigned char>(lowered[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < lowered.size() && is_token_char(static_cast<unsigned char>(lowered[j]))) {
      ++j;
    }
    if (avoid.words.count(lowered.substr(i, j - i)) > 0) return false;
    i = j;
  }
  return true;
}

CaptionResult obtain_caption(const PromptSpec& spec, Captioner& captioner,
                             const AvoidList& avoid, int max_retries) {
  if (max_retries < 1) {
    fail(ErrorCode::InvalidArgument, "max_retries must be >= 1");
  }
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    const std::string caption =
        captioner.caption(spec.rendered, static_cast<uint64_t>(attempt - 1));
    if (caption.empty()) {
      fail(ErrorCode::BackendError, "captioner returned an empty caption");
    }
    if (sanitize_caption(caption, avoid)) {
      return CaptionResult{caption, spec, attempt};
    }
  }
  fail(ErrorCode::CaptionRejectedAfterRetries,
       "no clean caption after " + std::to_string(max_retries) + " attempts");
}

}  // namespace aga
