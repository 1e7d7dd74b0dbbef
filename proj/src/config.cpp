// Copyright 2026 The arcorpus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arcorpus/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "arcorpus/errors.hpp"
#include "arcorpus/transforms.hpp"
#include "arcorpus/utf8.hpp"
#include "json.hpp"

namespace arcorpus {

using nlohmann::json;

const std::vector<std::string>& known_transforms() {
  namespace n = transform_names;
  static const std::vector<std::string> names = {
      std::string(n::kStripHtml),          std::string(n::kMaskUrls),
      std::string(n::kMaskEmails),         std::string(n::kNormalizeDigits),
      std::string(n::kMaskPhones),         std::string(n::kStripTatweel),
      std::string(n::kNormalizeHamza),     std::string(n::kStripParentheticals),
      std::string(n::kRemoveSlashHyphen),  std::string(n::kNormalizePunctuation),
      std::string(n::kCollapseElongation), std::string(n::kRemoveNoisy),
      std::string(n::kCollapseWhitespace),
  };
  return names;
}

// Markup and identifiers are masked first; digits are normalized ahead of
// phone masking so the phone grammar only sees ASCII digits.
const std::vector<std::string>& default_transform_order() { return known_transforms(); }

void CleanConfig::validate() const {
  mask.validate();
  if (max_run < 1) throw ConfigError("max_run must be >= 1");
  const auto& known = known_transforms();
  std::set<std::string> seen;
  for (const auto& name : transform_order) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("unknown transform '" + name + "'");
    }
    if (!seen.insert(name).second) throw ConfigError("transform '" + name + "' listed twice");
  }
  auto check_flag = [&](std::string_view name, bool enabled) {
    if (seen.count(std::string(name)) != static_cast<size_t>(enabled)) {
      throw ConfigError("transform_order must " + std::string(enabled ? "" : "not ") + "contain '" +
                        std::string(name) + "' when its mask policy flag is " +
                        (enabled ? "true" : "false"));
    }
  };
  check_flag(transform_names::kStripHtml, mask.strip_html);
  check_flag(transform_names::kStripParentheticals, mask.strip_parentheticals);
}

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config: '") + key + "' has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("config: unknown key '" + key + "' in " + std::string(where));
    }
  }
}

}  // namespace

CleanConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root, {"mask", "kept_punctuation", "preserve_emoji", "max_run", "transform_order"},
                 "config");

  CleanConfig cfg;
  if (root.contains("mask")) {
    const json& m = root["mask"];
    if (!m.is_object()) throw ConfigError("config: 'mask' must be an object");
    reject_unknown(m, {"url_tag", "mail_tag", "phone_tag", "strip_html", "strip_parentheticals"},
                   "mask");
    if (m.contains("url_tag")) cfg.mask.url_tag = get_as<std::string>(m["url_tag"], "url_tag");
    if (m.contains("mail_tag")) cfg.mask.mail_tag = get_as<std::string>(m["mail_tag"], "mail_tag");
    if (m.contains("phone_tag")) cfg.mask.phone_tag = get_as<std::string>(m["phone_tag"], "phone_tag");
    if (m.contains("strip_html")) cfg.mask.strip_html = get_as<bool>(m["strip_html"], "strip_html");
    if (m.contains("strip_parentheticals")) {
      cfg.mask.strip_parentheticals = get_as<bool>(m["strip_parentheticals"], "strip_parentheticals");
    }
  }
  if (root.contains("kept_punctuation")) {
    const auto kept = get_as<std::string>(root["kept_punctuation"], "kept_punctuation");
    if (!utf8::is_valid(kept)) throw ConfigError("config: kept_punctuation is not UTF-8");
    cfg.chars.kept_punctuation = utf8::decode(kept);
  }
  if (root.contains("preserve_emoji")) {
    cfg.chars.preserve_emoji = get_as<bool>(root["preserve_emoji"], "preserve_emoji");
  }
  if (root.contains("max_run")) cfg.max_run = get_as<int>(root["max_run"], "max_run");
  if (root.contains("transform_order")) {
    cfg.transform_order = get_as<std::vector<std::string>>(root["transform_order"], "transform_order");
  } else {
    std::erase_if(cfg.transform_order, [&](const std::string& name) {
      return (name == transform_names::kStripHtml && !cfg.mask.strip_html) ||
             (name == transform_names::kStripParentheticals && !cfg.mask.strip_parentheticals);
    });
  }
  cfg.validate();
  return cfg;
}

CleanConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const CleanConfig& cfg, int indent) {
  nlohmann::ordered_json j;
  j["mask"] = {{"url_tag", cfg.mask.url_tag},
               {"mail_tag", cfg.mask.mail_tag},
               {"phone_tag", cfg.mask.phone_tag},
               {"strip_html", cfg.mask.strip_html},
               {"strip_parentheticals", cfg.mask.strip_parentheticals}};
  j["kept_punctuation"] = utf8::encode(cfg.chars.kept_punctuation);
  j["preserve_emoji"] = cfg.chars.preserve_emoji;
  j["max_run"] = cfg.max_run;
  j["transform_order"] = cfg.transform_order;
  if (!cfg.patterns.empty()) {
    auto& p = j["pattern_overrides"];
    p = nlohmann::ordered_json::object();
    for (const auto& [name, pattern] : cfg.patterns.sources) p[name] = pattern;
  }
  return j.dump(indent);
}

}  // namespace arcorpus
