// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The risloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risloc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace risloc {

namespace presets {
extern const std::string_view kFig3;
extern const std::string_view kFig4;
extern const std::string_view kFig5;
}  // namespace presets

namespace {

std::string join_lines(const std::vector<std::string>& messages) {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += '\n';
    out += m;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;
  bool repeated = false;
  int line = 0;
  std::map<std::string, Entry> entries;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"scenario", {"bs_m", "clock_bias_s", "los"}},
      {"waveform",
       {"n_subcarriers", "delta_f_hz", "carrier_hz", "wavelength_m", "n_transmissions", "power_dbm",
        "noise_psd_dbm_per_hz", "noise_figure_db"}},
      {"ris",
       {"center_m", "axis_u", "axis_v", "elements_u", "elements_v", "spacing_m",
        "spacing_wavelengths"}},
      {"obstacle", {"endpoint_a_m", "endpoint_b_m"}},
      {"sweep",
       {"kind", "regimes", "elements_per_side", "los_modes", "seeds", "output", "threads",
        "singularity_threshold"}},
      {"line", {"origin_m", "direction", "distances_m"}},
      {"grid", {"x_min_m", "x_max_m", "y_min_m", "y_max_m", "resolution_m", "z_m"}},
  };
  return s;
}

bool is_repeated(const std::string& name) { return name == "ris" || name == "obstacle"; }

// Collects diagnostics so one pass reports every problem.
class Diagnostics {
 public:
  explicit Diagnostics(std::string_view source) : source_(source) {}
  void add(int line, const std::string& msg) {
    if (line > 0)
      messages_.push_back(source_ + ":" + std::to_string(line) + ": " + msg);
    else
      messages_.push_back(source_ + ": " + msg);
  }
  bool empty() const { return messages_.empty(); }
  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::string source_;
  std::vector<std::string> messages_;
};

std::vector<Section> tokenize(std::string_view text, Diagnostics& diag) {
  std::vector<Section> sections;
  std::set<std::string> seen_single;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    // A comment starts at '#' or ';' at line start or after whitespace.
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if ((raw[i] == '#' || raw[i] == ';') && (i == 0 || raw[i - 1] == ' ' || raw[i - 1] == '\t')) {
        raw = raw.substr(0, i);
        break;
      }
    }
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      const bool repeated = line.starts_with("[[");
      const std::size_t open = repeated ? 2 : 1;
      if (!line.ends_with(repeated ? "]]" : "]") || line.size() <= 2 * open) {
        diag.add(line_no, "malformed section header '" + std::string(line) + "'");
        continue;
      }
      std::string name(trim(line.substr(open, line.size() - 2 * open)));
      if (!schema().contains(name)) {
        diag.add(line_no, "unknown section '" + name + "'");
      } else if (repeated != is_repeated(name)) {
        diag.add(line_no, repeated ? "section '" + name + "' must be written [" + name + "]"
                                   : "section '" + name + "' must be written [[" + name + "]]");
      } else if (!repeated && !seen_single.insert(name).second) {
        diag.add(line_no, "duplicate section [" + name + "]");
      }
      sections.push_back({name, repeated, line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      diag.add(line_no, "expected 'key = value'");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (sections.empty()) {
      diag.add(line_no, "key '" + key + "' outside of any section");
      continue;
    }
    Section& sec = sections.back();
    const auto known = schema().find(sec.name);
    if (known == schema().end()) continue;  // already reported
    if (!known->second.contains(key)) {
      diag.add(line_no, "unknown key '" + key + "' in [" + sec.name + "]");
      continue;
    }
    if (value.empty()) {
      diag.add(line_no, "key '" + key + "' has no value");
      continue;
    }
    if (!sec.entries.emplace(key, Entry{value, line_no}).second)
      diag.add(line_no, "duplicate key '" + key + "'");
  }
  return sections;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.starts_with('+')) s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// "[a, b, c]" -> {a, b, c}; a bare scalar is a one-element list.
std::optional<std::vector<std::string>> to_items(std::string_view s) {
  s = trim(s);
  if (!s.starts_with('[')) return std::vector<std::string>{std::string(s)};
  if (!s.ends_with(']')) return std::nullopt;
  s = trim(s.substr(1, s.size() - 2));
  std::vector<std::string> items;
  if (s.empty()) return items;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    const auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (item.empty()) return std::nullopt;
    items.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

// Typed access to one section with diagnostics on failure.
class Reader {
 public:
  Reader(const Section* sec, Diagnostics& diag) : sec_(sec), diag_(diag) {}

  bool has(const std::string& key) const { return sec_ && sec_->entries.contains(key); }
  int line(const std::string& key) const { return has(key) ? sec_->entries.at(key).line : (sec_ ? sec_->line : 0); }

  void require(const std::string& key, const std::string& section) {
    if (!has(key)) diag_.add(sec_ ? sec_->line : 0, "missing required key '" + key + "' in [" + section + "]");
  }

  void number(const std::string& key, double& out) {
    if (!has(key)) return;
    if (auto v = to_double(raw(key)))
      out = *v;
    else
      bad(key, "a number");
  }

  template <class I>
  void integer(const std::string& key, I& out) {
    if (!has(key)) return;
    if (auto v = to_integer(raw(key)))
      out = static_cast<I>(*v);
    else
      bad(key, "an integer");
  }

  void vec3(const std::string& key, Vec3& out) {
    if (!has(key)) return;
    auto items = to_items(raw(key));
    if (!items || items->size() != 3) return bad(key, "a list of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
      auto x = to_double((*items)[i]);
      if (!x) return bad(key, "a list of 3 numbers");
      v[i] = *x;
    }
    out = v;
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (!has(key)) return;
    auto items = to_items(raw(key));
    if (!items) return bad(key, "a list of numbers");
    std::vector<double> v;
    for (const auto& it : *items) {
      auto x = to_double(it);
      if (!x) return bad(key, "a list of numbers");
      v.push_back(*x);
    }
    out = std::move(v);
  }

  // Integers as a list, a scalar, or an inclusive range a..b.
  void integers(const std::string& key, std::vector<long long>& out) {
    if (!has(key)) return;
    const std::string value = raw(key);
    if (const auto dots = value.find(".."); dots != std::string::npos && !value.starts_with('[')) {
      auto lo = to_integer(std::string_view(value).substr(0, dots));
      auto hi = to_integer(std::string_view(value).substr(dots + 2));
      if (!lo || !hi || *hi < *lo) return bad(key, "an integer range a..b with a <= b");
      out.clear();
      for (long long i = *lo; i <= *hi; ++i) out.push_back(i);
      return;
    }
    auto items = to_items(value);
    if (!items) return bad(key, "a list of integers");
    std::vector<long long> v;
    for (const auto& it : *items) {
      auto x = to_integer(it);
      if (!x) return bad(key, "a list of integers");
      v.push_back(*x);
    }
    out = std::move(v);
  }

  void words(const std::string& key, std::vector<std::string>& out) {
    if (!has(key)) return;
    auto items = to_items(raw(key));
    if (!items) return bad(key, "a list of words");
    out = std::move(*items);
  }

  void word(const std::string& key, std::string& out) {
    if (has(key)) out = raw(key);
  }

  void error(const std::string& key, const std::string& msg) { diag_.add(line(key), msg); }

 private:
  std::string raw(const std::string& key) const { return sec_->entries.at(key).value; }
  void bad(const std::string& key, const std::string& expected) {
    diag_.add(line(key), "key '" + key + "' must be " + expected + ", got '" + raw(key) + "'");
  }

  const Section* sec_;
  Diagnostics& diag_;
};

std::optional<LosMode> parse_los(const std::string& w) {
  if (w == "auto") return LosMode::Auto;
  if (w == "los") return LosMode::ForcedLoS;
  if (w == "nlos") return LosMode::ForcedNLoS;
  return std::nullopt;
}

std::optional<Regime> parse_regime(const std::string& w) {
  if (w == "nf") return Regime::NearField;
  if (w == "ff") return Regime::FarField;
  return std::nullopt;
}

const Section* find_single(const std::vector<Section>& sections, const std::string& name) {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : ValidationError(join_lines(messages)), messages_(std::move(messages)) {}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::vector<double> GridSpec::xs() const {
  std::vector<double> v;
  const auto n = static_cast<long long>(std::floor((x_max - x_min) / resolution + 1e-9));
  for (long long i = 0; i <= n; ++i) v.push_back(x_min + static_cast<double>(i) * resolution);
  return v;
}

std::vector<double> GridSpec::ys() const {
  std::vector<double> v;
  const auto n = static_cast<long long>(std::floor((y_max - y_min) / resolution + 1e-9));
  for (long long i = 0; i <= n; ++i) v.push_back(y_min + static_cast<double>(i) * resolution);
  return v;
}

SweepConfig parse_config(std::string_view text, std::string_view source) {
  Diagnostics diag(source);
  const std::vector<Section> sections = tokenize(text, diag);
  SweepConfig cfg;
  Scenario& sc = cfg.scenario;
  WaveformParams& wf = sc.waveform;

  {
    Reader r(find_single(sections, "scenario"), diag);
    r.vec3("bs_m", sc.bs);
    r.number("clock_bias_s", sc.clock_bias);
    std::string los;
    r.word("los", los);
    if (!los.empty()) {
      if (auto m = parse_los(los))
        sc.los_mode = *m;
      else
        r.error("los", "key 'los' must be one of auto, los, nlos");
    }
  }

  {
    Reader r(find_single(sections, "waveform"), diag);
    r.integer("n_subcarriers", wf.n_subcarriers);
    r.number("delta_f_hz", wf.subcarrier_spacing);
    r.number("carrier_hz", wf.carrier_frequency);
    r.number("wavelength_m", wf.wavelength_override);
    r.integer("n_transmissions", wf.n_transmissions);
    double power_dbm = 20.0, noise_dbm = -174.0;
    r.number("power_dbm", power_dbm);
    r.number("noise_psd_dbm_per_hz", noise_dbm);
    r.number("noise_figure_db", wf.noise_figure_db);
    wf.total_power = dbm_to_watts(power_dbm);
    wf.noise_psd = dbm_to_watts(noise_dbm);
  }

  const bool waveform_ok = wf.n_subcarriers > 0 && wf.subcarrier_spacing > 0.0 &&
                           (wf.wavelength_override > 0.0 || wf.carrier_frequency > 0.0);
  for (const auto& sec : sections) {
    if (sec.name == "ris") {
      Reader r(&sec, diag);
      RisDescriptor ris;
      r.vec3("center_m", ris.center);
      r.vec3("axis_u", ris.axis_u);
      r.vec3("axis_v", ris.axis_v);
      r.integer("elements_u", ris.elements_u);
      r.integer("elements_v", ris.elements_v);
      if (r.has("spacing_m") && r.has("spacing_wavelengths")) {
        r.error("spacing_m", "give either spacing_m or spacing_wavelengths, not both");
      } else if (r.has("spacing_m")) {
        r.number("spacing_m", ris.spacing);
      } else {
        double halves = 0.5;
        r.number("spacing_wavelengths", halves);
        if (waveform_ok) ris.spacing = halves * wf.wavelength();
      }
      try {
        ris.validate();
      } catch (const ValidationError& e) {
        diag.add(sec.line, std::string("[[ris]]: ") + e.what());
      }
      sc.ris_list.push_back(ris);
    } else if (sec.name == "obstacle") {
      Reader r(&sec, diag);
      r.require("endpoint_a_m", "obstacle");
      r.require("endpoint_b_m", "obstacle");
      Obstacle ob;
      r.vec3("endpoint_a_m", ob.endpoint_a);
      r.vec3("endpoint_b_m", ob.endpoint_b);
      sc.obstacles.push_back(ob);
    }
  }

  const Section* sweep_sec = find_single(sections, "sweep");
  Reader sw(sweep_sec, diag);
  sw.require("kind", "sweep");
  sw.require("seeds", "sweep");
  std::string kind;
  sw.word("kind", kind);
  if (kind == "line")
    cfg.kind = SweepKind::Line;
  else if (kind == "grid")
    cfg.kind = SweepKind::Grid;
  else if (!kind.empty())
    sw.error("kind", "key 'kind' must be 'line' or 'grid', got '" + kind + "'");

  std::vector<std::string> words;
  if (sw.has("regimes")) {
    sw.words("regimes", words);
    cfg.regimes.clear();
    for (const auto& w : words) {
      if (auto g = parse_regime(w))
        cfg.regimes.push_back(*g);
      else
        sw.error("regimes", "unknown regime '" + w + "' (expected nf or ff)");
    }
    if (cfg.regimes.empty()) sw.error("regimes", "key 'regimes' must list at least one regime");
  }
  if (sw.has("los_modes")) {
    words.clear();
    sw.words("los_modes", words);
    cfg.los_modes.clear();
    for (const auto& w : words) {
      if (auto m = parse_los(w))
        cfg.los_modes.push_back(*m);
      else
        sw.error("los_modes", "unknown LoS mode '" + w + "' (expected auto, los or nlos)");
    }
    if (cfg.los_modes.empty()) sw.error("los_modes", "key 'los_modes' must list at least one mode");
  } else {
    cfg.los_modes = {sc.los_mode};
  }
  std::vector<long long> ints;
  if (sw.has("elements_per_side")) {
    sw.integers("elements_per_side", ints);
    for (long long v : ints) {
      if (v <= 0)
        sw.error("elements_per_side", "elements_per_side entries must be positive");
      else
        cfg.elements_per_side.push_back(static_cast<int>(v));
    }
  }
  ints.clear();
  sw.integers("seeds", ints);
  for (long long v : ints) {
    if (v < 0)
      sw.error("seeds", "seeds must be non-negative");
    else
      cfg.seeds.push_back(static_cast<std::uint64_t>(v));
  }
  if (sw.has("seeds") && cfg.seeds.empty()) sw.error("seeds", "at least one seed is required");
  sw.word("output", cfg.output);
  long long threads = 0;
  sw.integer("threads", threads);
  if (threads < 0) sw.error("threads", "threads must be >= 0");
  cfg.threads = static_cast<unsigned>(std::max(threads, 0LL));
  sw.number("singularity_threshold", cfg.singularity_threshold);
  if (!(cfg.singularity_threshold > 0.0 && cfg.singularity_threshold < 1.0))
    sw.error("singularity_threshold", "singularity_threshold must lie in (0, 1)");

  if (cfg.kind == SweepKind::Line && kind == "line") {
    const Section* sec = find_single(sections, "line");
    Reader r(sec, diag);
    if (!sec) diag.add(0, "missing section [line] for a line sweep");
    r.require("distances_m", "line");
    r.vec3("origin_m", cfg.line.origin);
    r.vec3("direction", cfg.line.direction);
    r.numbers("distances_m", cfg.line.distances);
    const double n = cfg.line.direction.norm();
    if (!(n > 0.0))
      r.error("direction", "line direction must be non-zero");
    else
      cfg.line.direction /= n;
    if (r.has("distances_m") && cfg.line.distances.empty())
      r.error("distances_m", "at least one distance is required");
    for (double d : cfg.line.distances)
      if (!(d > 0.0)) {
        r.error("distances_m", "sample distances must be > 0");
        break;
      }
  } else if (kind == "grid") {
    const Section* sec = find_single(sections, "grid");
    Reader r(sec, diag);
    if (!sec) diag.add(0, "missing section [grid] for a grid sweep");
    for (const char* key : {"x_min_m", "x_max_m", "y_min_m", "y_max_m", "resolution_m"})
      r.require(key, "grid");
    r.number("x_min_m", cfg.grid.x_min);
    r.number("x_max_m", cfg.grid.x_max);
    r.number("y_min_m", cfg.grid.y_min);
    r.number("y_max_m", cfg.grid.y_max);
    r.number("resolution_m", cfg.grid.resolution);
    r.number("z_m", cfg.grid.z);
    if (!(cfg.grid.resolution > 0.0)) r.error("resolution_m", "grid resolution must be > 0");
    if (cfg.grid.x_max < cfg.grid.x_min) r.error("x_max_m", "x_max_m must be >= x_min_m");
    if (cfg.grid.y_max < cfg.grid.y_min) r.error("y_max_m", "y_max_m must be >= y_min_m");
  }

  try {
    wf.validate();
  } catch (const ValidationError& e) {
    diag.add(0, std::string("[waveform]: ") + e.what());
  }

  if (!diag.empty()) throw ConfigError(diag.messages());
  return cfg;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError({path.string() + ": cannot open file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::optional<std::string_view> preset_text(std::string_view name) {
  if (name == "paper-fig3") return presets::kFig3;
  if (name == "paper-fig4") return presets::kFig4;
  if (name == "paper-fig5") return presets::kFig5;
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"paper-fig3", "paper-fig4", "paper-fig5"}; }

SweepConfig load_preset(std::string_view name) {
  auto text = preset_text(name);
  if (!text) throw ConfigError({"unknown preset '" + std::string(name) + "'"});
  return parse_config(*text, name);
}

}  // namespace risloc
