/*
 * Copyright (C) 2026 The biobraille Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <biobraille/json_io.hpp>
#include <biobraille/tables.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace biobraille {

std::string format_number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

namespace {

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T> T parse_field(const std::string &s, std::size_t line, const char *name) {
  T v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
    throw ParseError(line, std::string("bad ") + name + " '" + s + "'");
  return v;
}

TrialLabel parse_label(const std::vector<std::string> &f, std::size_t line) {
  TrialLabel l;
  if (f[0].size() != 1) throw ParseError(line, "bad letter '" + f[0] + "'");
  l.letter = f[0][0];
  l.depth_mm = parse_field<double>(f[1], line, "depth");
  l.trial_index = parse_field<int>(f[2], line, "trial");
  try {
    l.validate();
  } catch (const std::exception &e) {
    throw ParseError(line, e.what());
  }
  return l;
}

std::string label_prefix(const TrialLabel &l) {
  return std::string(1, l.letter) + ',' + format_number(l.depth_mm) + ',' + std::to_string(l.trial_index);
}

std::ifstream open_in(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

void strip_cr(std::string &s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
}

using LabelKey = std::tuple<int, int, int>;
LabelKey key_of(const TrialLabel &l) { return {l.letter_index(), l.depth_index(), l.trial_index}; }

} // namespace

std::string features_csv(std::span<const FeatureRow> rows) {
  std::string out = "letter,depth,trial,region,count,duration_us,peak_time_us,deviation\n";
  for (const auto &row : rows) {
    const auto prefix = label_prefix(row.label);
    for (std::size_t r = 0; r < row.features.regions.size(); ++r) {
      const auto &f = row.features.regions[r];
      out += prefix + ',' + std::to_string(r) + ',' + std::to_string(f.event_count) + ',' +
             std::to_string(f.event_duration_us) + ',' + std::to_string(f.peak_time_us) + ',' +
             format_number(f.event_deviation) + '\n';
    }
  }
  return out;
}

std::vector<FeatureRow> read_features_csv(const std::filesystem::path &path) {
  auto in = open_in(path);
  std::string line;
  std::size_t n = 0;
  std::vector<FeatureRow> rows;
  std::map<LabelKey, std::size_t> index;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (n == 1) {
      if (line.rfind("letter,", 0) != 0) throw ParseError(n, "missing header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) throw ParseError(n, "expected 8 fields, got " + std::to_string(f.size()));
    const auto label = parse_label(f, n);
    const int region = parse_field<int>(f[3], n, "region");
    if (region < 0 || region >= kElectrodes) throw ParseError(n, "region out of range");
    auto [it, fresh] = index.try_emplace(key_of(label), rows.size());
    if (fresh) {
      rows.push_back({label, {}});
      rows.back().features.regions.resize(kElectrodes);
    }
    auto &rf = rows[it->second].features.regions[static_cast<std::size_t>(region)];
    rf.event_count = parse_field<std::int64_t>(f[4], n, "count");
    rf.event_duration_us = parse_field<std::int64_t>(f[5], n, "duration_us");
    rf.peak_time_us = parse_field<std::int64_t>(f[6], n, "peak_time_us");
    rf.event_deviation = parse_field<double>(f[7], n, "deviation");
  }
  return rows;
}

std::string patterns_jsonl(std::span<const LabelledPattern> rows) {
  std::string out;
  for (const auto &r : rows) {
    json j = r.pattern;
    j["label"] = r.label;
    out += j.dump() + '\n';
  }
  return out;
}

std::vector<LabelledPattern> read_patterns_jsonl(const std::filesystem::path &path) {
  auto in = open_in(path);
  std::string line;
  std::size_t n = 0;
  std::vector<LabelledPattern> out;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      LabelledPattern p;
      j.at("label").get_to(p.label);
      p.label.validate();
      j.get_to(p.pattern);
      validate_platform(p.pattern);
      out.push_back(p);
    } catch (const ParseError &) {
      throw;
    } catch (const std::exception &e) {
      throw ParseError(n, e.what());
    }
  }
  return out;
}

std::string responses_csv(std::span<const std::vector<ResponseVector>> per_organoid) {
  std::string out = "letter,depth,trial,organoid";
  for (int k = 0; k < kElectrodes; ++k) out += ",ch" + std::to_string(k);
  out += '\n';
  for (std::size_t o = 0; o < per_organoid.size(); ++o) {
    for (const auto &r : per_organoid[o]) {
      if (r.counts.size() != static_cast<std::size_t>(kElectrodes))
        throw std::invalid_argument("responses_csv expects 8-channel vectors");
      out += label_prefix(r.label) + ',' + std::to_string(o);
      for (double c : r.counts) out += ',' + format_number(c);
      out += '\n';
    }
  }
  return out;
}

std::vector<std::vector<ResponseVector>> read_responses_csv(const std::filesystem::path &path) {
  auto in = open_in(path);
  std::string line;
  std::size_t n = 0;
  std::vector<std::vector<ResponseVector>> out;
  while (std::getline(in, line)) {
    ++n;
    strip_cr(line);
    if (n == 1) {
      if (line.rfind("letter,", 0) != 0) throw ParseError(n, "missing header");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 4 + static_cast<std::size_t>(kElectrodes))
      throw ParseError(n, "expected 12 fields, got " + std::to_string(f.size()));
    ResponseVector r;
    r.label = parse_label(f, n);
    const int o = parse_field<int>(f[3], n, "organoid");
    if (o < 0 || o > 64) throw ParseError(n, "organoid index out of range");
    for (int k = 0; k < kElectrodes; ++k) {
      const double c = parse_field<double>(f[4 + static_cast<std::size_t>(k)], n, "count");
      if (!(c >= 0)) throw ParseError(n, "negative count");
      r.counts.push_back(c);
    }
    if (static_cast<std::size_t>(o) >= out.size()) out.resize(static_cast<std::size_t>(o) + 1);
    out[static_cast<std::size_t>(o)].push_back(std::move(r));
  }
  for (std::size_t o = 1; o < out.size(); ++o) {
    if (out[o].size() != out[0].size()) throw std::runtime_error(path.string() + ": organoids list different trials");
    for (std::size_t i = 0; i < out[o].size(); ++i)
      if (!(out[o][i].label == out[0][i].label))
        throw std::runtime_error(path.string() + ": organoids list trials in different orders");
  }
  return out;
}

std::string confusion_csv(const CVReport &report) {
  std::string out = "true,predicted,count\n";
  for (std::size_t t = 0; t < report.confusion.size(); ++t)
    for (std::size_t p = 0; p < report.confusion[t].size(); ++p)
      if (report.confusion[t][p] != 0)
        out += std::string(1, static_cast<char>('A' + t)) + ',' + std::string(1, static_cast<char>('A' + p)) + ',' +
               std::to_string(report.confusion[t][p]) + '\n';
  return out;
}

} // namespace biobraille
