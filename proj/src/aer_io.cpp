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


#include <biobraille/braille_synth.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace biobraille {

namespace {

constexpr std::string_view kMagic = "#aer v1";

template <class T>
T parse_number(std::string_view field, std::size_t line, const char *what) {
  T value{};
  const auto *first = field.data();
  const auto *last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(field) + "'");
  return value;
}

std::string_view header_value(std::string_view header, std::string_view key, std::size_t line) {
  const std::string needle = " " + std::string(key) + "=";
  const auto pos = header.find(needle);
  if (pos == std::string_view::npos) throw ParseError(line, "header lacks " + std::string(key));
  auto rest = header.substr(pos + needle.size());
  return rest.substr(0, rest.find(' '));
}

} // namespace

void write_aer(const TactileEventStream &stream, std::ostream &out) {
  stream.validate();
  out << kMagic << " width=" << stream.width << " height=" << stream.height
      << " duration_us=" << stream.duration_us << '\n';
  char buf[64];
  for (const auto &e : stream.events) {
    const int n = std::snprintf(buf, sizeof buf, "%lld,%u,%u,%s\n", static_cast<long long>(e.t_us),
                                static_cast<unsigned>(e.x), static_cast<unsigned>(e.y), e.polarity > 0 ? "+1" : "-1");
    out.write(buf, n);
  }
}

void write_aer(const TactileEventStream &stream, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_aer(stream, out);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

TactileEventStream read_aer(std::istream &in) {
  std::string text;
  std::size_t line_no = 1;
  if (!std::getline(in, text)) throw ParseError(1, "missing header");
  if (!text.empty() && text.back() == '\r') text.pop_back();
  std::string_view header(text);
  if (header.substr(0, kMagic.size()) != kMagic) throw ParseError(1, "header must start with '#aer v1'");

  TactileEventStream s;
  s.width = parse_number<int>(header_value(header, "width", 1), 1, "width");
  s.height = parse_number<int>(header_value(header, "height", 1), 1, "height");
  s.duration_us = parse_number<std::int64_t>(header_value(header, "duration_us", 1), 1, "duration_us");
  if (s.width <= 0 || s.height <= 0 || s.width > 65535 || s.height > 65535)
    throw ParseError(1, "sensor resolution out of range");
  if (s.duration_us <= 0) throw ParseError(1, "duration_us must be positive");

  std::int64_t prev_t = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    std::string_view row(text);
    std::array<std::string_view, 4> fields;
    std::size_t count = 0;
    while (count < 4) {
      const auto comma = row.find(',');
      fields[count++] = row.substr(0, comma);
      if (comma == std::string_view::npos) {
        row = {};
        break;
      }
      row.remove_prefix(comma + 1);
    }
    if (count != 4 || !row.empty()) throw ParseError(line_no, "expected 4 fields t_us,x,y,polarity");

    TactileEvent e;
    e.t_us = parse_number<std::int64_t>(fields[0], line_no, "timestamp");
    const auto x = parse_number<long>(fields[1], line_no, "x");
    const auto y = parse_number<long>(fields[2], line_no, "y");
    if (fields[3] == "+1") {
      e.polarity = 1;
    } else if (fields[3] == "-1") {
      e.polarity = -1;
    } else {
      throw ParseError(line_no, "polarity must be +1 or -1");
    }
    if (e.t_us < 0 || e.t_us > s.duration_us) throw ParseError(line_no, "timestamp outside [0, duration_us]");
    if (e.t_us < prev_t) throw ParseError(line_no, "timestamp decreases");
    if (x < 0 || x >= s.width || y < 0 || y >= s.height) throw ParseError(line_no, "coordinate outside the sensor");
    e.x = static_cast<std::uint16_t>(x);
    e.y = static_cast<std::uint16_t>(y);
    prev_t = e.t_us;
    s.events.push_back(e);
  }
  return s;
}

TactileEventStream read_aer(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_aer(in);
}

std::string aer_file_name(const TrialLabel &label) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%c_d%.1f_t%02d.aer", label.letter, label.depth_mm, label.trial_index);
  return buf;
}

} // namespace biobraille
