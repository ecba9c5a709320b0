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


#include <biobraille/noise_harness.hpp>
#include <biobraille/rng.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace biobraille {

NoiseKind parse_noise_kind(const std::string &name) {
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "uniform") return NoiseKind::uniform;
  if (name == "missing") return NoiseKind::missing;
  if (name == "outliers") return NoiseKind::outliers;
  throw std::invalid_argument("unknown noise kind '" + name + "'");
}

std::string to_string(NoiseKind kind) {
  switch (kind) {
  case NoiseKind::gaussian: return "gaussian";
  case NoiseKind::uniform: return "uniform";
  case NoiseKind::missing: return "missing";
  case NoiseKind::outliers: return "outliers";
  }
  return "?";
}

NoisePlacement parse_noise_placement(const std::string &name) {
  if (name == "all") return NoisePlacement::all;
  if (name == "test") return NoisePlacement::test;
  throw std::invalid_argument("unknown noise placement '" + name + "' (expected all or test)");
}

void NoiseSpec::validate(std::size_t dimension) const {
  if (!(fraction >= 0 && fraction <= 1)) throw std::invalid_argument("noise fraction outside [0,1]");
  if (channel_count < 0 || static_cast<std::size_t>(channel_count) > dimension)
    throw std::invalid_argument("noise channel_count " + std::to_string(channel_count) + " exceeds dimension " +
                                std::to_string(dimension));
  if (!(scale >= 0)) throw std::invalid_argument("noise scale must be nonnegative");
  if (!(outlier_factor >= 0)) throw std::invalid_argument("outlier factor must be nonnegative");
}

std::vector<int> draw_noise_channels(std::size_t dimension, int count, std::uint64_t seed) {
  std::vector<int> all(dimension);
  std::iota(all.begin(), all.end(), 0);
  Rng rng(derive_seed(seed, {0xc4a7}));
  // partial Fisher-Yates
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), dimension - 1);
    std::swap(all[static_cast<std::size_t>(i)], all[pick(rng)]);
  }
  all.resize(static_cast<std::size_t>(count));
  return all;
}

NoisedDataset apply_noise(std::span<const ResponseVector> data, const NoiseSpec &spec) {
  if (data.empty()) throw std::invalid_argument("cannot add noise to an empty dataset");
  const std::size_t dim = data.front().counts.size();
  spec.validate(dim);

  NoisedDataset out{{data.begin(), data.end()}, draw_noise_channels(dim, spec.channel_count, spec.seed)};
  const std::size_t n = data.size();
  const auto hits = static_cast<std::size_t>(std::lround(spec.fraction * static_cast<double>(n)));

  for (int c : out.channels) {
    const auto ch = static_cast<std::size_t>(c);
    Rng rng(derive_seed(spec.seed, {0x5a3, static_cast<std::uint64_t>(c)}));

    double mean = 0.0;
    for (const auto &r : data) mean += r.counts[ch];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto &r : data) ss += (r.counts[ch] - mean) * (r.counts[ch] - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    const double amp = spec.scale * sd;

    switch (spec.kind) {
    case NoiseKind::gaussian: {
      if (amp <= 0) break;
      std::normal_distribution<double> noise(0.0, amp);
      for (auto &r : out.data) r.counts[ch] = std::max(0.0, r.counts[ch] + noise(rng));
      break;
    }
    case NoiseKind::uniform: {
      if (amp <= 0) break;
      std::uniform_real_distribution<double> noise(-amp, amp);
      for (auto &r : out.data) r.counts[ch] = std::max(0.0, r.counts[ch] + noise(rng));
      break;
    }
    case NoiseKind::missing:
    case NoiseKind::outliers: {
      std::vector<std::size_t> rows(n);
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      for (std::size_t i = 0; i < hits; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(rows[i], rows[pick(rng)]);
      }
      for (std::size_t i = 0; i < hits; ++i) {
        double &v = out.data[rows[i]].counts[ch];
        v = spec.kind == NoiseKind::missing ? 0.0 : std::max(0.0, v * spec.outlier_factor);
      }
      break;
    }
    }
  }
  return out;
}

double RobustnessReport::mean_degradation(const std::string &mode, NoiseKind kind) const {
  double sum = 0.0;
  int n = 0;
  for (const auto &r : rows) {
    if (r.mode == mode && r.kind == kind) {
      sum += r.degradation();
      ++n;
    }
  }
  if (n == 0) throw std::invalid_argument("no robustness rows for mode " + mode + " / " + to_string(kind));
  return sum / n;
}

namespace {

void evaluate(const std::string &mode, int organoid, std::span<const ResponseVector> data,
              const RobustnessOptions &opts, std::vector<RobustnessRow> &rows) {
  const double clean = cross_validate(data, opts.cv).mean_accuracy;
  for (NoiseKind kind : opts.kinds) {
    std::vector<double> acc;
    for (int r = 0; r < opts.repeats; ++r) {
      NoiseSpec spec = opts.noise;
      spec.kind = kind;
      spec.seed = derive_seed(opts.seed, {static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(organoid + 1)});
      const auto noised = apply_noise(data, spec);
      const auto rep = opts.placement == NoisePlacement::all
                           ? cross_validate(noised.data, opts.cv)
                           : cross_validate(data, opts.cv, std::span<const ResponseVector>(noised.data));
      acc.push_back(rep.mean_accuracy);
    }
    RobustnessRow row;
    row.mode = mode;
    row.organoid = organoid;
    row.kind = kind;
    row.clean_accuracy = clean;
    row.repeats = opts.repeats;
    row.noised_accuracy = std::accumulate(acc.begin(), acc.end(), 0.0) / static_cast<double>(acc.size());
    double ss = 0.0;
    for (double a : acc) ss += (a - row.noised_accuracy) * (a - row.noised_accuracy);
    row.noised_sd = acc.size() > 1 ? std::sqrt(ss / static_cast<double>(acc.size() - 1)) : 0.0;
    rows.push_back(row);
  }
}

} // namespace

RobustnessReport robustness_report(std::span<const std::vector<ResponseVector>> singles,
                                   std::span<const ResponseVector> ensemble, const RobustnessOptions &opts) {
  if (opts.repeats < 1) throw std::invalid_argument("robustness needs at least one repeat");
  RobustnessReport rep;
  for (std::size_t i = 0; i < singles.size(); ++i) evaluate("single", static_cast<int>(i), singles[i], opts, rep.rows);
  if (!ensemble.empty()) evaluate("ensemble", -1, ensemble, opts, rep.rows);
  return rep;
}

} // namespace biobraille
