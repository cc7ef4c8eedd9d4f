// Copyright 2026 The pptree Authors.
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

#include "pptree/data.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include "pptree/error.hpp"

namespace pptree {

namespace {

template <std::size_t N>
constexpr std::uint64_t fnv1a(const std::array<std::int32_t, N>& values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto v : values) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Activity times in units of 1e-4 rad, as recorded by the camera traps.
constexpr std::array<std::int32_t, 16> kPeccary{{
    30757, 27422, 32214, 8017, 23065, 26849, 45517, 43300,
    23421, 46541, 22754, 24580, 33150, 40887, 44092, 42632,
}};
static_assert(fnv1a(kPeccary) == 0xccaa7d2dacacc563ULL);

constexpr std::array<std::int32_t, 35> kTapir{{
    33352, 46813, 47835, 54591, 54929, 36559, 49567, 45505,
    37114, 46214, 55011, 7815, 4264, 56929, 46098, 712,
    47340, 47583, 8511, 45465, 40871, 13747, 48558, 9962,
    49629, 27328, 59844, 6099, 59213, 19393, 62521, 47322,
    48155, 51034, 5203,
}};
static_assert(fnv1a(kTapir) == 0x9bd7fc596d103661ULL);

constexpr std::array<std::int32_t, 115> kDeer{{
    45338, 49636, 23963, 1049, 6435, 16665, 27504, 5619,
    52474, 45670, 44406, 53001, 46440, 8320, 15593, 26858,
    53614, 15104, 21596, 45811, 49057, 61155, 19216, 36685,
    47676, 41158, 33225, 10981, 47476, 20472, 40766, 44075,
    44901, 56538, 54914, 20064, 58532, 833, 23170, 6101,
    53250, 7459, 34606, 48188, 44032, 42024, 15408, 53556,
    52969, 59074, 51198, 47095, 49927, 15943, 48544, 9802,
    47600, 48139, 49786, 23377, 50841, 41202, 62377, 27648,
    47023, 43310, 25126, 60751, 22459, 12403, 27941, 50400,
    53202, 14342, 32619, 19663, 47633, 57232, 21505, 39069,
    8642, 35219, 49393, 23317, 40359, 20050, 54570, 46069,
    60874, 1445, 9540, 34935, 16002, 52741, 5729, 61006,
    10324, 48253, 59624, 35083, 43276, 46632, 6040, 7223,
    34750, 51140, 49180, 42155, 45710, 5368, 51135, 31823,
    31831, 44513, 55457,
}};
static_assert(fnv1a(kDeer) == 0x5cab3ddc4d0b163bULL);

static_assert(kPeccary.size() == 16 && kTapir.size() == 35 && kDeer.size() == 115);

template <std::size_t N>
AngleSample from_table(std::string name, const std::array<std::int32_t, N>& table) {
  AngleSample s;
  s.name = std::move(name);
  s.angles.reserve(N);
  for (auto v : table) s.angles.emplace_back(static_cast<double>(v) / 10000.0);
  return s;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t,", pos);
    if (start == std::string_view::npos) break;
    const auto end = line.find_first_of(" \t,", start);
    fields.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
    pos = end == std::string_view::npos ? line.size() : end;
  }
  return fields;
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end && std::isfinite(out);
}

std::string format_angle(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

AngleUnit parse_angle_unit(std::string_view text) {
  if (text == "radians") return AngleUnit::Radians;
  if (text == "degrees") return AngleUnit::Degrees;
  if (text == "clock24") return AngleUnit::Clock24;
  throw DomainError("unknown angle unit '" + std::string(text) +
                    "' (expected radians, degrees or clock24)");
}

std::vector<double> AngleSample::radians() const {
  std::vector<double> out;
  out.reserve(angles.size());
  for (const auto& a : angles) out.push_back(a.radians());
  return out;
}

AngleSample load_angles(std::istream& in, AngleUnit unit, std::string name) {
  AngleSample sample;
  sample.name = std::move(name);
  std::string raw;
  std::size_t line_no = 0;
  bool seen_record = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    double value = 0.0;
    const bool numeric = fields.size() == 1 && parse_double(fields.front(), value);
    if (!numeric) {
      if (!seen_record) {
        seen_record = true;  // header
        continue;
      }
      if (fields.size() != 1) throw ParseError("expected one angle per row", line_no);
      throw ParseError("non-numeric record '" + std::string(fields.front()) + "'", line_no);
    }
    seen_record = true;
    double radians = value;
    if (unit == AngleUnit::Degrees) radians = value * kPi / 180.0;
    if (unit == AngleUnit::Clock24) radians = value * kTwoPi / 24.0;
    const CircularAngle angle(radians);
    if (angle.radians() != radians) {
      sample.warnings.push_back("line " + std::to_string(line_no) + ": angle " +
                                format_angle(radians) + " reduced to " +
                                format_angle(angle.radians()));
    }
    sample.angles.push_back(angle);
    sample.rows.push_back(line_no);
  }
  if (sample.angles.empty()) throw IngestionError("no angles found in input");
  return sample;
}

void write_angles(std::ostream& out, const AngleSample& sample) {
  out << "theta\n";
  for (const auto& a : sample.angles) out << format_angle(a.radians()) << '\n';
}

AngleSample triunfo(std::string_view species) {
  if (species == "peccary") return from_table("peccary", kPeccary);
  if (species == "tapir") return from_table("tapir", kTapir);
  if (species == "deer") return from_table("deer", kDeer);
  throw DomainError("unknown species '" + std::string(species) +
                    "' (expected peccary, tapir or deer)");
}

void MixtureSpec::validate() const {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
  for (const auto& loc : locations) {
    if (!std::isfinite(loc[0]) || !std::isfinite(loc[1])) {
      throw DomainError("mixture locations must be finite");
    }
  }
}

namespace {

CircularAngle draw_projected(double mu1, double mu2, Rng& rng) {
  for (;;) {
    const double x1 = mu1 + rng.normal();
    const double x2 = mu2 + rng.normal();
    if (x1 != 0.0 || x2 != 0.0) return cartesian_to_polar(x1, x2).theta;
  }
}

}  // namespace

AngleSample simulate_mixture(std::size_t n, const MixtureSpec& spec, Rng& rng) {
  spec.validate();
  if (n == 0) throw DomainError("sample size must be >= 1");
  AngleSample s;
  s.name = "mixture";
  s.angles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& loc = spec.locations[rng.categorical(spec.weights.data(), 4)];
    s.angles.push_back(draw_projected(loc[0], loc[1], rng));
  }
  return s;
}

AngleSample simulate_projected_normal(std::size_t n, const CenteringMeasure& mu, Rng& rng) {
  if (n == 0) throw DomainError("sample size must be >= 1");
  AngleSample s;
  s.name = "projnormal";
  s.angles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.angles.push_back(draw_projected(mu.mu1(), mu.mu2(), rng));
  return s;
}

}  // namespace pptree
