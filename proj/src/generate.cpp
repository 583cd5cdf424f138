#include "bpst/generate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "bpst/error.hpp"

namespace bpst {

XorShift64Star::XorShift64Star(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ULL) {
  if (state_ == 0) state_ = 1;
}

std::uint64_t XorShift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint64_t XorShift64Star::below(std::uint64_t bound) { return next() % bound; }

std::int64_t XorShift64Star::between(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

const char* to_string(Family f) {
  switch (f) {
    case Family::Uniform: return "uniform";
    case Family::Clusters: return "clusters";
    case Family::Chain: return "chain";
    case Family::Checker: return "checker";
    case Family::GridStress: return "gridstress";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::Uniform, Family::Clusters, Family::Chain, Family::Checker, Family::GridStress}) {
    if (name == to_string(f)) return f;
  }
  throw Error(ErrorKind::Usage, "unknown family '" + name + "'");
}

namespace {

using Micro = std::pair<std::int64_t, std::int64_t>;

class Builder {
 public:
  explicit Builder(int n) { points_.reserve(static_cast<std::size_t>(n)); }

  bool add(Micro p, Color c) {
    if (std::max(std::abs(p.first), std::abs(p.second)) > kMaxAbsMicro) return false;
    if (!taken_.insert(p).second) return false;
    points_.push_back({p, c});
    return true;
  }

  std::size_t size() const { return points_.size(); }
  const Micro& at(std::size_t i) const { return points_[i].first; }
  Color color(std::size_t i) const { return points_[i].second; }

  Instance finish() {
    if (points_.size() >= 2) {
      const bool has_red = std::any_of(points_.begin(), points_.end(), [](const auto& p) { return p.second == Color::Red; });
      const bool has_blue = std::any_of(points_.begin(), points_.end(), [](const auto& p) { return p.second == Color::Blue; });
      if (!has_red) points_.back().second = Color::Red;
      if (!has_blue) points_.back().second = Color::Blue;
    }
    Instance inst;
    for (const auto& [p, c] : points_) {
      inst.points.push_back({{p.first * kSubunits, p.second * kSubunits}, c, inst.size()});
    }
    return inst;
  }

 private:
  std::vector<std::pair<Micro, Color>> points_;
  std::set<Micro> taken_;
};

Color random_color(XorShift64Star& rng) { return rng.coin() ? Color::Blue : Color::Red; }

void fill_random(Builder& b, XorShift64Star& rng, const GenSpec& spec, auto color_of) {
  while (static_cast<int>(b.size()) < spec.n) {
    const Micro p{rng.between(0, spec.width), rng.between(0, spec.width)};
    b.add(p, color_of(p));
  }
}

std::int64_t isqrt(Wide v) {
  auto r = static_cast<Wide>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return static_cast<std::int64_t>(r);
}

// Random direction of length in [min_len, max_len], integer only.
Micro random_step(XorShift64Star& rng, std::int64_t min_len, std::int64_t max_len) {
  for (;;) {
    const std::int64_t dx = rng.between(-max_len, max_len);
    const std::int64_t dy = rng.between(-max_len, max_len);
    const Wide len2 = static_cast<Wide>(dx) * dx + static_cast<Wide>(dy) * dy;
    if (len2 <= static_cast<Wide>(max_len) * max_len && len2 >= static_cast<Wide>(min_len) * min_len) return {dx, dy};
  }
}

// Bichromatic walks with a slowly turning heading, branching from earlier
// points, every point within one step of an opposite-colored parent (so
// lambda <= step). The walks are sparse enough to leave single-colored and
// empty grid cells along them; occasional same-colored siblings form clumps.
void grow_stress(Builder& b, XorShift64Star& rng, const GenSpec& spec) {
  const std::int64_t r = spec.step;
  b.add({0, 0}, Color::Red);
  std::size_t tip = 0;
  Micro heading = random_step(rng, r - r / 8, r);
  while (static_cast<int>(b.size()) < spec.n) {
    if (rng.below(12) == 0) {
      tip = static_cast<std::size_t>(rng.below(b.size()));
      heading = random_step(rng, r - r / 8, r);
    }
    const Micro turn = random_step(rng, 0, r / 3);
    Micro v{heading.first + turn.first, heading.second + turn.second};
    const std::int64_t len = std::max<std::int64_t>(isqrt(static_cast<Wide>(v.first) * v.first + static_cast<Wide>(v.second) * v.second), 1);
    const std::int64_t target = rng.between(r - r / 6, r);
    v = {static_cast<std::int64_t>(static_cast<Wide>(v.first) * target / len),
         static_cast<std::int64_t>(static_cast<Wide>(v.second) * target / len)};
    const Micro base = b.at(tip);
    const Color c = opposite(b.color(tip));
    if (!b.add({base.first + v.first, base.second + v.second}, c)) {
      heading = random_step(rng, r - r / 8, r);
      continue;
    }
    heading = v;
    const std::size_t child = b.size() - 1;
    if (rng.below(8) == 0) {
      const int extra = 1 + static_cast<int>(rng.below(2));
      for (int k = 0; k < extra && static_cast<int>(b.size()) < spec.n; ++k) {
        const Micro d = random_step(rng, r / 4, r);
        b.add({base.first + d.first, base.second + d.second}, c);
      }
    }
    tip = child;
  }
}

}  // namespace

Instance generate(const GenSpec& spec) {
  if (spec.n < 1) throw Error(ErrorKind::DegenerateSpec, "n must be at least 1");
  if (spec.width <= 0 || spec.spread <= 0 || spec.spacing <= 0 || spec.tile <= 0 || spec.step <= 1 || spec.clusters < 1) {
    throw Error(ErrorKind::DegenerateSpec, "family parameters must be positive");
  }
  if (spec.width > kMaxAbsMicro || static_cast<Wide>(spec.spacing) * (spec.n - 1) > kMaxAbsMicro) {
    throw Error(ErrorKind::DegenerateSpec, "instance would exceed the coordinate range");
  }
  const std::uint64_t cells = static_cast<std::uint64_t>(spec.width) + 1;
  if (spec.family != Family::Chain && spec.family != Family::GridStress &&
      static_cast<Wide>(cells) * cells < static_cast<Wide>(spec.n) * 2) {
    throw Error(ErrorKind::DegenerateSpec, "sampling square too small for n distinct points");
  }

  const Wide cluster_cells = static_cast<Wide>(2 * spec.spread + 1) * (2 * spec.spread + 1);
  if (spec.family == Family::Clusters && cluster_cells < static_cast<Wide>(spec.n) * 2) {
    throw Error(ErrorKind::DegenerateSpec, "clusters too small for n distinct points");
  }

  XorShift64Star rng(spec.seed);
  Builder b(spec.n);
  switch (spec.family) {
    case Family::Uniform:
      fill_random(b, rng, spec, [&](const Micro&) { return random_color(rng); });
      break;
    case Family::Checker:
      fill_random(b, rng, spec, [&](const Micro& p) {
        return (p.first / spec.tile + p.second / spec.tile) % 2 == 0 ? Color::Red : Color::Blue;
      });
      break;
    case Family::Clusters: {
      std::vector<Micro> centers;
      for (int k = 0; k < spec.clusters; ++k) centers.push_back({rng.between(0, spec.width), rng.between(0, spec.width)});
      while (static_cast<int>(b.size()) < spec.n) {
        const Micro c = centers[static_cast<std::size_t>(rng.below(centers.size()))];
        const Micro p{c.first + rng.between(-spec.spread, spec.spread), c.second + rng.between(-spec.spread, spec.spread)};
        b.add(p, random_color(rng));
      }
      break;
    }
    case Family::Chain:
      for (int i = 0; i < spec.n; ++i) {
        b.add({static_cast<std::int64_t>(i) * spec.spacing, 0}, i % 2 == 0 ? Color::Red : Color::Blue);
      }
      break;
    case Family::GridStress:
      grow_stress(b, rng, spec);
      break;
  }
  return b.finish();
}

}  // namespace bpst
