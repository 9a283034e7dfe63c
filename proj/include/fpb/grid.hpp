#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fpb {

// Two bid grids are used throughout:
//   Unit   : {1/K, 2/K, ..., 1}          (value-quantization and group-bandit actions)
//   Offset : {0, 1/K, ..., (K-1)/K}      (interval estimators; spans bid 0)
// Offset grid point i owns the half-open interval (point(i), point(i+1)] with a
// sentinel right edge at 1, so the K intervals partition (0, 1].
enum class GridStyle { kUnit, kOffset };

class GridSpec {
 public:
  GridSpec(GridStyle style, int size) : style_(style), size_(size) {
    if (size < 1) throw std::invalid_argument("grid size must be >= 1");
  }

  GridStyle style() const { return style_; }
  int size() const { return size_; }

  // 0-based index -> bid value.
  double point(int i) const {
    return style_ == GridStyle::kUnit ? double(i + 1) / size_
                                      : double(i) / size_;
  }

  // Right edge of interval i (offset grids only): point(i+1), or 1 at the top.
  double upper_edge(int i) const {
    return i + 1 < size_ ? point(i + 1) : 1.0;
  }

  std::vector<double> points() const {
    std::vector<double> p(size_);
    for (int i = 0; i < size_; ++i) p[i] = point(i);
    return p;
  }

  // Smallest index whose point is >= b (clamped to the top); exact for on-grid b.
  int ceil_index(double b) const {
    double scaled = b * size_ - (style_ == GridStyle::kUnit ? 1.0 : 0.0);
    int i = int(std::ceil(scaled));
    if (i > size_ - 1) i = size_ - 1;  // offset grids top out below 1
    while (i > 0 && point(i - 1) >= b) --i;
    while (i < size_ - 1 && point(i) < b) ++i;
    if (i < 0) i = 0;
    return i;
  }

  // Index of the half-open interval (point(i), upper_edge(i)] containing m.
  // Valid for m in (point(0), 1]; every such m lands in exactly one interval.
  int interval_index(double m) const {
    int i = ceil_index(m);
    if (point(i) >= m) --i;
    if (i < 0) throw std::invalid_argument("value below the first interval");
    return i;
  }

  bool operator==(const GridSpec& o) const {
    return style_ == o.style_ && size_ == o.size_;
  }

 private:
  GridStyle style_;
  int size_;
};

inline int sqrt_grid_size(long long horizon) {
  return int(std::ceil(std::sqrt(double(horizon))));
}

}  // namespace fpb
