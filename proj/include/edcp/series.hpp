#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edcp {

/// An ordered sample of n points in R^d, stored row-major.
class Series {
 public:
  Series() = default;

  /// `values` holds n*dim coordinates, point after point. Throws InputError
  /// on non-finite coordinates or a length that is not a multiple of dim.
  Series(std::vector<double> values, std::size_t dim);

  static Series scalar(std::vector<double> values) { return Series(std::move(values), 1); }

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Points [first, first + count).
  Series slice(std::size_t first, std::size_t count) const;

  /// Points reordered so that result[i] = (*this)[order[i]].
  Series permuted(std::span<const std::size_t> order) const;

  /// Every point mapped through x -> scale * x + shift, coordinatewise.
  Series affine(double scale, double shift) const;

  Series reversed() const;

 private:
  std::vector<double> values_;
  std::size_t dim_ = 1;
};

}  // namespace edcp
