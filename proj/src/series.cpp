#include "edcp/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edcp/errors.hpp"

namespace edcp {

Series::Series(std::vector<double> values, std::size_t dim) : values_(std::move(values)), dim_(dim) {
  if (dim_ == 0) throw InputError("series dimension must be at least 1");
  if (values_.size() % dim_ != 0) {
    throw InputError("series of " + std::to_string(values_.size()) +
                     " coordinates is not a whole number of " + std::to_string(dim_) + "-d points");
  }
  auto bad = std::find_if(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); });
  if (bad != values_.end()) {
    const auto idx = static_cast<std::size_t>(bad - values_.begin());
    throw InputError("non-finite coordinate at point " + std::to_string(idx / dim_ + 1));
  }
}

Series Series::slice(std::size_t first, std::size_t count) const {
  Series out;
  out.dim_ = dim_;
  const auto begin = values_.begin() + static_cast<std::ptrdiff_t>(first * dim_);
  out.values_.assign(begin, begin + static_cast<std::ptrdiff_t>(count * dim_));
  return out;
}

Series Series::permuted(std::span<const std::size_t> order) const {
  Series out;
  out.dim_ = dim_;
  out.values_.reserve(order.size() * dim_);
  for (std::size_t idx : order) {
    auto p = point(idx);
    out.values_.insert(out.values_.end(), p.begin(), p.end());
  }
  return out;
}

Series Series::affine(double scale, double shift) const {
  Series out = *this;
  for (double& v : out.values_) v = scale * v + shift;
  return out;
}

Series Series::reversed() const {
  std::vector<std::size_t> order(size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  return permuted(order);
}

}  // namespace edcp
