#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edcp/rng.hpp"

namespace edcp {

enum class SchemeKind { uniform, circular_block };

/// How null replicates reorder the sample.
struct PermutationScheme {
  SchemeKind kind = SchemeKind::uniform;
  /// Block length M for circular_block; unset means ceil(sqrt(n)).
  std::optional<std::size_t> block_length;

  static PermutationScheme uniform() { return {}; }
  static PermutationScheme circular_block(std::optional<std::size_t> m = std::nullopt) {
    return {SchemeKind::circular_block, m};
  }

  /// M actually used for a sample of size n (1 for the uniform scheme).
  std::size_t resolved_block_length(std::size_t n) const;
};

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(const std::string& name);

/// Throws ParameterError on M == 0 or M > n for the block scheme.
void validate_scheme(const PermutationScheme& scheme, std::size_t n);

/// Concatenation of blocks B_1 = {0..M-1}, B_2 = {M..2M-1}, ... (the last one
/// possibly shorter) taken in `block_order`. Indices are 0-based.
std::vector<std::size_t> block_permutation(std::size_t n, std::size_t block_length,
                                           std::span<const std::size_t> block_order);

/// Random reordering of {0..n-1} under `scheme`, written into `out`
/// (resized to n).
void permute_indices(std::size_t n, const PermutationScheme& scheme, Rng& rng,
                     std::vector<std::size_t>& out);

std::vector<std::size_t> permute_indices(std::size_t n, const PermutationScheme& scheme, Rng& rng);

}  // namespace edcp
