// speclab: on-disk cache for phi solves.
//
// Layout under the cache root:
//   phi/{a:%.12f}_{plus|minus}_{n}.bin   little-endian f64 triplets
//                                        (x_i, w_i, phi_i), node-major
//   phi/{...}.json                       metadata (schema, tier, format)
//   phi/{...}.hp                         full-precision decimal values,
//                                        written only when the tier is wider
//                                        than f64
//
// A hit requires matching tier and node count and a residual check after the
// kernel matrix is rebuilt; anything else is treated as a miss and re-solved.
// Writes go through a temp file and an atomic rename.
//
// MIT license; see LICENSE at the repository root.
#pragma once

#include <filesystem>
#include <string>

#include "speclab/phi.hpp"

namespace speclab {

// Filename stem for a cache entry: a printed to 12 decimal places (the cache
// key rounding), the sign name, and the resolved node count.
std::string phi_cache_stem(double a, Sign sign, int n_resolved);

class PhiCache {
public:
    PhiCache() = default; // disabled
    explicit PhiCache(std::filesystem::path root);

    bool enabled() const { return !root_.empty(); }
    const std::filesystem::path& root() const { return root_; }

    // Entry path with the given extension ("bin", "json", "hp"); n is the
    // requested count (0 = default), resolved the same way solves resolve it.
    std::filesystem::path entry_path(double a, Sign sign, int n, const std::string& ext) const;

    // Load if present and valid, otherwise solve and store. A disabled cache
    // degrades to a plain solve.
    PhiSolution load_or_solve(double a, Sign sign, int n = 0) const;

private:
    std::filesystem::path root_;
};

// One-shot convenience used by the command-line tool.
PhiSolution solve_phi_cached(const std::filesystem::path& cache_root, double a, Sign sign,
                             int n = 0);

} // namespace speclab
