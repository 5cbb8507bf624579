#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace forge {

/// A layering on m points: the symmetric m x m matrix of color indices
/// d_ij in {0,...,m-1}, equivalently a normalized proper (m-1)-edge-coloring
/// of the complete graph K_m. Storage is row-major, indices 0-based
/// internally; reports and JSON use 1-based rows/columns.
struct Layering {
  int m = 0;
  std::vector<int> dist;  // m*m, row-major

  int at(int i, int j) const { return dist[std::size_t(i) * m + j]; }
  int& at(int i, int j) { return dist[std::size_t(i) * m + j]; }
  int p() const { return m / 2; }
};

struct Violation {
  std::string rule;  // "square", "symmetry", "diagonal", "latin-row", "normalization", "range"
  int row = 0;       // 1-based; 0 when not applicable
  int col = 0;
};

struct ValidationReport {
  bool valid = false;
  std::vector<Violation> violations;
};

/// Checks every layering axiom on a raw matrix and reports each violation.
ValidationReport validate_layering(const std::vector<std::vector<int>>& dist);
ValidationReport validate_layering(const Layering& layering);

/// Builds a Layering from a raw matrix, throwing std::invalid_argument if it
/// is not square or fails validation.
Layering make_layering(const std::vector<std::vector<int>>& dist);

/// The involutions l_1,...,l_{m-1}: perms[i-1][j] = l_i(j+1)-1 (0-based).
/// l_i(j) = k iff d_jk = i; each map is a fixed-point-free involution.
std::vector<std::vector<int>> permutations_of(const Layering& layering);

/// The block-doubling layering on m = 2^{n+1} points whose embedding is a
/// rectangular parallelotope with edge lengths 2r, 2*sqrt(2)r, ..., 2*sqrt(2^n)r.
/// Closed form of the doubling recursion: d_ij = (i-1) xor (j-1).
Layering dyadic_layering(int n);

/// Emits every layering on m labeled points in lexicographic order of the
/// flattened distance matrix. Returns the number emitted. The visitor may
/// return false to stop early.
std::uint64_t enumerate_layerings(int m,
                                  const std::function<bool(const Layering&)>& visit);
std::vector<Layering> enumerate_layerings(int m,
                                          std::optional<std::uint64_t> limit = std::nullopt);

struct AntipodalReport {
  bool ok = false;
  // (i, j) pairs (1-based) at which an identity fails.
  std::vector<std::pair<int, int>> violations;
};

/// Checks the antipodal identities l_{m-1}(j) = m+1-j and
/// l_i(l_{m-1}(j)) = l_{m-1}(l_i(j)) = l_{m-1-i}(j). These hold for every
/// layering that embeds; this is a fast necessary pre-filter only.
AntipodalReport check_antipodal_structure(const Layering& layering);

/// Default cap on m for enumeration (one-factorization counts explode).
inline constexpr int kEnumerationCap = 10;
/// Cap on constructed layering sizes (dyadic family).
inline constexpr int kSizeCap = 1024;

void to_json(nlohmann::json& j, const Layering& layering);
void from_json(const nlohmann::json& j, Layering& layering);
void to_json(nlohmann::json& j, const ValidationReport& report);

}  // namespace forge
