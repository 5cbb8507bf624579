#include "forge/layering.hpp"

#include <algorithm>
#include <stdexcept>

namespace forge {
namespace {

void check_latin(const Layering& l, ValidationReport& report) {
  // Each row must contain every color 1..m-1 exactly once off-diagonal.
  for (int i = 0; i < l.m; ++i) {
    std::vector<int> seen(std::size_t(l.m), -1);
    for (int j = 0; j < l.m; ++j) {
      if (i == j) continue;
      const int v = l.at(i, j);
      if (v < 1 || v >= l.m) {
        report.violations.push_back({"range", i + 1, j + 1});
        continue;
      }
      if (seen[std::size_t(v)] >= 0)
        report.violations.push_back({"latin-row", i + 1, j + 1});
      else
        seen[std::size_t(v)] = j;
    }
  }
}

}  // namespace

ValidationReport validate_layering(const Layering& layering) {
  ValidationReport report;
  const int m = layering.m;
  if (m <= 0 || layering.dist.size() != std::size_t(m) * std::size_t(m)) {
    report.violations.push_back({"square", 0, 0});
    return report;
  }
  for (int i = 0; i < m; ++i) {
    if (layering.at(i, i) != 0)
      report.violations.push_back({"diagonal", i + 1, i + 1});
    for (int j = i + 1; j < m; ++j) {
      if (layering.at(i, j) != layering.at(j, i))
        report.violations.push_back({"symmetry", i + 1, j + 1});
      if (layering.at(i, j) == 0)
        report.violations.push_back({"diagonal", i + 1, j + 1});
    }
  }
  check_latin(layering, report);
  for (int j = 0; j < m; ++j)
    if (layering.at(0, j) != j)
      report.violations.push_back({"normalization", 1, j + 1});
  report.valid = report.violations.empty();
  return report;
}

ValidationReport validate_layering(const std::vector<std::vector<int>>& dist) {
  const std::size_t m = dist.size();
  for (const auto& row : dist)
    if (row.size() != m)
      throw std::invalid_argument("layering matrix must be square");
  Layering l;
  l.m = int(m);
  l.dist.reserve(m * m);
  for (const auto& row : dist)
    for (int v : row) {
      if (v < 0) throw std::invalid_argument("layering entries must be nonnegative");
      l.dist.push_back(v);
    }
  return validate_layering(l);
}

Layering make_layering(const std::vector<std::vector<int>>& dist) {
  const auto report = validate_layering(dist);
  if (!report.valid)
    throw std::invalid_argument("matrix is not a valid layering (" +
                                report.violations.front().rule + ")");
  Layering l;
  l.m = int(dist.size());
  for (const auto& row : dist) l.dist.insert(l.dist.end(), row.begin(), row.end());
  return l;
}

std::vector<std::vector<int>> permutations_of(const Layering& layering) {
  const int m = layering.m;
  std::vector<std::vector<int>> perms(std::size_t(m - 1),
                                      std::vector<int>(std::size_t(m)));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      if (j == k) continue;
      perms[std::size_t(layering.at(j, k) - 1)][std::size_t(j)] = k;
    }
  return perms;
}

Layering dyadic_layering(int n) {
  if (n < 0) throw std::invalid_argument("dyadic_layering: n must be >= 0");
  if (n > 30 || (1LL << (n + 1)) > kSizeCap)
    throw std::length_error("dyadic_layering: size cap exceeded");
  const int m = 1 << (n + 1);
  Layering l;
  l.m = m;
  l.dist.resize(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) l.at(i, j) = i ^ j;
  return l;
}

std::uint64_t enumerate_layerings(
    int m, const std::function<bool(const Layering&)>& visit) {
  if (m < 2 || m % 2 != 0)
    throw std::domain_error("enumerate_layerings: m must be even and >= 2");
  if (m > kEnumerationCap)
    throw std::length_error("enumerate_layerings: m exceeds enumeration cap");

  Layering l;
  l.m = m;
  l.dist.assign(std::size_t(m) * m, -1);
  for (int j = 0; j < m; ++j) {
    l.at(0, j) = j;
    l.at(j, 0) = j;
    l.at(j, j) = 0;
  }
  // Bitmask per row of colors already used (bit v = color v present).
  std::vector<std::uint32_t> used(std::size_t(m), 0);
  for (int j = 1; j < m; ++j) {
    used[0] |= 1u << j;
    used[std::size_t(j)] |= 1u << j;
  }

  // Free cells in row-major order of the upper triangle (rows 1..m-1).
  std::vector<std::pair<int, int>> cells;
  for (int i = 1; i < m; ++i)
    for (int j = i + 1; j < m; ++j) cells.emplace_back(i, j);

  std::uint64_t count = 0;
  bool stop = false;
  std::function<void(std::size_t)> recurse = [&](std::size_t idx) {
    if (stop) return;
    if (idx == cells.size()) {
      ++count;
      if (!visit(l)) stop = true;
      return;
    }
    const auto [i, j] = cells[idx];
    for (int v = 1; v < m && !stop; ++v) {
      const std::uint32_t bit = 1u << v;
      if ((used[std::size_t(i)] & bit) || (used[std::size_t(j)] & bit)) continue;
      l.at(i, j) = v;
      l.at(j, i) = v;
      used[std::size_t(i)] |= bit;
      used[std::size_t(j)] |= bit;
      recurse(idx + 1);
      used[std::size_t(i)] &= ~bit;
      used[std::size_t(j)] &= ~bit;
      l.at(i, j) = -1;
      l.at(j, i) = -1;
    }
  };
  recurse(0);
  return count;
}

std::vector<Layering> enumerate_layerings(int m,
                                          std::optional<std::uint64_t> limit) {
  std::vector<Layering> out;
  enumerate_layerings(m, [&](const Layering& l) {
    out.push_back(l);
    return !limit || out.size() < *limit;
  });
  return out;
}

AntipodalReport check_antipodal_structure(const Layering& layering) {
  AntipodalReport report;
  const int m = layering.m;
  const auto perms = permutations_of(layering);
  const auto& last = perms[std::size_t(m - 2)];  // l_{m-1}
  for (int j = 0; j < m; ++j)
    if (last[std::size_t(j)] != m - 1 - j)
      report.violations.emplace_back(m - 1, j + 1);
  for (int i = 1; i <= m - 2; ++i) {
    const auto& li = perms[std::size_t(i - 1)];
    const auto& lc = perms[std::size_t(m - 1 - i - 1)];  // l_{m-1-i}
    for (int j = 0; j < m; ++j) {
      const int a = li[std::size_t(last[std::size_t(j)])];
      const int b = last[std::size_t(li[std::size_t(j)])];
      if (a != lc[std::size_t(j)] || b != lc[std::size_t(j)])
        report.violations.emplace_back(i, j + 1);
    }
  }
  report.ok = report.violations.empty();
  return report;
}

void to_json(nlohmann::json& j, const Layering& layering) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < layering.m; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < layering.m; ++k) row.push_back(layering.at(i, k));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"m", layering.m}, {"d", std::move(rows)}};
}

void from_json(const nlohmann::json& j, Layering& layering) {
  const int m = j.at("m").get<int>();
  const auto& rows = j.at("d");
  if (!rows.is_array() || int(rows.size()) != m)
    throw std::invalid_argument("layering JSON: d must be an m x m array");
  layering.m = m;
  layering.dist.clear();
  layering.dist.reserve(std::size_t(m) * m);
  for (const auto& row : rows) {
    if (int(row.size()) != m)
      throw std::invalid_argument("layering JSON: d must be an m x m array");
    for (const auto& v : row) layering.dist.push_back(v.get<int>());
  }
}

void to_json(nlohmann::json& j, const ValidationReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"rule", v.rule}, {"row", v.row}, {"col", v.col}});
  j = nlohmann::json{{"valid", report.valid}, {"violations", std::move(violations)}};
}

}  // namespace forge
