#include "forge/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "forge/embedding.hpp"
#include "forge/layering.hpp"
#include "forge/spectral.hpp"

namespace forge {
namespace {

std::vector<QuadraticForm> dyadic_equations(int k) {
  std::vector<QuadraticForm> eqs;
  // x4^2 - x1^2 - x2^2 - x3^2 = 0
  eqs.push_back({{{0, -1}, {1, -1}, {2, -1}, {3, 1}}});
  // x_{l+4}^2 - 2^l x4^2 = 0
  for (int l = 1; l <= k; ++l)
    eqs.push_back({{{3, -(1ll << l)}, {l + 3, 1}}});
  return eqs;
}

}  // namespace

double QuadraticForm::evaluate(const std::vector<double>& x) const {
  double s = 0.0;
  for (const auto& [index, coeff] : terms) {
    const double c = x[std::size_t(index)];
    s += double(coeff) * c * c;
  }
  return s;
}

double equations_residual(const CatalogEntry& entry,
                          const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& eq : entry.equations)
    worst = std::max(worst, std::abs(eq.evaluate(x)));
  return worst;
}

CatalogEntry kp_cone() {
  CatalogEntry entry;
  entry.name = "kp";
  entry.k = 0;
  entry.config = build_config(dyadic_centers(0));
  entry.equations = dyadic_equations(0);
  return entry;
}

CatalogEntry ck_cone(int k) {
  if (k < 0) throw std::invalid_argument("ck_cone: k must be >= 0");
  CatalogEntry entry;
  entry.name = "ck";
  entry.k = k;
  entry.config = build_config(dyadic_centers(k));
  entry.equations = dyadic_equations(k);
  return entry;
}

Layering tetra8_layering() {
  // Two dual regular tetrahedra; rows are the distance labels between the
  // eight points. Row 1 is the identity permutation, row 8 the reversal.
  static const int table[8][8] = {
      {0, 1, 2, 3, 4, 5, 6, 7},
      {1, 0, 3, 5, 2, 4, 7, 6},
      {2, 3, 0, 1, 6, 7, 4, 5},
      {3, 5, 1, 0, 7, 6, 2, 4},
      {4, 2, 6, 7, 0, 1, 5, 3},
      {5, 4, 7, 6, 1, 0, 3, 2},
      {6, 7, 4, 2, 5, 3, 0, 1},
      {7, 6, 5, 4, 3, 2, 1, 0},
  };
  Layering l;
  l.m = 8;
  l.dist.assign(64, 0);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) l.dist[std::size_t(i) * 8 + j] = table[i][j];
  const auto report = validate_layering(l);
  if (!report.valid)
    throw std::logic_error("tetra8_layering: table failed validation");
  return l;
}

CatalogEntry tetra8() {
  CatalogEntry entry;
  entry.name = "tetra8";
  entry.k = -1;
  const auto layering = tetra8_layering();
  const auto spectral = spectral_report(layering);
  if (!spectral.embeddable)
    throw std::logic_error("tetra8: table is not embeddable");
  entry.config = build_config(embed(layering, spectral));
  return entry;
}

CatalogEntry rectangle4() {
  CatalogEntry entry;
  entry.name = "rect4";
  entry.k = -1;
  CenterSet centers;
  centers.m = 4;
  centers.q = 2;
  centers.r = 0.5;
  centers.t = std::sqrt(3.0) / 2.0;
  const double a = 0.5;
  const double b = std::sqrt(2.0) / 2.0;
  centers.points = {{-a, -b}, {a, -b}, {-a, b}, {a, b}};
  entry.config = build_config(centers);
  entry.equations = dyadic_equations(1);
  return entry;
}

void to_json(nlohmann::json& j, const QuadraticForm& form) {
  j = nlohmann::json::array();
  for (const auto& [index, coeff] : form.terms)
    j.push_back(nlohmann::json{{"i", index}, {"c", coeff}});
}

void from_json(const nlohmann::json& j, QuadraticForm& form) {
  form.terms.clear();
  for (const auto& t : j)
    form.terms.emplace_back(t.at("i").get<int>(),
                            t.at("c").get<long long>());
}

void to_json(nlohmann::json& j, const CatalogEntry& entry) {
  j = nlohmann::json{{"name", entry.name},
                     {"k", entry.k},
                     {"config", entry.config},
                     {"equations", entry.equations}};
}

void from_json(const nlohmann::json& j, CatalogEntry& entry) {
  entry.name = j.at("name").get<std::string>();
  entry.k = j.at("k").get<int>();
  entry.config = j.at("config").get<SphereConfig>();
  entry.equations = j.at("equations").get<std::vector<QuadraticForm>>();
}

}  // namespace forge
