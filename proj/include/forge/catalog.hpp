#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "json.hpp"

namespace forge {

/// Integer-coefficient relation among squared coordinates:
///   sum over terms of coeff * x_index^2 == 0   (index is 0-based).
/// Every catalog variety is an intersection of such quadrics, so membership
/// is exact up to floating evaluation.
struct QuadraticForm {
  std::vector<std::pair<int, long long>> terms;

  double evaluate(const std::vector<double>& x) const;
};

struct CatalogEntry {
  std::string name;
  int k = -1;  // family parameter; -1 when not part of the C_k family
  SphereConfig config;
  std::vector<QuadraticForm> equations;
};

/// Largest |equation(x)| over all equations of the entry.
double equations_residual(const CatalogEntry& entry,
                          const std::vector<double>& x);

/// Two antipodal spheres of radius 1/sqrt(2) in 4-space; the cone over them
/// is the light cone x4^2 = x1^2 + x2^2 + x3^2.
CatalogEntry kp_cone();

/// The dyadic family: 2^(k+1) spheres of radius 2^(-(k+1)/2) in (k+4)-space,
/// cut out by x4^2 = x1^2+x2^2+x3^2 and x_{l+4}^2 = 2^l x4^2 for l = 1..k.
CatalogEntry ck_cone(int k);

/// Eight spheres of radius 1/sqrt(8) in 7-space built by embedding a
/// distance table on 8 points (two dual tetrahedra); no quadric equations
/// are attached to this entry.
CatalogEntry tetra8();

/// Four spheres of radius 1/2 in 5-space with centers (0,0,0,±1/2,±√2/2)
/// (a 1 x sqrt(2) rectangle); same support as ck_cone(1) up to isometry.
CatalogEntry rectangle4();

/// The distance table used by tetra8(), exposed for inspection.
Layering tetra8_layering();

void to_json(nlohmann::json& j, const QuadraticForm& form);
void from_json(const nlohmann::json& j, QuadraticForm& form);
void to_json(nlohmann::json& j, const CatalogEntry& entry);
void from_json(const nlohmann::json& j, CatalogEntry& entry);

}  // namespace forge
