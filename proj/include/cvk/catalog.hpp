#pragma once

#include <string>
#include <vector>

#include "cvk/coxsys.hpp"

namespace cvk {

struct CatalogEntry {
  std::string name;
  CoxeterSystem system;
};

// Linear diagram with consecutive labels.
CoxeterSystem chain_diagram(const std::vector<Label>& labels);
// Triangle group with m_12 = p, m_23 = q, m_13 = r.
CoxeterSystem triangle_diagram(Label p, Label q, Label r);

// Connected spherical diagrams with rank in [1, max_rank]; I_2(p) for p up to max_dihedral.
std::vector<CatalogEntry> spherical_catalog(int max_rank, int max_dihedral = 12);
// Connected affine diagrams with rank in [2, max_rank].
std::vector<CatalogEntry> affine_catalog(int max_rank);

// Catalog name of a connected spherical or affine diagram, or "" if none.
std::string catalog_name(const CoxeterSystem& sys);

}  // namespace cvk
