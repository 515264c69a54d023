#pragma once

#include <optional>
#include <vector>

#include "cvk/coxsys.hpp"
#include "cvk/linalg.hpp"

namespace cvk {

// Throws NotCartan unless A has diagonal 2, nonpositive off-diagonal entries
// and A_ij = 0 exactly when A_ji = 0 (zero meaning |x| <= eps).
void validate_cartan(const Mat& a, double eps = 1e-9);

// Components of the graph joining i and j whenever A_ij != 0.
std::vector<Subset> cartan_components(const Mat& a, double eps = 1e-9);

struct MinEigen {
  double value = 0.0;     // the real eigenvalue of least real part
  double residual = 0.0;  // |A x - value x| for a unit eigenvector x
  double gap = 0.0;       // distance to the nearest other eigenvalue
};

// For an irreducible Cartan matrix this is 2 - rho(2I - A): real, simple,
// with a positive eigenvector.
MinEigen min_eigenvalue(const Mat& a);

enum class Sign { Positive, Zero, Negative };
const char* to_string(Sign s);

struct ComponentType {
  Subset indices;
  MinEigen lambda;
  Sign sign = Sign::Positive;
};

struct CartanType {
  std::vector<ComponentType> components;
  // Common sign of all components; empty when they disagree.
  std::optional<Sign> aggregate;
  bool mixed() const { return !aggregate.has_value(); }
};

CartanType cartan_type(const Mat& a, double eps = 1e-9);

// Perron eigenvector of an irreducible Cartan matrix, normalized to unit sum.
Vec perron_vector(const Mat& a);

}  // namespace cvk
