#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rrk {

/// Immutable Butcher tableau of an explicit Runge-Kutta method. Construction
/// validates the structural invariants: consistent dimensions, sum(b) = 1 and
/// A*1 = c (both within 1e-14), and records whether A is strictly lower
/// triangular.
class ButcherTableau {
 public:
  ButcherTableau(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double> c, int claimed_order, std::string name,
                 std::string source = {});

  int stages() const { return stages_; }
  double a(int i, int j) const { return a_[static_cast<std::size_t>(i) * stages_ + j]; }
  const std::vector<double>& b() const { return b_; }
  const std::vector<double>& c() const { return c_; }
  int claimed_order() const { return claimed_order_; }
  const std::string& name() const { return name_; }
  /// Citation for where the coefficients were transcribed from.
  const std::string& source() const { return source_; }
  bool is_explicit() const { return explicit_; }
  bool nonneg_weights() const { return nonneg_weights_; }

 private:
  int stages_;
  std::vector<double> a_;  // row-major s*s
  std::vector<double> b_;
  std::vector<double> c_;
  int claimed_order_;
  std::string name_;
  std::string source_;
  bool explicit_;
  bool nonneg_weights_;
};

/// Result of the closed-form order-condition check.
struct TableauReport {
  /// Highest k <= 4 whose order-k conditions all hold within 1e-12. Orders
  /// above 4 are certified empirically through convergence studies only.
  int satisfied_order = 0;
  bool nonneg_weights = false;
  double existence_a = 0.0;  // sum_{i,j} b_i a_ij       (> 0 needed for a root)
  double existence_b = 0.0;  // sum_{i,j} b_i (a_ij-b_j) (< 0 needed for a root)
};

TableauReport check_order_conditions(const ButcherTableau& t);

/// Catalog lookup. Known names: SSPRK(2,2), SSPRK(3,3), SSPRK(10,4), RK(4,4),
/// Heun(3,3), BSRK(3,3), BSRK(8,5), VRK(9,6). Throws on unknown names.
ButcherTableau builtin_tableau(const std::string& name);
std::vector<std::string> builtin_tableau_names();

/// Plain-text import. Format: first line "s p name", then s rows of s numbers
/// (A), then one line of s weights b, then one line of s abscissae c.
ButcherTableau load_tableau(std::istream& in);
ButcherTableau load_tableau_file(const std::string& path);

}  // namespace rrk
