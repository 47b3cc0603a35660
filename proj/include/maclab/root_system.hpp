#pragma once

#include "maclab/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace maclab {

/// Weight in the fundamental-weight basis.
struct Weight {
  std::vector<int> coords;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coords(std::move(c)) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(std::size_t(rank), 0)); }

  int rank() const { return int(coords.size()); }
  bool is_zero() const;
  int operator[](int i) const { return coords[std::size_t(i)]; }

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight scaled(int k) const;
  auto operator<=>(const Weight&) const = default;
  bool operator==(const Weight&) const = default;

  std::string str() const; // "[a,b,...]"
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept;
};

/// Point of the coroot lattice in the simple-coroot basis.
struct CorootPoint {
  std::vector<int> coords;
  Rational norm_half; // gamma^2 / 2 in the basic inner product
  int flip_count = 0; // affine-root factors with non-positive exponent after translation
};

using IntMatrix = std::vector<std::vector<int>>;

/// A Weyl group element, stored by its action on weight and coroot coordinates.
struct WeylElement {
  IntMatrix on_weights;
  IntMatrix on_coroots;
  int length = 0;
  int sign() const { return length % 2 == 0 ? 1 : -1; }

  Weight apply(const Weight& w) const;
  std::vector<int> apply_coroot(const std::vector<int>& k) const;
};

enum class Family { A, B, C, D, G, GL };

struct RootSystem {
  Family family = Family::A;
  std::string name;          // "A2", "gl3", ...
  int rank = 0;              // number of exponents (reductive rank)
  int ss_rank = 0;           // size of the Cartan matrix
  IntMatrix cartan_matrix;   // a_ij = <alpha_i^vee, alpha_j>
  std::vector<Rational> symmetrizer; // d_i = (alpha_i, alpha_i)/2, long roots d = 1
  std::vector<Weight> simple_roots;
  std::vector<Weight> positive_roots;
  Weight rho;
  std::vector<int> exponents;
  RationalMatrix basic_gram;   // on fundamental-weight coordinates
  RationalMatrix killing_gram; // basic_gram / (2 * dual_coxeter)
  RationalMatrix coroot_gram;  // (alpha_i^vee, alpha_j^vee) in the basic form
  int dual_coxeter = 1;
  long weyl_order = 1;

  int dim() const { return rank + 2 * int(positive_roots.size()); }
  bool simply_laced() const;
  bool is_reductive_only() const { return family == Family::GL; }

  std::vector<Weight> roots() const; // positive then negative
  /// Coordinates of a weight in the simple-root basis (exact rationals).
  std::vector<Rational> simple_root_coords(const Weight& w) const;
  Rational height(const Weight& w) const;
  bool is_dominant(const Weight& w) const;
  Rational inner(const Weight& a, const Weight& b) const; // basic form
  Weight dominant_conjugate(const Weight& w) const;
  /// Weight attached to a coroot through the basic form; simply laced only.
  Weight coroot_as_weight(const std::vector<int>& k) const;
  Rational coroot_norm_half(const std::vector<int>& k) const;
  int flip_count(const std::vector<int>& k) const;
};

/// Builds Cartan data for A1-A4, B2, C2, D4, G2 and gl1-gl3.
RootSystem build_root_system(const std::string& family, int rank);
/// Parses strings such as "A1", "a2", "gl3".
RootSystem parse_cartan_type(const std::string& type);

/// All Weyl group elements, breadth-first over simple reflections.
std::vector<WeylElement> weyl_elements(const RootSystem& rs);

/// Integer pairing <lambda | gamma> between weights and coroots.
int pairing(const RootSystem& rs, const Weight& lambda, const CorootPoint& gamma);
int pairing(const RootSystem& rs, const Weight& lambda, const std::vector<int>& gamma);

enum class TranslateMode { Level0Flips, Level1Energy };

std::vector<CorootPoint> coroot_translates(const RootSystem& rs, TranslateMode mode, long bound);

} // namespace maclab
