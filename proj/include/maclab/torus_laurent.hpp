#pragma once

#include "maclab/rational.hpp"
#include "maclab/root_system.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace maclab {

/// Integer Laurent polynomial on the maximal torus, keyed by weights.
class TorusLaurent {
public:
  using Map = std::map<Weight, std::int64_t>;

  TorusLaurent() = default;
  explicit TorusLaurent(int rank) : rank_(rank) {}

  static TorusLaurent constant(int rank, std::int64_t c);
  static TorusLaurent monomial(const Weight& w, std::int64_t c = 1);

  int rank() const { return rank_; }
  const Map& terms() const { return terms_; }
  std::int64_t coeff(const Weight& w) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Weight& w, std::int64_t c);
  /// this += c * e^mu * x
  void add_shifted(const TorusLaurent& x, const Weight& mu, std::int64_t c);

  TorusLaurent& operator+=(const TorusLaurent& o);
  TorusLaurent& operator-=(const TorusLaurent& o);
  TorusLaurent operator+(const TorusLaurent& o) const;
  TorusLaurent operator-(const TorusLaurent& o) const;
  TorusLaurent operator-() const;
  TorusLaurent operator*(const TorusLaurent& o) const;
  TorusLaurent scaled(std::int64_t c) const;
  bool operator==(const TorusLaurent& o) const { return terms_ == o.terms_; }

  /// Image under e^lambda -> e^{-lambda}.
  TorusLaurent conjugate() const;
  bool is_weyl_invariant(const RootSystem& rs) const;
  /// Value at the torus point e^{omega_i} = u_i.
  Rational evaluate(const std::vector<Rational>& point) const;

  /// Canonical text form "c·e[a,b] + ...", weights in increasing order.
  std::string str() const;

private:
  int rank_ = 0;
  Map terms_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Value of e^mu at a torus point.
Rational torus_monomial_value(const Weight& mu, const std::vector<Rational>& point);

} // namespace maclab
